//! `M_k^N(n)` by each route, plus the partition expansion of `M_8^N`.
//!
//! cargo run --example mobius_bernoulli_routes -- 12 3

use mbsum::format_rational;
use mbsum::mobius_bernoulli::{mb_higher, partition_terms, HigherMbRequest, MbTable, Method};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let n: u64 = args.next().map_or(Ok(6), |s| s.parse())?;
    let power: usize = args.next().map_or(Ok(2), |s| s.parse())?;

    let table = MbTable::new(n, 10)?;
    let row: Vec<String> = table.values().iter().map(format_rational).collect();
    println!("M_k({n}), k = 0..10: {}", row.join(", "));

    println!("\nM_k^{power}({n})");
    for k in 0..=8 {
        let mut line = format!("k={k}");
        for method in [Method::Convolution, Method::Partition, Method::Kernel, Method::PrimePower] {
            let cell = match mb_higher(HigherMbRequest::new(k, power, n, method)) {
                Ok(v) => format_rational(&v),
                Err(_) => "-".into(),
            };
            line += &format!("  {}={cell}", method.name());
        }
        println!("{line}");
    }

    println!("\nM_8^{power}({n}) by partition of 8:");
    for t in partition_terms(8, power, n)? {
        println!("  {:?}  coefficient {}  term {}", t.partition.parts(), t.coefficient, format_rational(&t.value));
    }
    Ok(())
}
