//! Runs a verification suite in-process and prints a summary, including
//! the `M_0` normalization note.
//!
//! cargo run --example verify_report -- mb

use mbsum::verify::{run, Bounds, Suite};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let suite: Suite = std::env::args().nth(1).unwrap_or_else(|| "all".into()).parse()?;
    let bounds = Bounds { max_n: 20, max_k: 8, max_power: 3, order: 10 };
    let report = run(suite, &bounds, 0)?;
    for p in &report.properties {
        let status = if p.passed { "ok  " } else { "FAIL" };
        println!("{status} {:<9} {:<36} {:>6} cases", p.suite, p.property, p.cases);
    }
    if let Some(e) = &report.erratum {
        println!(
            "\n{}: M_{}^{}({}) = {} from the generating function, {} with phi(n) in place of phi(n)/n",
            e.label, e.k, e.power, e.n, e.generating_function_value, e.phi_table_value
        );
    }
    println!("\npassed: {}", report.passed);
    Ok(())
}
