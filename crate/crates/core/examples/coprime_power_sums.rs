//! The polynomial `Ψ_k(x, n)` and its value at `x = n`, the sum of `k`-th
//! powers of the integers below `n` coprime to `n`.
//!
//! cargo run --example coprime_power_sums -- 12

use mbsum::powersums::{psi_brute, psi_poly};
use mbsum::{format_rational, int};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n: u64 = std::env::args().nth(1).map_or(Ok(12), |s| s.parse())?;
    for k in 0..=5 {
        let p = psi_poly(k, n)?;
        let at_n = p.eval(&int(n));
        println!("Psi_{k}(x, {n}) = {p}");
        println!("    at x = {n}: {}  (enumerated: {})", format_rational(&at_n), psi_brute(k, n)?);
    }
    Ok(())
}
