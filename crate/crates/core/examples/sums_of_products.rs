//! Sums of products `Ψ_k^N(x, n)`: the Stirling closed form against the
//! convolution of power sums and, at `x = n`, against brute force over tuples.
//!
//! cargo run --example sums_of_products -- 6 2

use mbsum::powersums::{psi_products_brute, psi_products_conv, psi_products_poly};
use mbsum::int;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let n: u64 = args.next().map_or(Ok(6), |s| s.parse())?;
    let power: usize = args.next().map_or(Ok(2), |s| s.parse())?;
    for k in 0..=4 {
        let closed = psi_products_poly(k, power, n)?;
        let conv = psi_products_conv(k, power, n)?;
        let brute = psi_products_brute(k, power, n)?;
        println!("Psi_{k}^{power}(x, {n}) = {closed}");
        println!(
            "    convolution agrees: {}   at x = {n}: {}   tuples: {brute}",
            closed == conv,
            closed.eval(&int(n))
        );
    }
    Ok(())
}
