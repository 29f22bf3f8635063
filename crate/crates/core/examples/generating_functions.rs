//! Reading numbers off truncated power series: `M_k^N(n)` from the `N`-th
//! power of its generating function, and `Ψ_k(x, n)` at a rational `x`.
//!
//! cargo run --example generating_functions

use mbsum::mobius_bernoulli::mb_higher_conv;
use mbsum::powersums::psi_eval;
use mbsum::series::{mb_gf, psi_gf, psi_gf_direct};
use mbsum::{format_rational, rat};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let order = 10;
    let n = 6;
    let gf = mb_gf(n, order)?;
    for power in 1..=3u32 {
        let g = gf.pow(power);
        for k in [0, 2, 4] {
            println!(
                "M_{k}^{power}({n}): series {}  convolution {}",
                format_rational(&g.egf_coeff(k)?),
                format_rational(&mb_higher_conv(k, power as usize, n)?)
            );
        }
    }

    let x = rat(5, 2);
    let factored = psi_gf(&x, n, order)?;
    let direct = psi_gf_direct(&x, n, order)?;
    println!("\nboth Psi generating functions agree: {}", factored == direct);
    for k in 0..=4 {
        println!(
            "Psi_{k}(5/2, {n}): series {}  polynomial {}",
            format_rational(&factored.egf_coeff(k)?),
            format_rational(&psi_eval(k, n, &x)?)
        );
    }
    Ok(())
}
