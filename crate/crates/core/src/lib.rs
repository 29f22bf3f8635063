//! Exact Möbius–Bernoulli numbers and sums of products of coprime power sums.
//!
//! Everything is computed over exact rationals. Each closed form in the crate
//! comes with at least one independent route (a truncated generating-function
//! series, a combinatorial convolution, or an integer brute force), and the
//! [`verify`] module sweeps parameter grids checking that the routes agree.
//!
//! Module map:
//!
//! - [`arith`]: factorization, Möbius μ, totient φ, divisors, binomials,
//!   partitions, compositions and the power form of Faà di Bruno's formula.
//! - [`series`]: truncated formal power series in `t`.
//! - [`bernoulli`]: Bernoulli numbers (with `B_1 = -1/2`), higher-order
//!   Bernoulli numbers and Stirling numbers of the second kind.
//! - [`mobius_bernoulli`]: `M_k(n)` and the higher-order `M_k^N(n)` by four routes.
//! - [`powersums`]: `S_k(x)`, `Ψ_k(x, n)`, `Ψ_k^N(x, n)` as exact polynomials.
//! - [`cli`] and [`verify`]: the `mbsum` command-line front end.
//!
//! ```
//! use mbsum::mobius_bernoulli::mb_higher_conv;
//! use mbsum::rat;
//!
//! assert_eq!(mb_higher_conv(2, 2, 6).unwrap(), rat(2, 9));
//! ```

pub mod arith;
pub mod bernoulli;
pub mod cli;
mod error;
pub mod mobius_bernoulli;
pub mod powersums;
pub mod series;
pub mod verify;

pub use error::{Error, Result};

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// The scalar field for every quantity in the crate.
pub type Rational = num_rational::BigRational;

/// Shorthand for a small rational `num/den`.
///
/// Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Integer as a rational.
pub fn int<T: Into<BigInt>>(v: T) -> Rational {
    Rational::from_integer(v.into())
}

/// Parses `"a/b"` or `"a"` into a reduced rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(s.to_string());
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// `num/den`, or just `num` for integers.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
