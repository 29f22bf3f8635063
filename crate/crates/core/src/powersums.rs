//! Power-sum polynomials over exact rationals.
//!
//! - `S_k(x)`, with `S_k(m) = 1^k + ... + m^k`.
//! - `Ψ_k(x, n) = Σ_{d|n} μ(d) d^k S_k(x/d)`; `Ψ_k(n, n)` is the sum of `k`-th
//!   powers of the integers below `n` coprime to `n`.
//! - `Ψ_k^N(x, n)`, the multinomial sums of products of `N` of those.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{
    binomial, compositions, factorial, moebius, multinomial, squarefree_divisors, totient,
};
use crate::bernoulli::{bernoulli, stirling2};
use crate::mobius_bernoulli::{mb_higher, mb_number, HigherMbRequest, Method};
use crate::{format_rational, int, Error, Rational, Result};

/// Largest tuple count [`psi_products_brute`] will enumerate.
pub const BRUTE_TUPLE_LIMIT: u64 = 1_000_000;

/// Univariate polynomial in `x`; `coeffs[i]` multiplies `x^i`. No trailing
/// zero coefficients are stored, so the zero polynomial has none.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn constant(c: Rational) -> Self {
        Polynomial::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Polynomial::monomial(Rational::one(), 1)
    }

    pub fn monomial(c: Rational, degree: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); degree + 1];
        coeffs[degree] = c;
        Polynomial::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * int(i as u64))
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Polynomial::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// `p(x + a)`.
    pub fn shift(&self, a: &Rational) -> Self {
        let mut out = vec![Rational::zero(); self.coeffs.len()];
        for (i, c) in self.coeffs.iter().enumerate() {
            // c (x + a)^i
            let mut apow = Rational::one();
            for j in (0..=i).rev() {
                out[j] += c * int(binomial(i as u64, j as i64)) * &apow;
                apow *= a;
            }
        }
        Polynomial::new(out)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(if c < &Rational::zero() { " - " } else { " + " })?;
            } else if c < &Rational::zero() {
                f.write_str("-")?;
            }
            first = false;
            let a = format_rational(&c.abs());
            match i {
                0 => f.write_str(&a)?,
                _ => {
                    if a != "1" {
                        write!(f, "{a}*")?;
                    }
                    f.write_str("x")?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Bernoulli polynomial `B_m(x) = Σ_j C(m, j) B_j x^(m-j)`.
pub fn bernoulli_poly(m: usize) -> Polynomial {
    Polynomial::new(
        (0..=m)
            .map(|i| int(binomial(m as u64, (m - i) as i64)) * bernoulli(m - i))
            .collect(),
    )
}

/// `S_k(x) = (B_{k+1}(x + 1) - B_{k+1}(1)) / (k + 1)`, so that `S_k(0) = 0`.
///
/// Subtracting `B_{k+1}(0)` instead agrees for `k >= 1` but counts the
/// `0^0` term at `k = 0`, giving `x + 1`.
pub fn faulhaber_poly(k: usize) -> Polynomial {
    let shifted = bernoulli_poly(k + 1).shift(&Rational::one());
    let at_zero = shifted.coeff(0);
    (&shifted - &Polynomial::constant(at_zero)).scale(&int(k as u64 + 1).recip())
}

/// `Ψ_k(x, n)` as a polynomial in `x`.
///
/// For `n >= 2` this is `1/(k+1) Σ_{m=0}^{⌊k/2⌋} C(k+1, 2m) B_{2m} x^(k+1-2m) Π_{p|n} (1 - p^(2m-1))`.
/// That even-index sum has no `B_1` term, which is only right for `n >= 2`;
/// `Ψ_k(x, 1) = S_k(x)` comes from [`faulhaber_poly`].
pub fn psi_poly(k: usize, n: u64) -> Result<Polynomial> {
    if n == 1 {
        return Ok(faulhaber_poly(k));
    }
    let scale = int(k as u64 + 1).recip();
    let mut coeffs = vec![Rational::zero(); k + 2];
    for m in 0..=k / 2 {
        // B_{2m} Π (1 - p^(2m-1)) is M_{2m}(n)
        let c = int(binomial(k as u64 + 1, 2 * m as i64)) * mb_number(2 * m, n)?;
        coeffs[k + 1 - 2 * m] = c * &scale;
    }
    Ok(Polynomial::new(coeffs))
}

/// `Ψ_k(x, n)` at a rational point.
pub fn psi_eval(k: usize, n: u64, x: &Rational) -> Result<Rational> {
    Ok(psi_poly(k, n)?.eval(x))
}

/// `Σ_{d | rad n} μ(d) d^k S_k(x/d)` for a positive integer `x` divisible by
/// every prime of `n`, evaluating `S_k` by direct summation.
pub fn psi_mobius_sum(k: usize, n: u64, x: u64) -> Result<BigInt> {
    let divs = squarefree_divisors(n)?;
    if let Some(&d) = divs.iter().find(|&&d| !x.is_multiple_of(d)) {
        return Err(Error::domain("x", "divisible by every squarefree divisor of n", format!("{x} (d = {d})")));
    }
    let mut total = BigInt::zero();
    for &d in &divs {
        let s: BigInt = (1..=x / d).map(|j| BigInt::from(j).pow(k as u32)).sum();
        let term = BigInt::from(d).pow(k as u32) * s;
        if moebius(d)? == 1 {
            total += term;
        } else {
            total -= term;
        }
    }
    Ok(total)
}

/// `Σ_{1 <= m < n, gcd(m, n) = 1} m^k` by enumeration.
pub fn psi_brute(k: usize, n: u64) -> Result<BigInt> {
    if n < 2 {
        return Err(Error::domain("n", "at least 2", n));
    }
    Ok((1..n)
        .filter(|m| m.gcd(&n) == 1)
        .map(|m| BigInt::from(m).pow(k as u32))
        .sum())
}

/// `Ψ_k^N(x, n) = k! N!/(k+N)! Σ_{j=0}^{k} C(k+N, j) M_j^N(n) S(k+N-j, N) x^(k+N-j)`
/// for `n >= 2`, with `M_j^N(n)` from the cross-checked `Auto` route.
pub fn psi_products_poly(k: usize, power: usize, n: u64) -> Result<Polynomial> {
    if n < 2 {
        return Err(Error::domain("n", "at least 2 (use psi_products_conv for n = 1)", n));
    }
    if power == 0 {
        return Err(Error::domain("N", "at least 1", power));
    }
    let top = k + power;
    let lead = int(factorial(k as u64) * factorial(power as u64)) / int(factorial(top as u64));
    let mut coeffs = vec![Rational::zero(); top + 1];
    for j in 0..=k {
        let m = mb_higher(HigherMbRequest::new(j, power, n, Method::Auto))?;
        if m.is_zero() {
            continue;
        }
        let c = int(binomial(top as u64, j as i64)) * m * int(stirling2(top - j, power));
        coeffs[top - j] = c * &lead;
    }
    Ok(Polynomial::new(coeffs))
}

/// `Ψ_k^N(x, n) = Σ_{k_1+...+k_N = k} (k; k_1..k_N) Ψ_{k_1}(x, n) ... Ψ_{k_N}(x, n)`.
pub fn psi_products_conv(k: usize, power: usize, n: u64) -> Result<Polynomial> {
    let factors: Vec<Polynomial> = (0..=k).map(|i| psi_poly(i, n)).collect::<Result<_>>()?;
    let mut total = Polynomial::zero();
    for comp in compositions(k, power)? {
        let product = comp
            .iter()
            .fold(Polynomial::constant(Rational::one()), |acc, &i| &acc * &factors[i]);
        total = &total + &product.scale(&int(multinomial(k, &comp)?));
    }
    Ok(total)
}

/// `Σ (m_1 + ... + m_N)^k` over all `N`-tuples of integers in `[1, n)` coprime
/// to `n`; this is `Ψ_k^N(n, n)`.
pub fn psi_products_brute(k: usize, power: usize, n: u64) -> Result<BigInt> {
    if n < 2 {
        return Err(Error::domain("n", "at least 2", n));
    }
    if power == 0 {
        return Err(Error::domain("N", "at least 1", power));
    }
    let units: Vec<u64> = (1..n).filter(|m| m.gcd(&n) == 1).collect();
    let count = BigInt::from(totient(n)?).pow(power as u32);
    if count > BigInt::from(BRUTE_TUPLE_LIMIT) {
        return Err(Error::TooManyTuples {
            count: count.to_string(),
            limit: BRUTE_TUPLE_LIMIT,
        });
    }
    // odometer over tuple indices
    let mut idx = vec![0usize; power];
    let mut total = BigInt::zero();
    loop {
        let s: u64 = idx.iter().map(|&i| units[i]).sum();
        total += BigInt::from(s).pow(k as u32);
        let mut pos = 0;
        loop {
            if pos == power {
                return Ok(total);
            }
            idx[pos] += 1;
            if idx[pos] < units.len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// Whether `d/dx Ψ_k(x, n) = k Ψ_{k-1}(x, n) + (-1)^k M_k(n)` holds as a
/// polynomial identity.
pub fn derivative_identity_check(k: usize, n: u64) -> Result<bool> {
    if k == 0 {
        return Err(Error::domain("k", "at least 1", k));
    }
    let lhs = psi_poly(k, n)?.derivative();
    let mut constant = mb_number(k, n)?;
    if k % 2 == 1 {
        constant = -constant;
    }
    let rhs = &psi_poly(k - 1, n)?.scale(&int(k as u64)) + &Polynomial::constant(constant);
    Ok(lhs == rhs)
}
