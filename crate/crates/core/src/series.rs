//! Truncated formal power series in `t` over exact rationals.
//!
//! A series of order `K` holds `c_0, ..., c_K` and stands for
//! `Σ c_k t^k mod t^(K+1)`. Coefficients are stored plain; quantities defined
//! through exponential generating functions are read back with
//! [`TruncatedSeries::egf_coeff`], which multiplies by `k!`.
//!
//! Binary operations require equal orders and never truncate silently.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{factorial, moebius, squarefree_divisors};
use crate::{int, Error, Rational, Result};

/// Truncation order used when a caller has no reason to pick another.
pub const DEFAULT_ORDER: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    /// Series of order `coeffs.len() - 1`. Panics on an empty vector.
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series needs at least c_0");
        TruncatedSeries { coeffs }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> Rational) -> Self {
        TruncatedSeries {
            coeffs: (0..=order).map(f).collect(),
        }
    }

    pub fn zero(order: usize) -> Self {
        Self::from_fn(order, |_| Rational::zero())
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rational::one(), order)
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// `c t^power`, zero if `power > order`.
    pub fn monomial(c: Rational, power: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if power <= order {
            s.coeffs[power] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Result<&Rational> {
        self.coeffs.get(k).ok_or(Error::OrderUnderflow {
            index: k,
            order: self.order(),
        })
    }

    /// `k! c_k`.
    pub fn egf_coeff(&self, k: usize) -> Result<Rational> {
        Ok(self.coeff(k)? * Rational::from_integer(BigInt::from(factorial(k as u64))))
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(TruncatedSeries {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(TruncatedSeries {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let order = self.order();
        let mut out = vec![Rational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=order - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    /// `self^power` by square-and-multiply; `pow(0)` is the unit series.
    pub fn pow(&self, power: u32) -> Self {
        let mut acc = Self::one(self.order());
        let mut base = self.clone();
        let mut e = power;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same order");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same order");
            }
        }
        acc
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let inv0 = c0.recip();
        let mut out: Vec<Rational> = Vec::with_capacity(self.coeffs.len());
        out.push(inv0.clone());
        for k in 1..=self.order() {
            let mut acc = Rational::zero();
            for i in 1..=k {
                acc += &self.coeffs[i] * &out[k - i];
            }
            out.push(-acc * &inv0);
        }
        Ok(TruncatedSeries { coeffs: out })
    }
}

fn inv_factorial(k: usize) -> Rational {
    Rational::new(BigInt::one(), BigInt::from(factorial(k as u64)))
}

/// `e^(a t)`.
pub fn exp_series(a: &Rational, order: usize) -> TruncatedSeries {
    let mut power = Rational::one();
    TruncatedSeries::from_fn(order, |k| {
        let c = &power * inv_factorial(k);
        power *= a;
        c
    })
}

/// `(e^(x t) - 1) / t` for rational `x`: `c_k = x^(k+1) / (k+1)!`.
pub fn expm1_over_t_scaled(x: &Rational, order: usize) -> TruncatedSeries {
    let mut power = x.clone();
    TruncatedSeries::from_fn(order, |k| {
        let c = &power * inv_factorial(k + 1);
        power *= x;
        c
    })
}

/// `(e^(d t) - 1) / t`: `c_k = d^(k+1) / (k+1)!`.
pub fn expm1_over_t(d: u64, order: usize) -> TruncatedSeries {
    expm1_over_t_scaled(&int(d), order)
}

/// `t / (e^(d t) - 1)`, whose coefficient `k` is `B_k d^(k-1) / k!`.
pub fn t_over_expm1(d: u64, order: usize) -> TruncatedSeries {
    expm1_over_t(d, order).inverse().expect("constant term is d > 0")
}

/// `Σ_{d|n} μ(d) t / (e^(d t) - 1)`, the generating function of `M_k(n)`.
pub fn mb_gf(n: u64, order: usize) -> Result<TruncatedSeries> {
    let mut acc = TruncatedSeries::zero(order);
    for d in squarefree_divisors(n)? {
        let term = t_over_expm1(d, order);
        acc = match moebius(d)? {
            1 => acc.add(&term)?,
            _ => acc.sub(&term)?,
        };
    }
    Ok(acc)
}

/// Generating function of `Ψ_k(x, n)` via
/// `(t δ_{1n} + Σ_{d|n} μ(d) t/(e^(dt) - 1)) · (e^(xt) - 1)/t`.
pub fn psi_gf(x: &Rational, n: u64, order: usize) -> Result<TruncatedSeries> {
    let mut left = mb_gf(n, order)?;
    if n == 1 {
        left = left.add(&TruncatedSeries::monomial(Rational::one(), 1, order))?;
    }
    left.mul(&expm1_over_t_scaled(x, order))
}

/// Generating function of `Ψ_k(x, n)` straight from its definition
/// `Σ_{d|n} μ(d) (e^((1 + x/d) d t) - e^(d t)) / (e^(d t) - 1)`, with the
/// numerator and denominator both divided by `t` before inverting.
pub fn psi_gf_direct(x: &Rational, n: u64, order: usize) -> Result<TruncatedSeries> {
    let mut acc = TruncatedSeries::zero(order);
    for d in squarefree_divisors(n)? {
        let dr = int(d);
        let shifted = &dr + x;
        // (e^((d+x)t) - e^(dt)) / t
        let numer = expm1_over_t_scaled(&shifted, order).sub(&expm1_over_t_scaled(&dr, order))?;
        let term = numer.mul(&expm1_over_t(d, order).inverse()?)?;
        acc = match moebius(d)? {
            1 => acc.add(&term)?,
            _ => acc.sub(&term)?,
        };
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;
    use proptest::prelude::*;

    fn series(cs: &[(i64, i64)]) -> TruncatedSeries {
        TruncatedSeries::new(cs.iter().map(|&(a, b)| rat(a, b)).collect())
    }

    #[test]
    fn add_and_identities() {
        let a = series(&[(1, 1), (1, 1), (0, 1)]);
        let b = series(&[(1, 1), (-1, 1), (0, 1)]);
        assert_eq!(a.add(&b).unwrap(), series(&[(2, 1), (0, 1), (0, 1)]));
        assert_eq!(TruncatedSeries::zero(2).add(&a).unwrap(), a);
        assert_eq!(a.mul(&b).unwrap(), series(&[(1, 1), (0, 1), (-1, 1)]));
        assert_eq!(a.mul(&TruncatedSeries::one(2)).unwrap(), a);
    }

    #[test]
    fn order_mismatch_is_rejected() {
        let a = TruncatedSeries::one(3);
        let b = TruncatedSeries::one(4);
        assert_eq!(a.add(&b), Err(Error::OrderMismatch { left: 3, right: 4 }));
        assert!(a.mul(&b).is_err());
        assert!(a.coeff(4).is_err());
    }

    #[test]
    fn powers() {
        let a = series(&[(1, 1), (1, 1), (0, 1), (0, 1)]);
        assert_eq!(a.pow(2), series(&[(1, 1), (2, 1), (1, 1), (0, 1)]));
        assert_eq!(a.pow(1), a);
        assert_eq!(a.pow(0), TruncatedSeries::one(3));
        assert_eq!(a.pow(5), a.mul(&a).unwrap().mul(&a).unwrap().mul(&a).unwrap().mul(&a).unwrap());
    }

    #[test]
    fn inverse_of_geometric() {
        let a = series(&[(1, 1), (-1, 1), (0, 1), (0, 1), (0, 1)]);
        assert_eq!(a.inverse().unwrap(), TruncatedSeries::from_fn(4, |_| rat(1, 1)));
        assert_eq!(a.inverse().unwrap().inverse().unwrap(), a);
        assert_eq!(TruncatedSeries::zero(3).inverse(), Err(Error::ZeroConstantTerm));
    }

    #[test]
    fn exponential_building_blocks() {
        let e1 = expm1_over_t(1, 4);
        assert_eq!(&e1.coeffs()[..3], &[rat(1, 1), rat(1, 2), rat(1, 6)]);
        let e2 = expm1_over_t(2, 4);
        assert_eq!(&e2.coeffs()[..3], &[rat(2, 1), rat(2, 1), rat(4, 3)]);
        assert_eq!(e1.mul(&t_over_expm1(1, 4)).unwrap(), TruncatedSeries::one(4));
        let b = t_over_expm1(1, 4);
        assert_eq!(&b.coeffs()[..3], &[rat(1, 1), rat(-1, 2), rat(1, 12)]);
        assert_eq!(t_over_expm1(2, 4).coeffs()[0], rat(1, 2));
    }

    #[test]
    fn exp_series_product_adds_exponents() {
        let a = exp_series(&rat(2, 3), 8);
        let b = exp_series(&rat(5, 4), 8);
        assert_eq!(a.mul(&b).unwrap(), exp_series(&(rat(2, 3) + rat(5, 4)), 8));
    }

    #[test]
    fn mb_gf_shapes() {
        assert_eq!(mb_gf(1, 10).unwrap(), t_over_expm1(1, 10));
        for n in 2..=30 {
            let s = mb_gf(n, DEFAULT_ORDER).unwrap();
            for k in (1..=DEFAULT_ORDER).step_by(2) {
                assert!(s.coeffs()[k].is_zero(), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn psi_gf_routes_agree_and_vanish_at_zero() {
        for n in [1u64, 2, 6, 12] {
            for x in [rat(0, 1), rat(1, 1), rat(5, 2), rat(7, 1)] {
                let a = psi_gf(&x, n, 10).unwrap();
                let b = psi_gf_direct(&x, n, 10).unwrap();
                assert_eq!(a, b, "n={n} x={x}");
                if x.is_zero() {
                    assert_eq!(a, TruncatedSeries::zero(10));
                }
            }
        }
        // n = 1, x = 1 is the series of e^t
        let s = psi_gf(&rat(1, 1), 1, 8).unwrap();
        for k in 0..=8 {
            assert_eq!(s.egf_coeff(k).unwrap(), rat(1, 1));
        }
    }

    fn arb_series(order: usize) -> impl Strategy<Value = TruncatedSeries> {
        proptest::collection::vec((-20i64..20, 1i64..9), order + 1)
            .prop_map(|v| TruncatedSeries::new(v.into_iter().map(|(a, b)| rat(a, b)).collect()))
    }

    proptest! {
        #[test]
        fn mul_commutes_and_associates(a in arb_series(6), b in arb_series(6), c in arb_series(6)) {
            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
            prop_assert_eq!(
                a.mul(&b).unwrap().mul(&c).unwrap(),
                a.mul(&b.mul(&c).unwrap()).unwrap()
            );
            prop_assert_eq!(
                a.add(&b).unwrap().mul(&c).unwrap(),
                a.mul(&c).unwrap().add(&b.mul(&c).unwrap()).unwrap()
            );
        }

        #[test]
        fn inverse_is_two_sided(a in arb_series(7)) {
            prop_assume!(!a.coeffs()[0].is_zero());
            let inv = a.inverse().unwrap();
            prop_assert_eq!(a.mul(&inv).unwrap(), TruncatedSeries::one(7));
            prop_assert_eq!(inv.inverse().unwrap(), a);
        }
    }
}
