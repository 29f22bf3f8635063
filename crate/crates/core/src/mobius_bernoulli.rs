//! Möbius–Bernoulli numbers `M_k(n)` and their higher orders `M_k^N(n)`.
//!
//! `M_k(n)` are the exponential-generating-function coefficients of
//! `Σ_{d|n} μ(d) t/(e^(dt) - 1)`, and `M_k^N(n)` those of its `N`-th power.
//! Note `M_0(n) = Σ_{d|n} μ(d)/d = φ(n)/n`, not `φ(n)`; every route below uses
//! that value, and the `verify` suite reports how far the `φ(n)` reading drifts.
//!
//! `M_k^N(n)` is computed four ways:
//!
//! | route | method |
//! |---|---|
//! | [`mb_higher_conv`] | multinomial sum over compositions of `k` into `N` parts |
//! | [`mb_higher_partition`] | Faà di Bruno sum over partitions of `k` |
//! | [`mb_higher_primepower`] | Leibniz expansion in higher-order Bernoulli numbers, `n = p^s` |
//! | [`mb_higher_kernel`] | multinomial expansion over the squarefree divisors of `n` |
//!
//! [`mb_higher`] dispatches on a [`Method`] and, in `Auto` mode, insists that
//! all applicable routes agree.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::arith::{
    binomial, compositions, even_partitions, factorize, is_prime, moebius, multinomial,
    partitions, squarefree_divisors, totient, Partition,
};
use crate::bernoulli::{bernoulli, higher_bernoulli};
use crate::series::mb_gf;
use crate::{format_rational, int, rat, Error, Rational, Result};

/// `Auto` mode cross-checks the other routes for `k` up to this bound.
pub const DEFAULT_CROSS_CHECK_BOUND: usize = 12;

/// `M_k(n)` from `M_k(1) = B_k` and `M_k(n) = B_k Π_{p|n} (1 - p^(k-1))`.
/// `M_0(n) = φ(n)/n`.
pub fn mb_number(k: usize, n: u64) -> Result<Rational> {
    let f = factorize(n)?;
    if k == 0 {
        return Ok(rat(totient(n)? as i64, n as i64));
    }
    let b = bernoulli(k);
    if n == 1 || b.is_zero() {
        return Ok(b);
    }
    let mut value = b;
    for p in f.primes() {
        value *= Rational::one() - int(p).pow(k as i32 - 1);
    }
    Ok(value)
}

/// `M_k(n)` as `k!` times the `k`-th coefficient of the generating function
/// truncated at `order`.
pub fn mb_number_series(k: usize, n: u64, order: usize) -> Result<Rational> {
    if k > order {
        return Err(Error::OrderUnderflow { index: k, order });
    }
    mb_gf(n, order)?.egf_coeff(k)
}

/// `M_0(n), ..., M_max_k(n)` for one `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MbTable {
    n: u64,
    values: Vec<Rational>,
}

impl MbTable {
    pub fn new(n: u64, max_k: usize) -> Result<Self> {
        let values = (0..=max_k).map(|k| mb_number(k, n)).collect::<Result<_>>()?;
        Ok(MbTable { n, values })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn max_k(&self) -> usize {
        self.values.len() - 1
    }

    pub fn get(&self, k: usize) -> Option<&Rational> {
        self.values.get(k)
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }
}

fn check_power(power: usize) -> Result<()> {
    if power == 0 {
        return Err(Error::domain("N", "at least 1", power));
    }
    Ok(())
}

/// `M_k^N(n) = Σ_{k_1+...+k_N = k} (k; k_1..k_N) M_{k_1}(n) ... M_{k_N}(n)`.
pub fn mb_higher_conv(k: usize, power: usize, n: u64) -> Result<Rational> {
    check_power(power)?;
    let table = MbTable::new(n, k)?;
    let mut total = Rational::zero();
    for comp in compositions(k, power)? {
        let mut term = Rational::one();
        for &part in &comp {
            term *= &table.values[part];
            if term.is_zero() {
                break;
            }
        }
        if !term.is_zero() {
            total += term * int(multinomial(k, &comp)?);
        }
    }
    Ok(total)
}

/// One partition's contribution to the Faà di Bruno expansion of `M_k^N(n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionTerm {
    pub partition: Partition,
    /// `k! / (Π k_i! Π λ!)`.
    pub coefficient: BigUint,
    /// `N!/(N-j)! M_0^(N-j) · coefficient · Π M_{k_i}`, with `j` the number of parts.
    pub value: Rational,
}

/// The nonzero-candidate terms of the partition route, one per partition of `k`.
///
/// For `n > 1` all odd-index `M_k(n)` vanish, so only partitions into even
/// parts are listed. Partitions with more than `N` parts are dropped.
pub fn partition_terms(k: usize, power: usize, n: u64) -> Result<Vec<PartitionTerm>> {
    check_power(power)?;
    let table = MbTable::new(n, k)?;
    let parts = if n > 1 { even_partitions(k)? } else { partitions(k)? };
    let m0 = &table.values[0];
    let mut out = Vec::with_capacity(parts.len());
    for partition in parts {
        let j = partition.len();
        if j > power {
            continue;
        }
        let coefficient = partition.faa_di_bruno_coefficient();
        let mut value = int(crate::arith::falling_factorial(power as u64, j as u64))
            * int(coefficient.clone())
            * num_traits::pow(m0.clone(), power - j);
        for &part in partition.parts() {
            value *= &table.values[part];
        }
        out.push(PartitionTerm {
            partition,
            coefficient,
            value,
        });
    }
    Ok(out)
}

/// `M_k^N(n)` by Faà di Bruno's formula for `D^k (f^N)` with
/// `f^(i)(0) = M_i(n)`.
pub fn mb_higher_partition(k: usize, power: usize, n: u64) -> Result<Rational> {
    check_power(power)?;
    if k == 0 {
        return Ok(num_traits::pow(mb_number(0, n)?, power));
    }
    Ok(partition_terms(k, power, n)?.into_iter().map(|t| t.value).sum())
}

/// `M_k^N(p^s)` from the Leibniz expansion
///
/// `Σ_{m=0}^{N} C(N, m) (-p)^(m-N) Σ_{j=0}^{k} C(k, j) B_j^(m) B_{k-j}^(N-m) p^(k-j)`.
///
/// The result does not depend on `s`.
pub fn mb_higher_primepower(k: usize, power: usize, p: u64, s: u32) -> Result<Rational> {
    check_power(power)?;
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if s == 0 {
        return Err(Error::domain("s", "at least 1", s));
    }
    let pr = int(p);
    let mut total = Rational::zero();
    for m in 0..=power {
        let mut inner = Rational::zero();
        for j in 0..=k {
            let b = higher_bernoulli(j, m);
            if b.is_zero() {
                continue;
            }
            let c = higher_bernoulli(k - j, power - m);
            if c.is_zero() {
                continue;
            }
            inner += int(binomial(k as u64, j as i64)) * b * c * pr.pow((k - j) as i32);
        }
        let sign_pow = (-pr.clone()).pow(m as i32 - power as i32);
        total += int(binomial(power as u64, m as i64)) * sign_pow * inner;
    }
    Ok(total)
}

/// `M_0^N(n), ..., M_max_k^N(n)` by expanding
/// `(Σ_d μ(d)/d · (dt)/(e^(dt) - 1))^N` multinomially over the squarefree
/// divisors `d` of `n`:
///
/// `Σ_{Σ m_d = N} (N; m) Π_d (μ(d)/d)^(m_d) · Σ_{Σ k_d = k} (k; k) Π_d B_{k_d}^(m_d) d^(k_d)`.
///
/// The inner sum over `(k_d)` is the binomial convolution of the per-divisor
/// sequences `i ↦ B_i^(m_d) d^i`, built up one divisor at a time.
pub fn mb_higher_kernel_table(max_k: usize, power: usize, n: u64) -> Result<Vec<Rational>> {
    check_power(power)?;
    let divs = squarefree_divisors(n)?;
    let weights: Vec<Rational> = divs
        .iter()
        .map(|&d| Ok(rat(moebius(d)? as i64, d as i64)))
        .collect::<Result<_>>()?;
    let binom: Vec<Vec<Rational>> = (0..=max_k)
        .map(|i| (0..=i).map(|l| int(binomial(i as u64, l as i64))).collect())
        .collect();

    let mut total = vec![Rational::zero(); max_k + 1];
    for m in compositions(power, divs.len())? {
        let mut coef = int(multinomial(power, &m)?);
        let mut seq: Vec<Rational> = (0..=max_k)
            .map(|i| if i == 0 { Rational::one() } else { Rational::zero() })
            .collect();
        for ((&d, w), &md) in divs.iter().zip(&weights).zip(&m) {
            if md == 0 {
                continue;
            }
            coef *= w.pow(md as i32);
            let dr = int(d);
            let factor: Vec<Rational> = (0..=max_k)
                .map(|i| higher_bernoulli(i, md) * dr.pow(i as i32))
                .collect();
            seq = (0..=max_k)
                .map(|i| {
                    (0..=i)
                        .filter(|&l| !seq[l].is_zero() && !factor[i - l].is_zero())
                        .map(|l| &binom[i][l] * &seq[l] * &factor[i - l])
                        .sum()
                })
                .collect();
        }
        for (t, s) in total.iter_mut().zip(seq) {
            *t += &coef * s;
        }
    }
    Ok(total)
}

/// `M_k^N(n)` by the squarefree-divisor expansion; see [`mb_higher_kernel_table`].
pub fn mb_higher_kernel(k: usize, power: usize, n: u64) -> Result<Rational> {
    Ok(mb_higher_kernel_table(k, power, n)?.swap_remove(k))
}

/// How to compute `M_k^N(n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Convolution,
    Partition,
    PrimePower,
    Kernel,
    /// Convolution, cross-checked against every other applicable route.
    Auto,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Convolution => "conv",
            Method::Partition => "partition",
            Method::PrimePower => "primepower",
            Method::Kernel => "kernel",
            Method::Auto => "auto",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "conv" | "convolution" => Method::Convolution,
            "partition" => Method::Partition,
            "primepower" | "prime_power" => Method::PrimePower,
            "kernel" => Method::Kernel,
            "auto" => Method::Auto,
            _ => return Err(Error::domain("method", "conv|partition|primepower|kernel|auto", s)),
        })
    }
}

/// A request for `M_k^N(n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HigherMbRequest {
    pub n: u64,
    /// The order `N`.
    pub power: usize,
    pub k: usize,
    pub method: Method,
}

impl HigherMbRequest {
    pub fn new(k: usize, power: usize, n: u64, method: Method) -> Self {
        HigherMbRequest { n, power, k, method }
    }
}

/// Computes a request with the default cross-check bound.
pub fn mb_higher(request: HigherMbRequest) -> Result<Rational> {
    mb_higher_checked(request, DEFAULT_CROSS_CHECK_BOUND)
}

/// Computes a request. In `Auto` mode with `k <= cross_check_bound`, the
/// convolution value is compared with the partition, kernel and (for prime
/// powers) prime-power routes, and any disagreement is an error.
pub fn mb_higher_checked(request: HigherMbRequest, cross_check_bound: usize) -> Result<Rational> {
    let HigherMbRequest { n, power, k, method } = request;
    match method {
        Method::Convolution => mb_higher_conv(k, power, n),
        Method::Partition => mb_higher_partition(k, power, n),
        Method::Kernel => mb_higher_kernel(k, power, n),
        Method::PrimePower => {
            let (p, s) = factorize(n)?
                .as_prime_power()
                .ok_or_else(|| Error::domain("n", "a prime power for the primepower method", n))?;
            mb_higher_primepower(k, power, p, s)
        }
        Method::Auto => {
            let value = mb_higher_conv(k, power, n)?;
            if k <= cross_check_bound {
                let mut others = vec![
                    (Method::Partition, mb_higher_partition(k, power, n)?),
                    (Method::Kernel, mb_higher_kernel(k, power, n)?),
                ];
                if let Some((p, s)) = factorize(n)?.as_prime_power() {
                    others.push((Method::PrimePower, mb_higher_primepower(k, power, p, s)?));
                }
                for (route, other) in others {
                    if other != value {
                        return Err(Error::RouteDisagreement {
                            route_a: Method::Convolution.name(),
                            value_a: format_rational(&value),
                            route_b: route.name(),
                            value_b: format_rational(&other),
                        });
                    }
                }
            }
            Ok(value)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::DEFAULT_ORDER;

    #[test]
    fn mb_number_values() {
        for k in 0..=12 {
            assert_eq!(mb_number(k, 1).unwrap(), bernoulli(k));
        }
        assert_eq!(mb_number(2, 6).unwrap(), rat(1, 3));
        assert_eq!(mb_number(0, 6).unwrap(), rat(1, 3));
        assert_eq!(mb_number(1, 6).unwrap(), rat(0, 1));
        assert_eq!(mb_number(4, 2).unwrap(), rat(-1, 30) * rat(-7, 1));
        assert!(mb_number(2, 0).is_err());
    }

    #[test]
    fn mb_number_series_matches_closed_form() {
        assert_eq!(mb_number_series(3, 6, 16).unwrap(), rat(0, 1));
        assert_eq!(mb_number_series(2, 6, 16).unwrap(), rat(1, 3));
        for n in 1..=30 {
            for k in 0..=DEFAULT_ORDER {
                assert_eq!(
                    mb_number_series(k, n, DEFAULT_ORDER).unwrap(),
                    mb_number(k, n).unwrap(),
                    "n={n} k={k}"
                );
            }
        }
        assert!(mb_number_series(17, 6, 16).is_err());
    }

    #[test]
    fn table_invariants() {
        let t = MbTable::new(10, 12).unwrap();
        assert_eq!(t.n(), 10);
        assert_eq!(t.max_k(), 12);
        assert_eq!(t.get(0).unwrap(), &rat(2, 5));
        for k in (1..=12).step_by(2) {
            assert!(t.get(k).unwrap().is_zero());
        }
    }

    #[test]
    fn higher_order_small_values() {
        assert_eq!(mb_higher_conv(2, 2, 6).unwrap(), rat(2, 9));
        assert_eq!(mb_higher_partition(2, 2, 6).unwrap(), rat(2, 9));
        assert_eq!(mb_higher_kernel(2, 2, 6).unwrap(), rat(2, 9));
        for n in [1u64, 6, 7, 12] {
            for k in 0..8 {
                assert_eq!(mb_higher_conv(k, 1, n).unwrap(), mb_number(k, n).unwrap());
            }
            for power in 1..5 {
                assert_eq!(
                    mb_higher_conv(0, power, n).unwrap(),
                    num_traits::pow(mb_number(0, n).unwrap(), power)
                );
            }
        }
        assert!(mb_higher_conv(2, 0, 6).is_err());
    }

    #[test]
    fn prime_power_route() {
        assert_eq!(mb_higher_primepower(2, 1, 2, 1).unwrap(), rat(-1, 6));
        assert_eq!(mb_higher_primepower(3, 2, 3, 1).unwrap(), rat(0, 1));
        for s in 1..4 {
            assert_eq!(
                mb_higher_primepower(6, 3, 5, s).unwrap(),
                mb_higher_primepower(6, 3, 5, 1).unwrap()
            );
        }
        assert_eq!(mb_higher_primepower(2, 1, 6, 1), Err(Error::NotPrime(6)));
        assert!(mb_higher_primepower(2, 1, 3, 0).is_err());
    }

    #[test]
    fn kernel_reduces_to_prime_power_and_bernoulli() {
        for (p, s) in [(2u64, 3u32), (3, 1), (5, 2)] {
            let n = p.pow(s);
            for power in 1..=4 {
                let table = mb_higher_kernel_table(8, power, n).unwrap();
                for (k, v) in table.iter().enumerate() {
                    assert_eq!(v, &mb_higher_primepower(k, power, p, s).unwrap());
                }
            }
        }
        // n = 1: (t/(e^t - 1))^N, i.e. B_k^(N)
        for power in 1..=4 {
            for k in 0..=8 {
                assert_eq!(mb_higher_kernel(k, power, 1).unwrap(), higher_bernoulli(k, power));
                assert_eq!(mb_higher_conv(k, power, 1).unwrap(), higher_bernoulli(k, power));
            }
        }
    }

    #[test]
    fn routes_agree_on_a_grid() {
        for n in [1u64, 2, 4, 6, 9, 12, 30] {
            for power in 1..=4 {
                let kernel = mb_higher_kernel_table(8, power, n).unwrap();
                for (k, kern) in kernel.iter().enumerate() {
                    let conv = mb_higher_conv(k, power, n).unwrap();
                    assert_eq!(conv, mb_higher_partition(k, power, n).unwrap(), "n={n} N={power} k={k}");
                    assert_eq!(&conv, kern, "n={n} N={power} k={k}");
                }
            }
        }
    }

    #[test]
    fn partition_terms_drop_odd_parts_and_long_partitions() {
        let terms = partition_terms(8, 3, 6).unwrap();
        let shapes: Vec<_> = terms.iter().map(|t| t.partition.parts().to_vec()).collect();
        assert_eq!(shapes, vec![vec![8], vec![6, 2], vec![4, 4], vec![4, 2, 2]]);
        assert_eq!(partition_terms(8, 3, 1).unwrap().len(), 10);
        assert!(partition_terms(7, 3, 6).unwrap().is_empty());
    }

    #[test]
    fn dispatch() {
        assert_eq!(
            mb_higher(HigherMbRequest::new(2, 2, 6, Method::Auto)).unwrap(),
            rat(2, 9)
        );
        assert_eq!(
            mb_higher(HigherMbRequest::new(5, 3, 10, Method::Auto)).unwrap(),
            rat(0, 1)
        );
        assert!(mb_higher(HigherMbRequest::new(2, 2, 6, Method::PrimePower)).is_err());
        assert_eq!(
            mb_higher(HigherMbRequest::new(4, 2, 9, Method::PrimePower)).unwrap(),
            mb_higher_conv(4, 2, 9).unwrap()
        );
        for m in ["conv", "partition", "primepower", "kernel", "auto"] {
            assert_eq!(m.parse::<Method>().unwrap().name(), m);
        }
        assert!("fast".parse::<Method>().is_err());
    }
}
