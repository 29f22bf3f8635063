//! Bernoulli numbers, higher-order Bernoulli numbers and Stirling numbers of
//! the second kind.
//!
//! Convention: `B_k` are the coefficients of `t/(e^t - 1) = Σ B_k t^k/k!`, so
//! `B_1 = -1/2`. The `+1/2` convention would break the derivative identity
//! for `Ψ_k(x, 1) = S_k(x)`.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::arith::{binomial, factorial};
use crate::series::{expm1_over_t_scaled, t_over_expm1, TruncatedSeries};
use crate::{int, Error, Rational, Result};

fn bernoulli_table() -> &'static RwLock<Vec<Rational>> {
    static TABLE: OnceLock<RwLock<Vec<Rational>>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(vec![Rational::one()]))
}

/// `B_k` from the recurrence `Σ_{j=0}^{k} C(k+1, j) B_j = 0`. Values are cached.
pub fn bernoulli(k: usize) -> Rational {
    let cached = bernoulli_table().read().unwrap().get(k).cloned();
    let value = cached.unwrap_or_else(|| {
        let mut table = bernoulli_table().write().unwrap();
        while table.len() <= k {
            let m = table.len();
            let sum: Rational = table
                .iter()
                .enumerate()
                .filter(|(_, b)| !b.is_zero())
                .map(|(j, b)| b * int(binomial(m as u64 + 1, j as i64)))
                .sum();
            table.push(-sum / int(m as u64 + 1));
        }
        table[k].clone()
    });
    if cfg!(feature = "mutant-b1") && k == 1 {
        return -value;
    }
    value
}

/// `B_k` from the explicit double sum
/// `Σ_{m=1}^{k} 1/(m+1) Σ_{i=1}^{m} (-1)^i C(m, i) i^k`.
///
/// At `k = 0` the outer sum is empty and would give 0; this returns `B_0 = 1`
/// instead.
pub fn bernoulli_explicit(k: usize) -> Rational {
    if k == 0 {
        return Rational::one();
    }
    let mut total = Rational::zero();
    for m in 1..=k {
        let mut inner = BigInt::zero();
        for i in 1..=m {
            let term = BigInt::from(binomial(m as u64, i as i64)) * BigInt::from(i).pow(k as u32);
            if i % 2 == 1 {
                inner -= term;
            } else {
                inner += term;
            }
        }
        total += Rational::new(inner, BigInt::from(m + 1));
    }
    total
}

/// `Σ_{h=0}^{l} (-1)^h C(l, h) h^e`.
fn alternating_power_sum(l: usize, e: usize) -> BigInt {
    let mut acc = BigInt::zero();
    for h in 0..=l {
        let term = BigInt::from(binomial(l as u64, h as i64)) * BigInt::from(h).pow(e as u32);
        if h % 2 == 1 {
            acc -= term;
        } else {
            acc += term;
        }
    }
    acc
}

type HigherTable = RwLock<HashMap<(usize, usize), Rational>>;

fn higher_table() -> &'static HigherTable {
    static TABLE: OnceLock<HigherTable> = OnceLock::new();
    TABLE.get_or_init(Default::default)
}

/// Higher-order Bernoulli number `B_j^(m)`, the `j`-th coefficient (times
/// `j!`) of `(t/(e^t - 1))^m`, by the Srivastava–Todorov sum
///
/// `Σ_{l=0}^{j} C(j+m, j-l) C(m+l-1, l) j!/(j+l)! Σ_{h=0}^{l} (-1)^h C(l, h) h^(j+l)`.
///
/// `B_0^(0) = 1` and `B_j^(0) = 0` for `j >= 1`.
pub fn higher_bernoulli(j: usize, m: usize) -> Rational {
    if let Some(v) = higher_table().read().unwrap().get(&(j, m)) {
        return v.clone();
    }
    let value = if m == 0 {
        if j == 0 {
            Rational::one()
        } else {
            Rational::zero()
        }
    } else {
        let jf = factorial(j as u64);
        let mut total = Rational::zero();
        for l in 0..=j {
            let c = binomial((j + m) as u64, (j - l) as i64)
                * binomial((m + l - 1) as u64, l as i64);
            let inner = alternating_power_sum(l, j + l);
            if inner.is_zero() || c.is_zero() {
                continue;
            }
            let numer = BigInt::from(c * &jf) * inner;
            total += Rational::new(numer, BigInt::from(factorial((j + l) as u64)));
        }
        total
    };
    higher_table().write().unwrap().insert((j, m), value.clone());
    value
}

/// `B_j^(m)` read off the series `(t/(e^t - 1))^m` truncated at `order`.
pub fn higher_bernoulli_conv(j: usize, m: usize, order: usize) -> Result<Rational> {
    if j > order {
        return Err(Error::OrderUnderflow { index: j, order });
    }
    t_over_expm1(1, order).pow(m as u32).egf_coeff(j)
}

fn stirling_table() -> &'static RwLock<Vec<Vec<BigUint>>> {
    static TABLE: OnceLock<RwLock<Vec<Vec<BigUint>>>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(vec![vec![BigUint::one()]]))
}

/// Stirling number of the second kind `S(l, m)`, from
/// `S(l, m) = m S(l-1, m) + S(l-1, m-1)`. Rows are cached.
pub fn stirling2(l: usize, m: usize) -> BigUint {
    if m > l {
        return BigUint::zero();
    }
    if let Some(row) = stirling_table().read().unwrap().get(l) {
        return row[m].clone();
    }
    let mut table = stirling_table().write().unwrap();
    while table.len() <= l {
        let prev = table.last().unwrap();
        let r = prev.len();
        let row: Vec<BigUint> = (0..=r)
            .map(|m| {
                let stay = if m < r { &prev[m] * m } else { BigUint::zero() };
                let join = if m > 0 { prev[m - 1].clone() } else { BigUint::zero() };
                stay + join
            })
            .collect();
        table.push(row);
    }
    table[l][m].clone()
}

/// Checks `((e^(xt) - 1)/t)^N = Σ_j (j! N!/(j+N)!) S(j+N, N) x^(j+N) t^j/j!`
/// coefficientwise for `j = 0..=order`.
pub fn stirling_identity_check(x: &Rational, power: usize, order: usize) -> bool {
    let lhs = expm1_over_t_scaled(x, order).pow(power as u32);
    let nf = int(factorial(power as u64));
    let rhs = TruncatedSeries::from_fn(order, |j| {
        // t^j carries N! S(j+N, N) x^(j+N) / (j+N)!
        let s = int(stirling2(j + power, power));
        let denom = int(factorial((j + power) as u64));
        &nf * s * num_traits::pow(x.clone(), j + power) / denom
    });
    lhs == rhs
}
