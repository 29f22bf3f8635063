//! Integer arithmetic and combinatorial enumeration.
//!
//! Arithmetic functions work on `u64` inputs up to `2^63 - 1` with plain trial
//! division. Binomials, factorials and multinomials are arbitrary precision.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::{Error, Rational, Result};

/// Largest accepted argument for the arithmetic functions.
pub const MAX_ARG: u64 = i64::MAX as u64;

/// Largest `k` accepted by [`partitions`].
pub const MAX_PARTITION_K: usize = 64;

fn check_arg(n: u64) -> Result<()> {
    if n == 0 || n > MAX_ARG {
        return Err(Error::domain("n", "in [1, 2^63 - 1]", n));
    }
    Ok(())
}

/// Prime factorization as `(prime, exponent)` pairs with strictly increasing primes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Factorization {
    pairs: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn pairs(&self) -> &[(u64, u32)] {
        &self.pairs
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.pairs.iter().map(|&(p, _)| p)
    }

    /// Number of distinct primes.
    pub fn omega(&self) -> usize {
        self.pairs.len()
    }

    pub fn value(&self) -> u64 {
        self.pairs.iter().map(|&(p, e)| p.pow(e)).product()
    }

    /// Product of the distinct primes.
    pub fn radical(&self) -> u64 {
        self.primes().product()
    }

    pub fn is_squarefree(&self) -> bool {
        self.pairs.iter().all(|&(_, e)| e == 1)
    }

    /// `Some((p, s))` when the factored integer is `p^s` with `s >= 1`.
    pub fn as_prime_power(&self) -> Option<(u64, u32)> {
        match self.pairs.as_slice() {
            [single] => Some(*single),
            _ => None,
        }
    }
}

/// Trial-division factorization. `factorize(1)` is the empty factorization.
pub fn factorize(n: u64) -> Result<Factorization> {
    check_arg(n)?;
    let mut rest = n;
    let mut pairs = Vec::new();
    let mut push = |rest: &mut u64, p: u64| {
        let mut e = 0;
        while rest.is_multiple_of(p) {
            *rest /= p;
            e += 1;
        }
        if e > 0 {
            pairs.push((p, e));
        }
    };
    push(&mut rest, 2);
    push(&mut rest, 3);
    // 6m ± 1 wheel
    let mut p = 5u64;
    while p.saturating_mul(p) <= rest {
        push(&mut rest, p);
        push(&mut rest, p + 2);
        p += 6;
    }
    if rest > 1 {
        pairs.push((rest, 1));
    }
    Ok(Factorization { pairs })
}

/// Deterministic trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    (2..=MAX_ARG).contains(&n) && factorize(n).map(|f| f.pairs == [(n, 1)]).unwrap_or(false)
}

pub fn moebius(n: u64) -> Result<i8> {
    let f = factorize(n)?;
    if !f.is_squarefree() {
        return Ok(0);
    }
    Ok(if f.omega() % 2 == 0 { 1 } else { -1 })
}

pub fn totient(n: u64) -> Result<u64> {
    let f = factorize(n)?;
    Ok(f.pairs
        .iter()
        .map(|&(p, e)| (p - 1) * p.pow(e - 1))
        .product())
}

/// All divisors of `n`, ascending.
pub fn divisors(n: u64) -> Result<Vec<u64>> {
    let f = factorize(n)?;
    let mut out = vec![1u64];
    for &(p, e) in f.pairs() {
        let len = out.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Divisors `d` of `n` with `μ(d) != 0`, ascending. There are `2^ω(n)` of them.
pub fn squarefree_divisors(n: u64) -> Result<Vec<u64>> {
    let f = factorize(n)?;
    let mut out = vec![1u64];
    for p in f.primes() {
        let len = out.len();
        for i in 0..len {
            out.push(out[i] * p);
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// `a choose b`, zero outside `0 <= b <= a`.
pub fn binomial(a: u64, b: i64) -> BigUint {
    if b < 0 || b as u64 > a {
        return BigUint::zero();
    }
    let b = (b as u64).min(a - b as u64);
    let mut acc = BigUint::one();
    for i in 0..b {
        acc *= a - i;
        acc /= i + 1;
    }
    acc
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// `N (N-1) ... (N-j+1)`; zero when `j > N`.
pub fn falling_factorial(n: u64, j: u64) -> BigUint {
    if j > n {
        return BigUint::zero();
    }
    (n - j + 1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// `k! / (k_1! ... k_N!)`.
pub fn multinomial(k: usize, parts: &[usize]) -> Result<BigUint> {
    if parts.iter().sum::<usize>() != k {
        return Err(Error::CompositionSum {
            parts: parts.to_vec(),
            expected: k,
        });
    }
    let mut acc = BigUint::one();
    let mut seen = 0u64;
    // running product of binomials avoids forming k! separately
    for &p in parts {
        seen += p as u64;
        acc *= binomial(seen, p as i64);
    }
    Ok(acc)
}

/// A partition of `k`: parts in non-increasing order plus the multiplicity `λ`
/// of each distinct part.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<usize>,
    multiplicity: BTreeMap<usize, usize>,
}

impl Partition {
    /// Builds a partition from parts in any order; zero parts are rejected.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::domain("partition parts", "positive", format!("{parts:?}")));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let mut multiplicity = BTreeMap::new();
        for &p in &parts {
            *multiplicity.entry(p).or_insert(0) += 1;
        }
        Ok(Partition {
            parts,
            multiplicity,
        })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Distinct part value → number of occurrences.
    pub fn multiplicity(&self) -> &BTreeMap<usize, usize> {
        &self.multiplicity
    }

    /// Number of parts `j`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    /// `k! / (Π k_i! · Π λ!)`, the weight of this partition's term in the power
    /// form of Faà di Bruno's formula. Each `λ!` enters once per distinct part.
    pub fn faa_di_bruno_coefficient(&self) -> BigUint {
        let m = multinomial(self.weight(), &self.parts).expect("parts sum to weight");
        let lambdas: BigUint = self
            .multiplicity
            .values()
            .map(|&c| factorial(c as u64))
            .product();
        m / lambdas
    }

    fn scaled(&self, factor: usize) -> Partition {
        Partition {
            parts: self.parts.iter().map(|p| p * factor).collect(),
            multiplicity: self
                .multiplicity
                .iter()
                .map(|(&v, &c)| (v * factor, c))
                .collect(),
        }
    }
}

/// Every partition of `k`, in decreasing-part lexicographic order:
/// `4, 3+1, 2+2, 2+1+1, 1+1+1+1`.
pub fn partitions(k: usize) -> Result<Vec<Partition>> {
    if k == 0 || k > MAX_PARTITION_K {
        return Err(Error::domain("k", "in [1, 64]", k));
    }
    let mut out = Vec::new();
    let mut stack = Vec::new();
    partitions_into(k, k, &mut stack, &mut out);
    Ok(out)
}

/// Partitions of `k` whose parts are all even, same order as [`partitions`].
/// Empty for odd `k`.
pub fn even_partitions(k: usize) -> Result<Vec<Partition>> {
    if k == 0 || k > MAX_PARTITION_K {
        return Err(Error::domain("k", "in [1, 64]", k));
    }
    if k % 2 == 1 {
        return Ok(Vec::new());
    }
    Ok(partitions(k / 2)?.iter().map(|p| p.scaled(2)).collect())
}

fn partitions_into(rest: usize, max_part: usize, stack: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if rest == 0 {
        out.push(Partition::new(stack.clone()).expect("positive parts"));
        return;
    }
    for first in (1..=max_part.min(rest)).rev() {
        stack.push(first);
        partitions_into(rest - first, first, stack, out);
        stack.pop();
    }
}

/// Ordered tuple of `N` nonnegative integers.
pub type Composition = Vec<usize>;

/// Lexicographic iterator over the weak compositions of `k` into `N` parts.
#[derive(Debug, Clone)]
pub struct Compositions {
    current: Option<Vec<usize>>,
}

impl Iterator for Compositions {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        let out = self.current.take()?;
        let mut next = out.clone();
        let last = next.len() - 1;
        let mut tail = 0;
        for i in (0..last).rev() {
            tail += next[i + 1];
            if tail > 0 {
                next[i] += 1;
                for slot in &mut next[i + 1..] {
                    *slot = 0;
                }
                next[last] = tail - 1;
                self.current = Some(next);
                break;
            }
        }
        Some(out)
    }
}

/// All `C(k+N-1, N-1)` weak compositions of `k` into `N` parts, lexicographic.
pub fn compositions(k: usize, parts: usize) -> Result<Compositions> {
    if parts == 0 {
        return Err(Error::domain("N", "at least 1", parts));
    }
    let mut first = vec![0; parts];
    first[parts - 1] = k;
    Ok(Compositions {
        current: Some(first),
    })
}

/// `D^k (f^N)` at a point, from the derivative values `f, f', ..., f^(k)`
/// there, by summing over partitions of `k`:
///
/// `N! Σ_j f^(N-j)/(N-j)! Σ_{|π|=j} k!/(Π k_i! Π λ!) Π f^(k_i)`.
///
/// Terms with more than `N` parts vanish and are skipped.
pub fn power_derivative_partition(derivs: &[Rational], power: usize, k: usize) -> Result<Rational> {
    if k == 0 {
        return Err(Error::domain("k", "at least 1", k));
    }
    power_derivative_over(derivs, power, k, &partitions(k)?)
}

/// Same formula restricted to a caller-chosen set of partitions of `k`. Use it
/// when the derivatives at the omitted parts are known to vanish.
pub fn power_derivative_over(
    derivs: &[Rational],
    power: usize,
    k: usize,
    parts: &[Partition],
) -> Result<Rational> {
    if derivs.len() < k + 1 {
        return Err(Error::domain("derivs length", "at least k + 1", derivs.len()));
    }
    if power == 0 {
        return Err(Error::domain("N", "at least 1", power));
    }
    let mut total = Rational::zero();
    for p in parts {
        debug_assert_eq!(p.weight(), k);
        let j = p.len();
        if j > power {
            continue;
        }
        let mut term = Rational::one();
        for &part in p.parts() {
            term *= &derivs[part];
            if term.is_zero() {
                break;
            }
        }
        if term.is_zero() {
            continue;
        }
        let weight = falling_factorial(power as u64, j as u64) * p.faa_di_bruno_coefficient();
        term *= Rational::from_integer(BigInt::from(weight));
        term *= num_traits::pow(derivs[0].clone(), power - j);
        total += term;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{int, rat};

    fn brute_totient(n: u64) -> u64 {
        (1..=n).filter(|&m| num_integer::gcd(m, n) == 1).count() as u64
    }

    #[test]
    fn factorize_small() {
        assert!(factorize(1).unwrap().pairs().is_empty());
        assert_eq!(factorize(6).unwrap().pairs(), &[(2, 1), (3, 1)]);
        assert_eq!(factorize(12).unwrap().pairs(), &[(2, 2), (3, 1)]);
        assert_eq!(factorize(97).unwrap().pairs(), &[(97, 1)]);
        assert_eq!(factorize(25).unwrap().pairs(), &[(5, 2)]);
        assert_eq!(factorize(49 * 11).unwrap().pairs(), &[(7, 2), (11, 1)]);
    }

    #[test]
    fn factorize_rejects_out_of_range() {
        assert!(factorize(0).is_err());
        assert!(factorize(MAX_ARG + 1).is_err());
        assert!(moebius(0).is_err());
        assert!(totient(0).is_err());
        assert!(divisors(0).is_err());
    }

    #[test]
    fn factorize_reconstructs() {
        for n in 1..2000u64 {
            let f = factorize(n).unwrap();
            assert_eq!(f.value(), n);
            assert!(f.primes().all(is_prime));
            assert!(f.pairs().windows(2).all(|w| w[0].0 < w[1].0));
        }
        let big = 1_000_000_007u64 * 998_244_353;
        assert_eq!(factorize(big).unwrap().pairs(), &[(998_244_353, 1), (1_000_000_007, 1)]);
    }

    #[test]
    fn moebius_values() {
        assert_eq!(moebius(1).unwrap(), 1);
        assert_eq!(moebius(6).unwrap(), 1);
        assert_eq!(moebius(12).unwrap(), 0);
        assert_eq!(moebius(30).unwrap(), -1);
        assert_eq!(moebius(7).unwrap(), -1);
    }

    #[test]
    fn totient_matches_gcd_count() {
        assert_eq!(totient(1).unwrap(), 1);
        assert_eq!(totient(6).unwrap(), 2);
        assert_eq!(totient(30).unwrap(), 8);
        for n in 1..=300 {
            assert_eq!(totient(n).unwrap(), brute_totient(n), "n = {n}");
        }
    }

    #[test]
    fn divisor_lists() {
        assert_eq!(divisors(1).unwrap(), vec![1]);
        assert_eq!(divisors(6).unwrap(), vec![1, 2, 3, 6]);
        assert_eq!(divisors(8).unwrap(), vec![1, 2, 4, 8]);
        assert_eq!(squarefree_divisors(1).unwrap(), vec![1]);
        assert_eq!(squarefree_divisors(12).unwrap(), vec![1, 2, 3, 6]);
        assert_eq!(squarefree_divisors(30).unwrap(), vec![1, 2, 3, 5, 6, 10, 15, 30]);
        for n in 1..=200u64 {
            let brute: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
            assert_eq!(divisors(n).unwrap(), brute);
            let sf: Vec<u64> = brute.into_iter().filter(|&d| moebius(d).unwrap() != 0).collect();
            assert_eq!(squarefree_divisors(n).unwrap(), sf);
        }
    }

    #[test]
    fn mobius_sums() {
        for n in 1..=200u64 {
            let ds = divisors(n).unwrap();
            let s: i64 = ds.iter().map(|&d| moebius(d).unwrap() as i64).sum();
            assert_eq!(s, i64::from(n == 1), "n = {n}");
            let over_d: Rational = ds
                .iter()
                .map(|&d| rat(moebius(d).unwrap() as i64, d as i64))
                .sum();
            assert_eq!(over_d, rat(totient(n).unwrap() as i64, n as i64));
            let product = factorize(n)
                .unwrap()
                .primes()
                .fold(int(n), |acc, p| acc * (Rational::one() - rat(1, p as i64)));
            assert_eq!(product, int(totient(n).unwrap()));
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), BigUint::from(6u32));
        assert_eq!(binomial(8, 2), BigUint::from(28u32));
        assert_eq!(binomial(5, -1), BigUint::zero());
        assert_eq!(binomial(5, 6), BigUint::zero());
        assert_eq!(binomial(0, 0), BigUint::one());
        assert_eq!(binomial(60, 30), BigUint::from(118_264_581_564_861_424u64));
    }

    #[test]
    fn multinomials() {
        assert_eq!(multinomial(4, &[2, 2]).unwrap(), BigUint::from(6u32));
        assert_eq!(multinomial(8, &[4, 2, 2]).unwrap(), BigUint::from(420u32));
        assert_eq!(multinomial(9, &[9]).unwrap(), BigUint::one());
        assert_eq!(multinomial(0, &[0, 0]).unwrap(), BigUint::one());
        assert!(multinomial(5, &[2, 2]).is_err());
    }

    #[test]
    fn partitions_of_four_in_order() {
        let ps: Vec<Vec<usize>> = partitions(4).unwrap().iter().map(|p| p.parts().to_vec()).collect();
        assert_eq!(
            ps,
            vec![vec![4], vec![3, 1], vec![2, 2], vec![2, 1, 1], vec![1, 1, 1, 1]]
        );
        assert_eq!(partitions(1).unwrap().len(), 1);
        assert_eq!(partitions(10).unwrap().len(), 42);
        assert!(partitions(0).is_err());
        assert!(partitions(65).is_err());
    }

    #[test]
    fn partition_multiplicities() {
        let p = Partition::new(vec![1, 2, 1, 4, 1]).unwrap();
        assert_eq!(p.parts(), &[4, 2, 1, 1, 1]);
        assert_eq!(p.len(), 5);
        assert_eq!(p.multiplicity().values().sum::<usize>(), p.len());
        assert_eq!(p.multiplicity()[&1], 3);
        assert!(Partition::new(vec![2, 0]).is_err());
    }

    #[test]
    fn even_partitions_double_the_halves() {
        let ps: Vec<Vec<usize>> = even_partitions(8)
            .unwrap()
            .iter()
            .map(|p| p.parts().to_vec())
            .collect();
        assert_eq!(
            ps,
            vec![vec![8], vec![6, 2], vec![4, 4], vec![4, 2, 2], vec![2, 2, 2, 2]]
        );
        assert!(even_partitions(7).unwrap().is_empty());
    }

    #[test]
    fn faa_di_bruno_weights_for_eight() {
        // the four grouped coefficients of the M_8^N expansion
        let w = |parts: Vec<usize>| Partition::new(parts).unwrap().faa_di_bruno_coefficient();
        assert_eq!(w(vec![8]), BigUint::from(1u32));
        assert_eq!(w(vec![6, 2]), BigUint::from(28u32));
        assert_eq!(w(vec![4, 4]), BigUint::from(35u32));
        assert_eq!(w(vec![4, 2, 2]), BigUint::from(210u32));
        assert_eq!(w(vec![2, 2, 2, 2]), BigUint::from(105u32));
    }

    #[test]
    fn compositions_in_order() {
        let cs: Vec<_> = compositions(2, 2).unwrap().collect();
        assert_eq!(cs, vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
        assert_eq!(compositions(4, 3).unwrap().count(), 15);
        assert_eq!(compositions(0, 3).unwrap().collect::<Vec<_>>(), vec![vec![0, 0, 0]]);
        assert_eq!(compositions(5, 1).unwrap().collect::<Vec<_>>(), vec![vec![5]]);
        assert!(compositions(1, 0).is_err());
    }

    #[test]
    fn compositions_are_exhaustive_and_sorted() {
        for k in 0..7 {
            for n in 1..5 {
                let cs: Vec<_> = compositions(k, n).unwrap().collect();
                let expect = binomial((k + n - 1) as u64, (n - 1) as i64);
                assert_eq!(BigUint::from(cs.len()), expect);
                assert!(cs.windows(2).all(|w| w[0] < w[1]));
                assert!(cs.iter().all(|c| c.len() == n && c.iter().sum::<usize>() == k));
            }
        }
    }

    #[test]
    fn power_derivative_small_cases() {
        let c = rat(3, 2);
        let c1 = rat(-5, 7);
        let derivs = vec![c.clone(), c1.clone(), rat(0, 1), rat(0, 1)];
        assert_eq!(power_derivative_partition(&derivs, 1, 1).unwrap(), c1);
        // chain rule
        assert_eq!(
            power_derivative_partition(&derivs, 3, 1).unwrap(),
            int(3) * &c * &c * &c1
        );
        // (f^2)'' = 2 f f'' + 2 f'^2
        let d = vec![rat(2, 1), rat(1, 3), rat(-1, 4)];
        assert_eq!(
            power_derivative_partition(&d, 2, 2).unwrap(),
            int(2) * &d[0] * &d[2] + int(2) * &d[1] * &d[1]
        );
        assert!(power_derivative_partition(&d, 2, 0).is_err());
        assert!(power_derivative_partition(&d, 2, 3).is_err());
    }
}
