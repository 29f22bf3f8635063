//! Property sweeps behind `mbsum verify`.
//!
//! Each property compares two independent computations over a parameter grid
//! and records the first counterexample in grid order. Grids are evaluated
//! with rayon; results are assembled by index so reports are identical for
//! any thread count.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{
    binomial, compositions, divisors, factorize, moebius, partitions, power_derivative_partition,
    totient,
};
use crate::bernoulli::{
    bernoulli, bernoulli_explicit, higher_bernoulli, higher_bernoulli_conv, stirling2,
    stirling_identity_check,
};
use crate::mobius_bernoulli::{
    mb_higher_conv, mb_higher_kernel_table, mb_higher_partition, mb_higher_primepower, mb_number,
    mb_number_series, partition_terms,
};
use crate::powersums::{
    derivative_identity_check, psi_brute, psi_eval, psi_mobius_sum, psi_poly, psi_products_brute,
    psi_products_conv, psi_products_poly,
};
use crate::series::{mb_gf, psi_gf, psi_gf_direct, t_over_expm1, TruncatedSeries};
use crate::{format_rational, int, rat, Error, Rational, Result};

const SEED: u64 = 0x6d62_7375_6d00_0001;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    All,
    Arith,
    Series,
    Bernoulli,
    Mb,
    Psi,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Arith => "arith",
            Suite::Series => "series",
            Suite::Bernoulli => "bernoulli",
            Suite::Mb => "mb",
            Suite::Psi => "psi",
        }
    }

    fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "all" => Suite::All,
            "arith" => Suite::Arith,
            "series" => Suite::Series,
            "bernoulli" => Suite::Bernoulli,
            "mb" => Suite::Mb,
            "psi" => Suite::Psi,
            _ => return Err(Error::domain("suite", "all|arith|series|bernoulli|mb|psi", s)),
        })
    }
}

/// Grid bounds for the sweeps that scale with the user's request. The other
/// properties run on fixed grids.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Bounds {
    pub max_n: u64,
    pub max_k: usize,
    #[serde(rename = "max_N")]
    pub max_power: usize,
    pub order: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_n: 30,
            max_k: 10,
            max_power: 5,
            order: 16,
        }
    }
}

impl Bounds {
    pub const MAX_N_CAP: u64 = 100;
    pub const MAX_K_CAP: usize = 20;
    pub const MAX_POWER_CAP: usize = 8;
    pub const ORDER_CAP: usize = 40;

    pub fn validate(&self) -> Result<()> {
        if !(2..=Self::MAX_N_CAP).contains(&self.max_n) {
            return Err(Error::domain("max-n", "in [2, 100]", self.max_n));
        }
        if self.max_k > Self::MAX_K_CAP {
            return Err(Error::domain("max-k", "at most 20", self.max_k));
        }
        if !(1..=Self::MAX_POWER_CAP).contains(&self.max_power) {
            return Err(Error::domain("max-N", "in [1, 8]", self.max_power));
        }
        if self.order < self.max_k || self.order > Self::ORDER_CAP {
            return Err(Error::domain("order", "in [max-k, 40]", self.order));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub params: BTreeMap<String, String>,
    pub left: String,
    pub right: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub suite: &'static str,
    pub property: &'static str,
    /// What `left` and `right` of a counterexample were computed by.
    pub compares: [&'static str; 2],
    pub cases: u64,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

/// `M_2^2(6)` under the two readings of the leading `φ(n)^(N-j)` factor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Erratum {
    pub label: &'static str,
    pub n: u64,
    #[serde(rename = "N")]
    pub power: usize,
    pub k: usize,
    pub generating_function_value: String,
    pub phi_table_value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub suite: &'static str,
    pub bounds: Bounds,
    pub passed: bool,
    pub properties: Vec<PropertyReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub erratum: Option<Erratum>,
}

impl Report {
    pub fn failures(&self) -> impl Iterator<Item = &PropertyReport> {
        self.properties.iter().filter(|p| !p.passed)
    }
}

/// The documented discrepancy: the generating function gives
/// `M_2^2(6) = 2/9`, while the table row `N φ(n)^(N-1) M_2(n)` gives `4/3`.
pub fn erratum() -> Result<Erratum> {
    let (n, power, k) = (6u64, 2usize, 2usize);
    let gf = mb_higher_conv(k, power, n)?;
    let phi = int(totient(n)?);
    let table = int(power as u64) * num_traits::pow(phi, power - 1) * mb_number(2, n)?;
    Ok(Erratum {
        label: "phi_normalization_discrepancy",
        n,
        power,
        k,
        generating_function_value: format_rational(&gf),
        phi_table_value: format_rational(&table),
    })
}

struct Mismatch {
    extra: Vec<(&'static str, String)>,
    left: String,
    right: String,
}

impl Mismatch {
    fn at(mut self, key: &'static str, value: impl Display) -> Self {
        self.extra.push((key, value.to_string()));
        self
    }
}

type Check = Result<Option<Mismatch>>;
type Section<'a> = (Suite, &'a dyn Fn(&mut Ctx<'_>));

fn differ(left: impl Display, right: impl Display) -> Mismatch {
    Mismatch {
        extra: Vec::new(),
        left: left.to_string(),
        right: right.to_string(),
    }
}

fn same<T: PartialEq + Display>(left: T, right: T) -> Option<Mismatch> {
    (left != right).then(|| differ(left, right))
}

fn holds(ok: bool) -> Option<Mismatch> {
    (!ok).then(|| differ("false", "true"))
}

/// Runs `check` over `cases` in parallel and keeps the first failure in case order.
fn sweep<T: Sync>(
    cases: &[T],
    describe: impl Fn(&T) -> Vec<(&'static str, String)> + Sync,
    check: impl Fn(&T) -> Check + Sync,
) -> (u64, Option<Counterexample>) {
    let outcomes: Vec<Option<Counterexample>> = cases
        .par_iter()
        .map(|case| {
            let found = match check(case) {
                Ok(None) => return None,
                Ok(Some(m)) => m,
                Err(e) => differ("error", e),
            };
            let mut params: BTreeMap<String, String> = describe(case)
                .into_iter()
                .map(|(k, v)| (k.to_string(), v))
                .collect();
            for (k, v) in found.extra {
                params.insert(k.to_string(), v);
            }
            Some(Counterexample {
                params,
                left: found.left,
                right: found.right,
            })
        })
        .collect();
    (cases.len() as u64, outcomes.into_iter().flatten().next())
}

struct Ctx<'a> {
    suite: &'static str,
    out: &'a mut Vec<PropertyReport>,
}

impl Ctx<'_> {
    fn record(&mut self, property: &'static str, compares: [&'static str; 2], result: (u64, Option<Counterexample>)) {
        let (cases, counterexample) = result;
        self.out.push(PropertyReport {
            suite: self.suite,
            property,
            compares,
            cases,
            passed: counterexample.is_none(),
            counterexample,
        });
    }
}

fn n_only(&n: &u64) -> Vec<(&'static str, String)> {
    vec![("n", n.to_string())]
}

fn k_only(&k: &usize) -> Vec<(&'static str, String)> {
    vec![("k", k.to_string())]
}

fn nk(&(n, k): &(u64, usize)) -> Vec<(&'static str, String)> {
    vec![("n", n.to_string()), ("k", k.to_string())]
}

fn n_power(&(n, p): &(u64, usize)) -> Vec<(&'static str, String)> {
    vec![("n", n.to_string()), ("N", p.to_string())]
}

fn n_power_k(&(n, p, k): &(u64, usize, usize)) -> Vec<(&'static str, String)> {
    vec![("n", n.to_string()), ("N", p.to_string()), ("k", k.to_string())]
}

fn grid2<A: Copy, B: Copy>(a: impl IntoIterator<Item = A>, b: impl IntoIterator<Item = B> + Clone) -> Vec<(A, B)> {
    a.into_iter()
        .flat_map(|x| b.clone().into_iter().map(move |y| (x, y)))
        .collect()
}

fn grid3<A: Copy, B: Copy, C: Copy>(
    a: impl IntoIterator<Item = A>,
    b: impl IntoIterator<Item = B> + Clone,
    c: impl IntoIterator<Item = C> + Clone,
) -> Vec<(A, B, C)> {
    a.into_iter()
        .flat_map(|x| {
            let c = c.clone();
            b.clone()
                .into_iter()
                .flat_map(move |y| c.clone().into_iter().map(move |z| (x, y, z)))
        })
        .collect()
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.random_range(-12i64..=12), rng.random_range(1i64..=6))
}

/// Independent partition counts from Euler's pentagonal-number recurrence.
fn partition_counts(max: usize) -> Vec<u64> {
    let mut p = vec![0i64; max + 1];
    p[0] = 1;
    for n in 1..=max {
        let mut acc = 0i64;
        for j in 1.. {
            let g1 = j * (3 * j - 1) / 2;
            if g1 > n {
                break;
            }
            let sign = if j % 2 == 1 { 1 } else { -1 };
            acc += sign * p[n - g1];
            let g2 = j * (3 * j + 1) / 2;
            if g2 <= n {
                acc += sign * p[n - g2];
            }
        }
        p[n] = acc;
    }
    p.into_iter().map(|v| v as u64).collect()
}

fn arith_suite(ctx: &mut Ctx<'_>) {
    let ns: Vec<u64> = (1..=200).collect();
    ctx.record(
        "mobius_sum_is_kronecker_delta",
        ["sum_mu", "delta_1n"],
        sweep(&ns, n_only, |&n| {
            let s: i64 = divisors(n)?.into_iter().map(|d| moebius(d).map(i64::from)).sum::<Result<_>>()?;
            Ok(same(s, i64::from(n == 1)))
        }),
    );
    ctx.record(
        "mobius_over_d_is_totient_ratio",
        ["sum_mu_over_d", "phi_over_n"],
        sweep(&ns, n_only, |&n| {
            let s: Rational = divisors(n)?
                .into_iter()
                .map(|d| Ok(rat(moebius(d)? as i64, d as i64)))
                .sum::<Result<_>>()?;
            Ok(same(s, rat(totient(n)? as i64, n as i64)))
        }),
    );
    ctx.record(
        "totient_product_formula",
        ["phi", "n_prod_1_minus_1_over_p"],
        sweep(&ns, n_only, |&n| {
            let prod = factorize(n)?
                .primes()
                .fold(int(n), |acc, p| acc * (Rational::one() - rat(1, p as i64)));
            Ok(same(int(totient(n)?), prod))
        }),
    );
    ctx.record(
        "totient_gcd_count",
        ["phi", "gcd_count"],
        sweep(&ns, n_only, |&n| {
            let count = (1..=n).filter(|&m| num_integer::gcd(m, n) == 1).count() as u64;
            Ok(same(totient(n)?, count))
        }),
    );
    let counts = partition_counts(30);
    let ks: Vec<usize> = (1..=30).collect();
    ctx.record(
        "partition_count_recurrence",
        ["enumerated", "pentagonal"],
        sweep(&ks, k_only, |&k| Ok(same(partitions(k)?.len() as u64, counts[k]))),
    );
    let kn = grid2(0..=10usize, 1..=5usize);
    ctx.record(
        "composition_count",
        ["enumerated", "binomial"],
        sweep(
            &kn,
            |&(k, p)| vec![("k", k.to_string()), ("N", p.to_string())],
            |&(k, p)| {
                let count = compositions(k, p)?.count();
                Ok(same(BigInt::from(count), BigInt::from(binomial((k + p - 1) as u64, p as i64 - 1))))
            },
        ),
    );
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let vectors: Vec<(usize, Vec<Rational>)> = (0..40)
        .map(|i| (i, (0..=8).map(|_| random_rational(&mut rng)).collect()))
        .collect();
    ctx.record(
        "faa_di_bruno_vs_series_power",
        ["partition_formula", "series_power"],
        sweep(
            &vectors,
            |(i, _)| vec![("sample", i.to_string())],
            |(_, derivs)| {
                let f = TruncatedSeries::from_fn(8, |i| {
                    &derivs[i] / int(crate::arith::factorial(i as u64))
                });
                for power in 1..=5 {
                    let fp = f.pow(power as u32);
                    for k in 1..=8 {
                        let a = power_derivative_partition(derivs, power, k)?;
                        let b = fp.egf_coeff(k)?;
                        if a != b {
                            return Ok(Some(differ(a, b).at("N", power).at("k", k)));
                        }
                    }
                }
                Ok(None)
            },
        ),
    );
}

fn series_suite(ctx: &mut Ctx<'_>, bounds: &Bounds) {
    let order = bounds.order;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0x5e);
    let triples: Vec<(usize, [TruncatedSeries; 3])> = (0..20)
        .map(|i| {
            let mut s = || TruncatedSeries::from_fn(8, |_| random_rational(&mut rng));
            (i, [s(), s(), s()])
        })
        .collect();
    ctx.record(
        "mul_commutative_associative",
        ["left", "right"],
        sweep(
            &triples,
            |(i, _)| vec![("sample", i.to_string())],
            |(_, [a, b, c])| {
                let ab = a.mul(b)?;
                if ab != b.mul(a)? {
                    return Ok(Some(differ("a*b", "b*a")));
                }
                Ok(holds(ab.mul(c)? == a.mul(&b.mul(c)?)?))
            },
        ),
    );
    ctx.record(
        "inverse_is_reciprocal",
        ["a*inverse(a)", "1"],
        sweep(
            &triples,
            |(i, _)| vec![("sample", i.to_string())],
            |(_, [a, _, _])| {
                if a.coeffs()[0].is_zero() {
                    return Ok(None);
                }
                Ok(holds(a.mul(&a.inverse()?)? == TruncatedSeries::one(a.order())))
            },
        ),
    );
    let ns: Vec<u64> = (2..=bounds.max_n).collect();
    ctx.record(
        "mb_gf_odd_coefficients_vanish",
        ["coefficient", "0"],
        sweep(&ns, n_only, |&n| {
            let s = mb_gf(n, order)?;
            for k in (1..=order).step_by(2) {
                if !s.coeffs()[k].is_zero() {
                    return Ok(Some(differ(&s.coeffs()[k], 0).at("k", k)));
                }
            }
            Ok(None)
        }),
    );
    let xs = [rat(1, 1), rat(5, 2), rat(7, 1)];
    let cases = grid2(2..=12u64, 0..xs.len());
    ctx.record(
        "psi_gf_routes_agree",
        ["definition", "factorized"],
        sweep(
            &cases,
            |&(n, i)| vec![("n", n.to_string()), ("x", format_rational(&xs[i]))],
            |&(n, i)| {
                let a = psi_gf_direct(&xs[i], n, order)?;
                let b = psi_gf(&xs[i], n, order)?;
                for k in 0..=order {
                    if a.coeffs()[k] != b.coeffs()[k] {
                        return Ok(Some(differ(&a.coeffs()[k], &b.coeffs()[k]).at("k", k)));
                    }
                }
                Ok(None)
            },
        ),
    );
}

fn bernoulli_suite(ctx: &mut Ctx<'_>, bounds: &Bounds) {
    let odd: Vec<usize> = (1..=10).map(|k| 2 * k + 1).collect();
    ctx.record(
        "odd_bernoulli_vanish",
        ["B_k", "0"],
        sweep(&odd, k_only, |&k| Ok(same(bernoulli(k), Rational::zero()))),
    );
    let ks: Vec<usize> = (0..=20).collect();
    ctx.record(
        "recurrence_vs_explicit",
        ["recurrence", "explicit_double_sum"],
        sweep(&ks, k_only, |&k| Ok(same(bernoulli(k), bernoulli_explicit(k)))),
    );
    let jm = grid2(0..=12usize, 0..=6usize);
    ctx.record(
        "higher_bernoulli_vs_series",
        ["srivastava_todorov", "series_power"],
        sweep(
            &jm,
            |&(j, m)| vec![("j", j.to_string()), ("m", m.to_string())],
            |&(j, m)| Ok(same(higher_bernoulli(j, m), higher_bernoulli_conv(j, m, 12)?)),
        ),
    );
    let ds: Vec<u64> = (1..=6).collect();
    ctx.record(
        "t_over_expm1_scaling",
        ["series", "B_k d^(k-1)"],
        sweep(
            &ds,
            |&d| vec![("d", d.to_string())],
            |&d| {
                let s = t_over_expm1(d, bounds.order);
                for k in 0..=bounds.order {
                    let expect = bernoulli(k) * int(d).pow(k as i32 - 1);
                    let got = s.egf_coeff(k)?;
                    if got != expect {
                        return Ok(Some(differ(got, expect).at("k", k)));
                    }
                }
                Ok(None)
            },
        ),
    );
    // Bell numbers via the Bell triangle
    let mut bell = vec![BigInt::one()];
    let mut row = vec![BigInt::one()];
    for _ in 0..12 {
        let mut next = vec![row.last().unwrap().clone()];
        for v in &row {
            let x = next.last().unwrap() + v;
            next.push(x);
        }
        bell.push(next[0].clone());
        row = next;
    }
    let ls: Vec<usize> = (0..=12).collect();
    ctx.record(
        "stirling_row_sums_are_bell",
        ["row_sum", "bell_triangle"],
        sweep(
            &ls,
            |&l| vec![("l", l.to_string())],
            |&l| {
                let sum: BigInt = (0..=l).map(|m| BigInt::from(stirling2(l, m))).sum();
                Ok(same(sum, bell[l].clone()))
            },
        ),
    );
    let xs = [rat(1, 1), rat(5, 2)];
    let cases = grid2(0..xs.len(), 1..=4usize);
    ctx.record(
        "stirling_series_identity",
        ["series_power", "stirling_formula"],
        sweep(
            &cases,
            |&(i, p)| vec![("x", format_rational(&xs[i])), ("N", p.to_string()), ("order", "10".into())],
            |&(i, p)| Ok(holds(stirling_identity_check(&xs[i], p, 10))),
        ),
    );
}

fn mb_suite(ctx: &mut Ctx<'_>, bounds: &Bounds) {
    let Bounds {
        max_n,
        max_k,
        max_power,
        order,
    } = *bounds;
    let cases = grid2(1..=max_n, 0..=order);
    ctx.record(
        "closed_form_vs_series",
        ["closed_form", "series"],
        sweep(&cases, nk, |&(n, k)| Ok(same(mb_number(k, n)?, mb_number_series(k, n, order)?))),
    );

    let cells = grid2(2..=max_n, 1..=max_power);
    ctx.record(
        "four_route_agreement",
        ["conv", "other_route"],
        sweep(&cells, n_power, |&(n, power)| {
            let kernel = mb_higher_kernel_table(max_k, power, n)?;
            let pp = factorize(n)?.as_prime_power();
            for (k, kern) in kernel.iter().enumerate() {
                let conv = mb_higher_conv(k, power, n)?;
                let part = mb_higher_partition(k, power, n)?;
                if conv != part {
                    return Ok(Some(differ(conv, part).at("k", k).at("route", "partition")));
                }
                if &conv != kern {
                    return Ok(Some(differ(conv, kern).at("k", k).at("route", "kernel")));
                }
                if let Some((p, s)) = pp {
                    let v = mb_higher_primepower(k, power, p, s)?;
                    if conv != v {
                        return Ok(Some(differ(conv, v).at("k", k).at("route", "primepower")));
                    }
                }
            }
            Ok(None)
        }),
    );

    let odd_cells = grid3(2..=max_n, 1..=max_power, 1..=5usize);
    ctx.record(
        "odd_index_vanishing",
        ["route_value", "0"],
        sweep(&odd_cells, n_power_k, |&(n, power, half)| {
            let k = 2 * half - 1;
            let mut values = vec![
                ("conv", mb_higher_conv(k, power, n)?),
                ("partition", mb_higher_partition(k, power, n)?),
                ("kernel", mb_higher_kernel_table(k, power, n)?.swap_remove(k)),
            ];
            if let Some((p, s)) = factorize(n)?.as_prime_power() {
                values.push(("primepower", mb_higher_primepower(k, power, p, s)?));
            }
            Ok(values
                .into_iter()
                .find(|(_, v)| !v.is_zero())
                .map(|(route, v)| differ(v, 0).at("route", route).at("index", k)))
        }),
    );

    let series_cells = grid2(1..=12u64, 1..=4usize);
    let series_k = max_k.min(order);
    ctx.record(
        "series_power_vs_convolution",
        ["series_power", "conv"],
        sweep(&series_cells, n_power, |&(n, power)| {
            let s = mb_gf(n, order)?.pow(power as u32);
            for k in 0..=series_k {
                let a = s.egf_coeff(k)?;
                let b = mb_higher_conv(k, power, n)?;
                if a != b {
                    return Ok(Some(differ(a, b).at("k", k)));
                }
            }
            Ok(None)
        }),
    );

    ctx.record(
        "table_rows_with_m0",
        ["conv", "row_formula"],
        sweep(&cells, n_power, |&(n, power)| {
            let m0 = mb_number(0, n)?;
            let row0 = num_traits::pow(m0.clone(), power);
            let v0 = mb_higher_conv(0, power, n)?;
            if v0 != row0 {
                return Ok(Some(differ(v0, row0).at("k", 0)));
            }
            let row2 = int(power as u64) * num_traits::pow(m0, power - 1) * mb_number(2, n)?;
            Ok(same(mb_higher_conv(2, power, n)?, row2).map(|m| m.at("k", 2)))
        }),
    );

    let rad_cells = grid3(1..=100u64, 1..=3usize, 0..=max_k);
    ctx.record(
        "radical_invariance",
        ["M(n)", "M(rad n)"],
        sweep(&rad_cells, n_power_k, |&(n, power, k)| {
            let rad = factorize(n)?.radical();
            Ok(same(mb_higher_conv(k, power, n)?, mb_higher_conv(k, power, rad)?))
        }),
    );

    let powers: Vec<usize> = (1..=8).collect();
    ctx.record(
        "worked_example_m8",
        ["partition_terms", "expected"],
        sweep(
            &powers,
            |&p| vec![("n", "6".into()), ("N", p.to_string()), ("k", "8".into())],
            |&power| {
                let expected: BTreeMap<Vec<usize>, u32> = [
                    (vec![8], 1),
                    (vec![6, 2], 28),
                    (vec![4, 4], 35),
                    (vec![4, 2, 2], 210),
                    (vec![2, 2, 2, 2], 105),
                ]
                .into_iter()
                .filter(|(parts, _)| parts.len() <= power)
                .collect();
                let terms = partition_terms(8, power, 6)?;
                let got: BTreeMap<Vec<usize>, u32> = terms
                    .iter()
                    .map(|t| (t.partition.parts().to_vec(), u32::try_from(&t.coefficient).unwrap_or(0)))
                    .collect();
                if got != expected {
                    return Ok(Some(differ(format!("{got:?}"), format!("{expected:?}"))));
                }
                let sum: Rational = terms.into_iter().map(|t| t.value).sum();
                Ok(same(sum, mb_higher_conv(8, power, 6)?))
            },
        ),
    );
}

fn psi_suite(ctx: &mut Ctx<'_>, bounds: &Bounds) {
    let Bounds {
        max_n,
        max_k,
        order,
        ..
    } = *bounds;
    let anchor = grid2(2..=50u64, 0..=8usize);
    ctx.record(
        "coprime_power_sum_anchor",
        ["psi_eval(k,n,n)", "brute_force"],
        sweep(&anchor, nk, |&(n, k)| {
            Ok(same(psi_eval(k, n, &int(n))?, Rational::from_integer(psi_brute(k, n)?)))
        }),
    );
    let mobius_cells = grid2(1..=30u64, 0..=8usize);
    ctx.record(
        "mobius_sum_form",
        ["psi_eval", "sum_mu_d^k_S_k(x/d)"],
        sweep(&mobius_cells, nk, |&(n, k)| {
            let rad = factorize(n)?.radical();
            for x in [rad, 2 * rad, n] {
                let a = psi_eval(k, n, &int(x))?;
                let b = Rational::from_integer(psi_mobius_sum(k, n, x)?);
                if a != b {
                    return Ok(Some(differ(a, b).at("x", x)));
                }
            }
            Ok(None)
        }),
    );
    let theorem = grid3(2..=20u64, 1..=4usize, 0..=6usize);
    ctx.record(
        "theorem_vs_definition",
        ["stirling_theorem", "convolution"],
        sweep(&theorem, n_power_k, |&(n, power, k)| {
            Ok(same(psi_products_poly(k, power, n)?, psi_products_conv(k, power, n)?))
        }),
    );
    let integer = grid3(2..=12u64, 1..=3usize, 0..=6usize);
    ctx.record(
        "integer_anchor",
        ["convolution_at_x=n", "tuple_brute_force"],
        sweep(&integer, n_power_k, |&(n, power, k)| {
            let v = psi_products_conv(k, power, n)?.eval(&int(n));
            Ok(same(v, Rational::from_integer(psi_products_brute(k, power, n)?)))
        }),
    );
    let shape = grid2(1..=max_n, 0..=max_k);
    ctx.record(
        "zero_constant_term",
        ["constant_term", "0"],
        sweep(&shape, nk, |&(n, k)| {
            let c = psi_poly(k, n)?.coeff(0);
            if !c.is_zero() {
                return Ok(Some(differ(c, 0)));
            }
            if n <= 12 && k <= 6 {
                for power in 1..=3 {
                    let c = psi_products_conv(k, power, n)?.coeff(0);
                    if !c.is_zero() {
                        return Ok(Some(differ(c, 0).at("N", power)));
                    }
                }
            }
            Ok(None)
        }),
    );
    let lead_cells = grid2(2..=max_n, 0..=max_k);
    ctx.record(
        "leading_coefficient",
        ["leading", "phi(n)/n/(k+1)"],
        sweep(&lead_cells, nk, |&(n, k)| {
            let p = psi_poly(k, n)?;
            if p.degree() != Some(k + 1) {
                return Ok(Some(differ(format!("{:?}", p.degree()), k + 1).at("what", "degree")));
            }
            let expect = mb_number(0, n)? / int(k as u64 + 1);
            Ok(same(p.leading_coefficient().cloned().unwrap_or_default(), expect))
        }),
    );
    let deriv = grid2(1..=max_n, 1..=max_k);
    ctx.record(
        "derivative_identity_check",
        ["d/dx psi_k", "k psi_(k-1) + (-1)^k M_k"],
        sweep(&deriv, nk, |&(n, k)| Ok(holds(derivative_identity_check(k, n)?))),
    );
    let xs = [rat(1, 1), rat(5, 2)];
    let series_cells = grid3(1..=12u64, 1..=4usize, 0..xs.len());
    let series_k = 10.min(order);
    ctx.record(
        "series_anchor",
        ["series_power", "convolution"],
        sweep(
            &series_cells,
            |&(n, p, i)| {
                vec![
                    ("n", n.to_string()),
                    ("N", p.to_string()),
                    ("x", format_rational(&xs[i])),
                ]
            },
            |&(n, power, i)| {
                let s = psi_gf(&xs[i], n, order)?.pow(power as u32);
                for k in 0..=series_k {
                    let a = s.egf_coeff(k)?;
                    let b = psi_products_conv(k, power, n)?.eval(&xs[i]);
                    if a != b {
                        return Ok(Some(differ(a, b).at("k", k)));
                    }
                }
                Ok(None)
            },
        ),
    );
}

/// Runs a suite. `jobs == 0` uses rayon's default thread count.
pub fn run(suite: Suite, bounds: &Bounds, jobs: usize) -> Result<Report> {
    bounds.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::domain("jobs", "a usable thread count", e))?;
    pool.install(|| {
        let mut properties = Vec::new();
        let sections: [Section<'_>; 5] = [
            (Suite::Arith, &|c| arith_suite(c)),
            (Suite::Series, &|c| series_suite(c, bounds)),
            (Suite::Bernoulli, &|c| bernoulli_suite(c, bounds)),
            (Suite::Mb, &|c| mb_suite(c, bounds)),
            (Suite::Psi, &|c| psi_suite(c, bounds)),
        ];
        for (section, body) in sections {
            if suite.includes(section) {
                body(&mut Ctx {
                    suite: section.name(),
                    out: &mut properties,
                });
            }
        }
        let erratum = if suite.includes(Suite::Mb) {
            Some(erratum()?)
        } else {
            None
        };
        Ok(Report {
            suite: suite.name(),
            bounds: *bounds,
            passed: properties.iter().all(|p| p.passed),
            properties,
            erratum,
        })
    })
}
