use mbsum::arith::factorize;
use mbsum::mobius_bernoulli::{mb_higher_conv, mb_higher_kernel, mb_higher_partition, mb_number};
use mbsum::powersums::{psi_brute, psi_mobius_sum, psi_poly, psi_products_conv, psi_products_poly, Polynomial};
use mbsum::{int, Rational};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn routes_agree_on_random_inputs(n in 2u64..200, power in 1usize..5, k in 0usize..9) {
        let conv = mb_higher_conv(k, power, n).unwrap();
        prop_assert_eq!(&conv, &mb_higher_partition(k, power, n).unwrap());
        prop_assert_eq!(&conv, &mb_higher_kernel(k, power, n).unwrap());
    }

    #[test]
    fn only_the_radical_matters(n in 2u64..500, k in 0usize..12) {
        let rad = factorize(n).unwrap().radical();
        // M_0 = φ(n)/n is radical-invariant too
        prop_assert_eq!(mb_number(k, n).unwrap(), mb_number(k, rad).unwrap());
        prop_assert_eq!(psi_poly(k, n).unwrap(), psi_poly(k, rad).unwrap());
    }

    #[test]
    fn psi_matches_enumeration(n in 2u64..120, k in 0usize..7) {
        let value = psi_poly(k, n).unwrap().eval(&int(n));
        prop_assert_eq!(value, Rational::from_integer(psi_brute(k, n).unwrap()));
    }

    #[test]
    fn psi_matches_mobius_sum(n in 2u64..60, k in 0usize..7, mult in 1u64..4) {
        let x = n * mult;
        let value = psi_poly(k, n).unwrap().eval(&int(x));
        prop_assert_eq!(value, Rational::from_integer(psi_mobius_sum(k, n, x).unwrap()));
    }

    #[test]
    fn products_theorem_matches_convolution(n in 2u64..60, power in 1usize..4, k in 0usize..6) {
        prop_assert_eq!(psi_products_poly(k, power, n).unwrap(), psi_products_conv(k, power, n).unwrap());
    }

    #[test]
    fn polynomial_ring_laws(
        a in prop::collection::vec(-20i64..20, 0..6),
        b in prop::collection::vec(-20i64..20, 0..6),
        x in -10i64..10,
    ) {
        let p = Polynomial::new(a.into_iter().map(int).collect());
        let q = Polynomial::new(b.into_iter().map(int).collect());
        let x = int(x);
        prop_assert_eq!((&p * &q).eval(&x), p.eval(&x) * q.eval(&x));
        prop_assert_eq!((&p + &q).eval(&x), p.eval(&x) + q.eval(&x));
        prop_assert!((&p - &p).is_zero());
        // (pq)' = p'q + pq'
        prop_assert_eq!((&p * &q).derivative(), &(&p.derivative() * &q) + &(&p * &q.derivative()));
    }
}
