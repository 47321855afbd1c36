//! Property tests for the exact series ring: ring axioms and the inverse
//! laws hold at every truncation order, on randomized rational coefficients.

use heappoly::series::{normalize_phi, rat, Rat, TruncatedSeries};
use num_traits::{One, Zero};
use proptest::prelude::*;

const ORDER: usize = 7;

fn arb_rat() -> impl Strategy<Value = Rat> {
    (-40i64..=40, 1i64..=12).prop_map(|(n, d)| rat(n, d))
}

fn arb_series() -> impl Strategy<Value = TruncatedSeries> {
    proptest::collection::vec(arb_rat(), ORDER + 1).prop_map(|cs| {
        let coeffs: Vec<(usize, Rat)> = cs.into_iter().enumerate().collect();
        TruncatedSeries::from_coeffs(ORDER, &coeffs)
    })
}

/// Series with constant term 1.
fn arb_unit_series() -> impl Strategy<Value = TruncatedSeries> {
    arb_series().prop_map(|s| {
        let mut coeffs: Vec<(usize, Rat)> = (0..=ORDER).map(|d| (d, s.coeff(d).clone())).collect();
        coeffs[0].1 = Rat::one();
        TruncatedSeries::from_coeffs(ORDER, &coeffs)
    })
}

proptest! {
    #[test]
    fn addition_commutes(a in arb_series(), b in arb_series()) {
        prop_assert_eq!(&a + &b, &b + &a);
    }

    #[test]
    fn multiplication_commutes_and_associates(
        a in arb_series(), b in arb_series(), c in arb_series()
    ) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn multiplication_distributes(a in arb_series(), b in arb_series(), c in arb_series()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
    }

    #[test]
    fn division_inverts_multiplication(a in arb_series(), b in arb_unit_series()) {
        let q = a.div_series(&b).unwrap();
        prop_assert_eq!(&q * &b, a);
    }

    #[test]
    fn log_exp_inverse(a in arb_unit_series()) {
        let l = a.log().unwrap();
        prop_assert!(l.coeff(0).is_zero());
        prop_assert_eq!(l.exp().unwrap(), a);
    }

    #[test]
    fn exp_log_inverse(a in arb_series()) {
        let mut coeffs: Vec<(usize, Rat)> =
            (1..=ORDER).map(|d| (d, a.coeff(d).clone())).collect();
        coeffs.push((0, Rat::zero()));
        let zero_const = TruncatedSeries::from_coeffs(ORDER, &coeffs);
        let e = zero_const.exp().unwrap();
        prop_assert_eq!(e.log().unwrap(), zero_const);
    }

    #[test]
    fn nth_root_inverts_power(a in arb_unit_series(), r in 1u32..=5) {
        let root = a.nth_root(r as u64).unwrap();
        prop_assert_eq!(root.pow(r), a);
    }

    #[test]
    fn json_round_trip(a in arb_series()) {
        let j = a.to_json();
        prop_assert_eq!(TruncatedSeries::from_json(&j).unwrap(), a);
    }

    #[test]
    fn normalized_polynomials_have_unit_constant(degree in 0usize..=6, tail in proptest::collection::vec(arb_rat(), 6)) {
        let mut poly = vec![Rat::zero(); degree + 1];
        for (i, c) in tail.into_iter().enumerate() {
            if i < degree {
                poly[i] = c;
            }
        }
        poly[degree] = Rat::one();
        let s = normalize_phi(&poly, degree, ORDER).unwrap();
        prop_assert!(s.coeff(0).is_one());
    }
}
