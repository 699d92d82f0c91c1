mod common;

use std::collections::BTreeMap;

use common::*;
use proptest::prelude::*;
use wallcross::algebra::{series_exp, series_log, GradedSeries, LaurentPoly, RationalFunc};
use wallcross::combinat::{plethystic_exp, plethystic_log};
use wallcross::invariants::{
    bar_from_omega_numeric, gv_from_gw_genus0, gw_from_gv_genus0, multicover_bar_from_omega, multicover_omega_from_bar,
    omega_from_bar_numeric,
};
use wallcross::qtorus::{gv_from_refined, QTorus, QTorusElement};

fn cfg() -> ProptestConfig {
    ProptestConfig { cases: 128, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(cfg())]

    #[test]
    fn laurent_ring_axioms(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn laurent_exact_division(a in laurent(), b in nonzero_laurent()) {
        prop_assert_eq!((&a * &b).div_exact(&b), Some(a));
    }

    #[test]
    fn ratfunc_field_axioms(a in ratfunc(), b in ratfunc(), c in ratfunc()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !a.is_zero() {
            prop_assert!((&a * &a.recip().unwrap()).is_one());
        }
    }

    #[test]
    fn ratfunc_canonical_form_matches_cross_equality(n in laurent(), d in nonzero_laurent(), k in nonzero_laurent()) {
        let a = RationalFunc::new(n.clone(), d.clone()).unwrap();
        let b = RationalFunc::new(&n * &k, &d * &k).unwrap();
        prop_assert!(a.cross_eq(&b));
        prop_assert_eq!(a, b);
    }

    #[test]
    fn substitute_power_is_a_ring_map(a in laurent(), b in laurent(), k in 1u32..4) {
        prop_assert_eq!((&a * &b).substitute_power(k), &a.substitute_power(k) * &b.substitute_power(k));
        prop_assert_eq!((&a + &b).substitute_power(k), &a.substitute_power(k) + &b.substitute_power(k));
    }

    #[test]
    fn palindromic_closed_under_operations(a in palindromic(), b in palindromic(), k in 1u32..4) {
        prop_assert!((&a * &b).is_palindromic());
        prop_assert!((&a + &b).is_palindromic());
        prop_assert!(a.substitute_power(k).is_palindromic());
    }

    #[test]
    fn series_exp_log_round_trip(s in series_no_constant(4)) {
        let e = series_exp(&s).unwrap();
        prop_assert_eq!(series_log(&e).unwrap(), s);
    }

    #[test]
    fn plethystic_round_trip(s in series_no_constant(4)) {
        let e = plethystic_exp(&s).unwrap();
        prop_assert_eq!(plethystic_log(&e).unwrap(), s);
    }

    #[test]
    fn plethystic_exp_is_multiplicative(a in series_no_constant(3), b in series_no_constant(3)) {
        let lhs = plethystic_exp(&a.add(&b)).unwrap();
        let rhs = plethystic_exp(&a).unwrap().mul(&plethystic_exp(&b).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn refined_multicover_round_trip(omega in prop::collection::vec(integer_palindromic(), 1..=8)) {
        let map: BTreeMap<u32, LaurentPoly> = (1u32..).zip(omega).collect();
        let bar = multicover_bar_from_omega(&map).unwrap();
        prop_assert_eq!(multicover_omega_from_bar(&bar).unwrap(), map);
    }

    #[test]
    fn numeric_transforms_round_trip(vals in prop::collection::vec(small_rational(), 1..=12)) {
        let map: BTreeMap<u32, Q> = (1u32..).zip(vals).collect();
        prop_assert_eq!(omega_from_bar_numeric(&bar_from_omega_numeric(&map).unwrap()).unwrap(), map.clone());
        prop_assert_eq!(gv_from_gw_genus0(&gw_from_gv_genus0(&map).unwrap()).unwrap(), map);
    }

    #[test]
    fn refined_multicover_specializes_at_one(omega in prop::collection::vec(integer_palindromic(), 1..=6)) {
        let map: BTreeMap<u32, LaurentPoly> = (1u32..).zip(omega).collect();
        let bar = multicover_bar_from_omega(&map).unwrap();
        let at_one: BTreeMap<u32, Q> = map.iter().map(|(k, p)| (*k, p.eval_at_one())).collect();
        let bar_at_one = bar_from_omega_numeric(&at_one).unwrap();
        for (k, b) in bar {
            prop_assert_eq!(b.eval_at_one(), Some(bar_at_one[&k].clone()));
        }
    }

    #[test]
    fn gv_basis_round_trip(ns in prop::collection::vec(-5i64..=5, 1..5)) {
        // Σ n_g (−1)^g (t − 1/t)^{2g}
        let base = LaurentPoly::from_ints(&[(2, 1), (0, -2), (-2, 1)]);
        let mut poly = LaurentPoly::zero();
        let mut power = LaurentPoly::one();
        for (g, n) in ns.iter().enumerate() {
            let s = if g % 2 == 0 { *n } else { -*n };
            poly = &poly + &power.scale(&q(s, 1));
            power = &power * &base;
        }
        let mut expect: Vec<i64> = ns.clone();
        while expect.last() == Some(&0) {
            expect.pop();
        }
        let got: Vec<i64> = gv_from_refined(&poly).unwrap().iter().map(|x| i64::try_from(x).unwrap()).collect();
        prop_assert_eq!(got, expect);
    }

    #[test]
    fn quantum_torus_associativity(
        a in prop::collection::vec((0u32..3, 0u32..3, -3i64..=3), 0..4),
        b in prop::collection::vec((0u32..3, 0u32..3, -3i64..=3), 0..4),
        c in prop::collection::vec((0u32..3, 0u32..3, -3i64..=3), 0..4),
        m in 1u32..5,
        twisted in any::<bool>(),
    ) {
        let torus = if twisted { QTorus::quiver(m) } else { QTorus::standard(m) };
        let build = |terms: &[(u32, u32, i64)]| {
            let mut e = QTorusElement::zero(torus, 5);
            for &(i, j, k) in terms {
                e.add_term((i, j), RationalFunc::constant(q(k, 1)));
            }
            e
        };
        let (a, b, c) = (build(&a), build(&b), build(&c));
        let l = a.qt_mul(&b).unwrap().qt_mul(&c).unwrap();
        let r = a.qt_mul(&b.qt_mul(&c).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }
}

#[test]
fn series_cutoff_is_respected() {
    let s = GradedSeries::monomial(3, 2, RationalFunc::one());
    assert!(s.mul(&s).is_zero());
}
