mod common;

use std::collections::BTreeMap;

use common::oracle;
use common::*;
use num_traits::{One, Zero};
use wallcross::algebra::{LaurentPoly, RationalFunc, TruncationPolicy};
use wallcross::combinat::quantum_integer;
use wallcross::invariants::{
    bar_from_omega_numeric, gw_selfnodal, gw_selfnodal_via_dt, local_gv_from_bps, log_local_factor, PairParams,
};
use wallcross::qtorus::{bps_records, ks_factorize, refined_report};
use wallcross::scattering::{complete_to_consistency, ScatteringDiagram};

/// exp of a power series given by coefficients `a_1, a_2, …`.
fn exp_series(a: &[Q], len: usize) -> Vec<Q> {
    let mut e = vec![Q::zero(); len];
    e[0] = Q::one();
    for n in 1..len {
        let mut acc = Q::zero();
        for k in 1..=n {
            if let Some(ak) = a.get(k - 1) {
                acc += q(k as i64, 1) * ak * &e[n - k];
            }
        }
        e[n] = acc / q(n as i64, 1);
    }
    e
}

#[test]
fn refined_classical_limit_rebuilds_central_wall() {
    for m in 1..=4u32 {
        let n = 3;
        let refined = ks_factorize(m, n).unwrap();
        let at_one: BTreeMap<u32, Q> =
            refined.diagonal().iter().map(|r| (r.dimension_vector.0, r.omega.eval_at_one())).collect();
        let bar = bar_from_omega_numeric(&at_one).unwrap();
        let a: Vec<Q> = bar
            .iter()
            .map(|(k, b)| b * q(oracle::pm(i64::from(m * k) + 1) * i64::from(*k), 1))
            .collect();
        let f = exp_series(&a, n as usize + 1);
        let diagram = complete_to_consistency(&ScatteringDiagram::local(m, 2 * n).unwrap(), 2 * n).unwrap();
        let central = diagram.ray((1, 1)).unwrap().function();
        assert_eq!(&f[..], &central[..=n as usize], "m = {m}");
    }
}

#[test]
fn every_extracted_vector_is_integral_and_palindromic() {
    let f = ks_factorize(3, 3).unwrap();
    for (v, om) in f.omega() {
        assert!(om.is_palindromic() && om.has_integer_coeffs(), "{v:?}: {om}");
    }
    assert!(f.omega().contains_key(&(2, 1)));
    assert_eq!(f.omega()[&(2, 1)], quantum_integer(3));
}

#[test]
fn refined_chain_divides_ks_data() {
    for m in [3u32, 4] {
        let diag = ks_factorize(m, 2).unwrap().diagonal();
        let omega: BTreeMap<u32, LaurentPoly> = diag.iter().map(|r| (r.dimension_vector.0, r.omega.clone())).collect();
        let local = local_gv_from_bps(&omega, m, TruncationPolicy::Strict).unwrap();
        for (d, om) in &omega {
            let expect = RationalFunc::new(om.clone(), quantum_integer(m * d)).unwrap();
            assert_eq!(local[d], expect);
            assert!(local[d].as_poly().is_some(), "m={m} d={d} not polynomial");
        }
    }
}

#[test]
fn bps_records_reproduce_genus_zero_local_numbers() {
    // n_{0,d} from the refined side equals the genus-0 GV number of local P^1.
    for (m, r) in [(3u32, 1i64), (4, 2)] {
        let recs = bps_records(m, 2).unwrap();
        let gw: BTreeMap<u32, Q> = (1..=2u32).map(|d| (d, oracle::local_p1(r, i64::from(d)))).collect();
        let gv = wallcross::invariants::gv_from_gw_genus0(&gw).unwrap();
        for rec in recs {
            assert_eq!(Q::from_integer(rec.gv[0].clone()), gv[&rec.degree], "m={m} d={}", rec.degree);
        }
    }
}

#[test]
fn refined_report_shape() {
    let rows = refined_report(3, 2).unwrap();
    let json = serde_json::to_value(&rows).unwrap();
    assert_eq!(json[0]["dimension_vector"], serde_json::json!([1, 1]));
    assert_eq!(json[0]["omega_at_1"], "3");
    assert_eq!(json[1]["omega_at_1"], "-6");
    assert_eq!(json[1]["gv_list"], serde_json::json!(["-1"]));
}

#[test]
fn closed_forms_on_grid() {
    for r in 1..=4i64 {
        for d in 1..=10i64 {
            let p = PairParams::new(r, d).unwrap();
            assert_eq!(gw_selfnodal(r, d).unwrap(), oracle::selfnodal(r, d));
            assert_eq!(gw_selfnodal_via_dt(r, d).unwrap(), oracle::selfnodal(r, d));
            assert_eq!(
                gw_selfnodal(r, d).unwrap(),
                log_local_factor(p.tangency()) * oracle::local_p1(r, d)
            );
        }
    }
}
