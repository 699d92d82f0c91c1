use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use super::{ks_factorize, QtorusError};
use crate::algebra::{format_rational, LaurentPoly};
use crate::combinat::quantum_integer;
use crate::invariants::{multicover_bar_from_omega, BpsRecord};

/// Exact division of a palindromic `omega` by `[D·β]_q`; the quotient must
/// live in integer powers of `q`.
pub fn divisibility_check(omega: &LaurentPoly, d_beta: u32) -> Result<LaurentPoly, QtorusError> {
    if d_beta == 0 {
        return Err(QtorusError::Domain("D·β must be >= 1".into()));
    }
    if !omega.is_palindromic() {
        return Err(QtorusError::NotPalindromic(omega.to_q_string()));
    }
    let not_divisible = || QtorusError::NotDivisible { omega: omega.to_q_string(), d_beta };
    let quotient = omega.div_exact(&quantum_integer(d_beta)).ok_or_else(not_divisible)?;
    if !quotient.in_integer_q_powers() {
        return Err(not_divisible());
    }
    Ok(quotient)
}

/// Coefficients `n_g` of `Σ_g n_g (−1)^g (q^{1/2} − q^{−1/2})^{2g}`.
pub fn gv_from_refined(quotient: &LaurentPoly) -> Result<Vec<BigInt>, QtorusError> {
    if quotient.is_zero() {
        return Ok(Vec::new());
    }
    if !quotient.is_palindromic() || !quotient.in_integer_q_powers() {
        return Err(QtorusError::BasisResidue(quotient.to_q_string()));
    }
    let top = quotient.max_exp().unwrap_or(0);
    let genus = (top / 2) as usize;
    let base = LaurentPoly::from_ints(&[(2, 1), (0, -2), (-2, 1)]);
    let mut rest = quotient.clone();
    let mut out = vec![BigInt::zero(); genus + 1];
    for g in (0..=genus).rev() {
        let lead = rest.coeff(2 * g as i64);
        if lead.is_zero() {
            continue;
        }
        if !lead.is_integer() {
            return Err(QtorusError::NonIntegral(format_rational(&lead)));
        }
        let sign = if g % 2 == 0 { lead.clone() } else { -lead.clone() };
        out[g] = sign.to_integer();
        let mut basis = LaurentPoly::one();
        for _ in 0..g {
            basis = &basis * &base;
        }
        rest = &rest - &basis.scale(&lead);
    }
    if !rest.is_zero() {
        return Err(QtorusError::BasisResidue(quotient.to_q_string()));
    }
    while out.len() > 1 && out.last().is_some_and(Zero::is_zero) {
        out.pop();
    }
    Ok(out)
}

/// Refined BPS records of `(P(1,1,m−2) | D)` from the Kronecker quiver,
/// degrees `1..=N`.
pub fn bps_records(m: u32, n: u32) -> Result<Vec<BpsRecord>, QtorusError> {
    let diag = ks_factorize(m, n)?.diagonal();
    let omega: BTreeMap<u32, LaurentPoly> = diag.iter().map(|r| (r.dimension_vector.0, r.omega.clone())).collect();
    let bar = multicover_bar_from_omega(&omega)?;
    let mut out = Vec::new();
    for (d, om) in omega {
        let quotient = divisibility_check(&om, m * d)?;
        out.push(BpsRecord { degree: d, omega_bar: bar[&d].clone(), omega: om, gv: gv_from_refined(&quotient)? });
    }
    Ok(out)
}

/// One line of the refined report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RefinedRow {
    pub dimension_vector: [u32; 2],
    pub omega: LaurentPoly,
    pub omega_at_1: String,
    pub quotient_by_quantum_number: Option<LaurentPoly>,
    pub gv_list: Option<Vec<String>>,
}

/// Diagonal refined invariants for `d = 1..=N` with quotients by `[md]_q`
/// and genus expansions where they exist.
pub fn refined_report(m: u32, n: u32) -> Result<Vec<RefinedRow>, QtorusError> {
    let diag = ks_factorize(m, n)?.diagonal();
    Ok(diag
        .into_iter()
        .map(|r| {
            let d = r.dimension_vector.0;
            let quotient = divisibility_check(&r.omega, m * d).ok();
            let gv = quotient
                .as_ref()
                .and_then(|q| gv_from_refined(q).ok())
                .map(|v| v.iter().map(ToString::to_string).collect());
            RefinedRow {
                dimension_vector: [d, d],
                omega_at_1: format_rational(&r.omega.eval_at_one()),
                omega: r.omega,
                quotient_by_quantum_number: quotient,
                gv_list: gv,
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    #[test]
    fn divisibility_examples() {
        assert_eq!(divisibility_check(&quantum_integer(3), 3).unwrap(), LaurentPoly::one());
        assert_eq!(divisibility_check(&LaurentPoly::zero(), 5).unwrap(), LaurentPoly::zero());
        // q^{3/2} + q^{-3/2} is an exact quotient in t but not in integer q-powers.
        assert_eq!(quantum_integer(6).div_exact(&quantum_integer(3)), Some(LaurentPoly::from_ints(&[(3, 1), (-3, 1)])));
        assert!(matches!(divisibility_check(&quantum_integer(6), 3), Err(QtorusError::NotDivisible { .. })));
        assert!(matches!(divisibility_check(&quantum_integer(5), 3), Err(QtorusError::NotDivisible { .. })));
        assert!(matches!(divisibility_check(&LaurentPoly::t_pow(2), 3), Err(QtorusError::NotPalindromic(_))));
    }

    #[test]
    fn gv_examples() {
        assert_eq!(gv_from_refined(&LaurentPoly::one()).unwrap(), vec![BigInt::from(1)]);
        let q = LaurentPoly::from_ints(&[(2, 1), (0, 1), (-2, 1)]);
        assert_eq!(gv_from_refined(&q).unwrap(), vec![BigInt::from(3), BigInt::from(-1)]);
        assert!(gv_from_refined(&LaurentPoly::zero()).unwrap().is_empty());
        assert!(matches!(gv_from_refined(&LaurentPoly::t_pow(2)), Err(QtorusError::BasisResidue(_))));
        assert!(matches!(gv_from_refined(&LaurentPoly::from_ints(&[(1, 1), (-1, 1)])), Err(QtorusError::BasisResidue(_))));
    }

    #[test]
    fn records_for_m3() {
        let recs = bps_records(3, 2).unwrap();
        assert_eq!(recs[0].gv, vec![BigInt::from(1)]);
        assert_eq!(recs[1].gv, vec![BigInt::from(-1)]);
        assert_eq!(recs[1].omega_bar.eval_at_one(), Some(int(-6) + crate::algebra::rat(3, 4)));
    }
}
