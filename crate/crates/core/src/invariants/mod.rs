//! Closed-form invariants and the series-level correspondences between
//! logarithmic, local, quiver and Gopakumar–Vafa invariants.
//!
//! Conventions: `r >= 1` is the weight of `P(1,1,r)`, `d >= 1` the curve
//! degree, `m = r + 2` the number of Kronecker arrows and `d(r+2)` the
//! tangency order `D·β`.

mod closed_form;
mod multicover;
mod prefactor;

pub use closed_form::{
    binomial_identity_check, c_ord, dt_kronecker_numeric, gw_local_p1, gw_selfnodal, gw_selfnodal_via_dt,
    log_local_factor, nef_local_factor, partition_sum_lhs, partition_sum_lhs_enumerated,
};
pub use multicover::{
    bar_from_omega_numeric, gv_from_gw_genus0, gw_from_gv_genus0, local_gv_from_bps, multicover_bar_from_omega,
    multicover_omega_from_bar, omega_from_bar_numeric,
};
pub use prefactor::{local_refined_coefficient, loglocal_prefactor_series, v_expansion, VSeries};

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{AlgebraError, LaurentPoly, RationalFunc};
use crate::combinat::CombinatError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantsError {
    #[error("{0}")]
    Domain(String),
    #[error("degrees must be exactly 1..=N; missing degree {missing}")]
    IndexGap { missing: u32 },
    #[error("multiple-cover inversion left a non-polynomial at degree {degree}: {value}")]
    NotPolynomial { degree: u32, value: String },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Combinat(#[from] CombinatError),
}

/// A bicyclic pair `(P(1,1,r) | D_r)` together with a degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct PairParams {
    r: u32,
    d: u32,
}

impl PairParams {
    /// Rejects `r < 1` (those cases are only reachable through scattering)
    /// and `d < 1`.
    pub fn new(r: i64, d: i64) -> Result<Self, InvariantsError> {
        if r < 1 {
            return Err(InvariantsError::Domain(format!(
                "r = {r} is outside the closed-form range r >= 1; use the scattering pipeline (`scatter --m {}`)",
                r + 2
            )));
        }
        if d < 1 {
            return Err(InvariantsError::Domain(format!("degree d = {d} must be >= 1")));
        }
        let r = u32::try_from(r).map_err(|_| InvariantsError::Domain(format!("r = {r} too large")))?;
        let d = u32::try_from(d).map_err(|_| InvariantsError::Domain(format!("d = {d} too large")))?;
        Ok(Self { r, d })
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    /// Number of Kronecker arrows.
    pub fn m(&self) -> u32 {
        self.r + 2
    }

    /// `D·β = d(r+2)`.
    pub fn tangency(&self) -> u64 {
        u64::from(self.d) * u64::from(self.r + 2)
    }
}

/// Refined and numerical BPS data attached to one degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BpsRecord {
    pub degree: u32,
    pub omega_bar: RationalFunc,
    pub omega: LaurentPoly,
    /// `n_{g,β}` indexed by genus.
    #[serde(serialize_with = "serialize_bigints")]
    pub gv: Vec<BigInt>,
}

fn serialize_bigints<S: serde::Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

pub(crate) fn sign(exponent: i64) -> i64 {
    if exponent.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}
