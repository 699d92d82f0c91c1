//! Refined wall-crossing in the quantum torus of the `m`-Kronecker quiver:
//! quantum dilogarithms, slope-ordered factorization, and the refined
//! divisibility and Gopakumar–Vafa extraction.

mod element;
mod factorize;
mod refined;

pub use element::{quantum_dilog, QTorus, QTorusElement};
pub use factorize::{ks_factorize, KsFactorization, RefinedDT, MAX_KS_ORDER};
pub use refined::{bps_records, divisibility_check, gv_from_refined, refined_report, RefinedRow};

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::invariants::InvariantsError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QtorusError {
    #[error("truncation mismatch: {left} vs {right}")]
    TruncationMismatch { left: u32, right: u32 },
    #[error("elements live in different quantum tori")]
    TorusMismatch,
    #[error("order {order} exceeds the supported maximum {max}")]
    OrderOverflow { order: u32, max: u32 },
    #[error("{0}")]
    Domain(String),
    #[error("element is not invertible: constant term must be 1")]
    NotInvertible,
    #[error("{omega} is not divisible by [{d_beta}]_q in integer powers of q")]
    NotDivisible { omega: String, d_beta: u32 },
    #[error("{0} is not palindromic")]
    NotPalindromic(String),
    #[error("{0} is not a combination of (q^(1/2) - q^(-1/2))^(2g)")]
    BasisResidue(String),
    #[error("non-integral Gopakumar-Vafa coefficient {0}")]
    NonIntegral(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Invariants(#[from] InvariantsError),
}
