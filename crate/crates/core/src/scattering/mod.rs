//! Two-wall local scattering diagrams over the scaled pairing
//! `⟨u, v⟩ = m·det(u, v)`, completed order by order.
//!
//! Coefficients of `x^a y^b` carry the implicit deformation monomial
//! `s₁^a s₂^b`, so truncating at total `(s₁, s₂)`-degree `N` is the same as
//! keeping `a + b <= N`.

mod biseries;
mod diagram;

pub use biseries::{Automorphism, BiSeries};
pub use diagram::{central_ray_omega, complete_to_consistency, wall_crossing_automorphism, Ray, ScatteringDiagram};

use thiserror::Error;

/// Largest order accepted by the completion.
pub const MAX_ORDER: u32 = 40;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScatterError {
    #[error("ray direction ({0}, {1}) is not primitive")]
    NonPrimitiveInput(i64, i64),
    #[error("order {order} exceeds the supported maximum {max}")]
    OrderOverflow { order: u32, max: u32 },
    #[error("degree ({d},{d}) needs a diagram of order >= {needed}, got {available}")]
    InsufficientOrder { d: u32, needed: u32, available: u32 },
    #[error("invalid wall: {0}")]
    InvalidWall(String),
    #[error("invalid initial diagram: {0}")]
    InvalidInitial(String),
    #[error("pairing determinant m must be >= 1")]
    ZeroPairing,
    #[error("discrepancy at order {order} could not be absorbed: {detail}")]
    Inconsistent { order: u32, detail: String },
}
