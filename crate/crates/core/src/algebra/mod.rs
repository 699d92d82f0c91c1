//! Exact scalar, Laurent polynomial, rational function and truncated series
//! arithmetic.
//!
//! Every value in this module is immutable once built and every operation is
//! a pure function, so values can be shared freely across threads.
//!
//! The formal variable of [`LaurentPoly`] and [`RationalFunc`] is `t = q^{1/2}`:
//! exponents are integers in `t`, i.e. half-integers in `q`.

mod laurent;
mod ratfunc;
mod rational;
mod series;

pub use laurent::LaurentPoly;
pub use ratfunc::RationalFunc;
pub use rational::{format_rational, int, parse_rational, rat, Rational};
pub use series::{series_exp, series_log, GradedSeries, TruncationPolicy};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("bad constant term: expected {expected}, found {found}")]
    BadConstantTerm { expected: &'static str, found: String },
    #[error("cutoff mismatch: {left} vs {right}")]
    CutoffMismatch { left: u32, right: u32 },
    #[error("cannot parse rational {0:?}")]
    ParseRational(String),
    #[error("invalid serialized form: {0}")]
    Format(String),
}
