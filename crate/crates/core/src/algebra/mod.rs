//! Exact arithmetic with the spanning elements `t_λ t_μ*` of a twisted
//! k-graph algebra.
//!
//! Elements are finite combinations of basis terms. Products follow the
//! twisted Cuntz–Krieger relations through the minimal common extensions
//! `Λ^min`, so the formal product is associative and agrees with the algebra
//! after imposing `q_v = Σ_{λ∈vΛ^n} t_λ t_λ*`. Equality modulo that relation
//! is decided by expanding every term to a common source degree.

mod analysis;
mod context;
mod element;
pub mod random;
mod verify;

pub use analysis::{fejer_defect, fejer_mean, fejer_weight, fourier_component, gauge, grade};
pub use context::TwistContext;
pub use element::{AlgebraElement, Term};
pub use verify::{
    ck_verify, fejer_check, grading_check, intocore_check, intocore_samples, matrix_units_check, VerifyReport,
};

use thiserror::Error;

use crate::grp::GroupError;
use crate::kgraph::KGraphError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlgebraError {
    #[error(transparent)]
    Graph(#[from] KGraphError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("graph fails validation: {0}")]
    InvalidGraph(String),
    #[error("functor takes values in {functor}, cocycle lives on {cocycle}")]
    GroupMismatch { functor: String, cocycle: String },
    #[error("cocycle fails its check: {0}")]
    InvalidCocycle(String),
    #[error("the twisting cocycle must be circle-valued")]
    NotCircleValued,
    #[error("term needs s(λ) = s(μ), got {0} and {1}")]
    SourceMismatch(String, String),
    #[error("exact arithmetic needs a cocycle with rational phases")]
    InexactCocycle,
    #[error("gauge parameter has length {found}, expected {k}")]
    GaugeLength { k: usize, found: usize },
}
