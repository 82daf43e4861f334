//! Deformations as a family: the algebras twisted by `γ∘σ` for an integer
//! cocycle `σ` and characters `γ` of its coefficient group, viewed as fibres
//! over the character torus.
//!
//! The exact side works in the pullback of the untwisted grading along the
//! central extension `H_σ → G` and evaluates pullback terms in a fibre. The
//! numeric side estimates fibre norms for rotation algebras two ways: by
//! clock and shift matrices over a grid of the dual torus, and by the
//! regular representation compressed to a finite box.

mod character;
mod norms;
mod pullback;
mod scan;

pub use character::Character;
pub use norms::{torus_fiber_norm, trunc_regular_norm, GroupAlgebraElement, RepConfig};
pub use pullback::{fiber_eval, pullback_mul, Fiber, PullbackContext, PullbackElement, PullbackTerm};
pub use scan::{format_sig, norm_scan, ScanRow, ScanTable, CSV_HEADER};

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::grp::GroupError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BundleError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("character has {found} angles, coefficient group has rank {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("pullbacks need an integer-valued cocycle")]
    NotIntegerValued,
    #[error("term lies over {term}, extension element lies over {ext}")]
    ProjectionMismatch { term: String, ext: String },
    #[error("unsupported shape: {0}")]
    UnsupportedShape(String),
    #[error("invalid configuration: {0}")]
    Config(String),
}
