//! Groups, 2-cocycles, coboundaries and central extensions.
//!
//! Cocycles on ℤ^k are usually given by a matrix `A`, either circle-valued
//! (`σ_A(m,n) = e^{2πi mᵗAn}`) or integer-valued (`τ_A(m,n) = mᵗAn`). Finite
//! groups carry explicit multiplication tables and cocycle tables.

mod cocycle;
mod extension;
mod group;

pub use cocycle::{
    class_normal_form, sample_triples, totally_skew_check, CheckSample, CoboundaryFn, CoeffGroup,
    Coefficient, Cocycle, CocycleKind, CocycleReport, SkewVerdict,
};
pub use extension::{ext_inv, ext_mul, section_cocycle, ExtElement};
pub use group::{lattice_box, FiniteGroup, Group, GroupElem};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GroupError {
    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),
    #[error("{elem} is not an element of {group}")]
    NotInGroup { elem: String, group: String },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("elements {0} and {1} do not commute")]
    NonCommuting(String, String),
    #[error("coboundary function must send the identity to 1, got phase {0}")]
    CoboundaryNotNormalized(String),
    #[error("coefficient mismatch: {0}")]
    Coefficients(String),
    #[error("invalid cocycle: {0}")]
    InvalidCocycle(String),
}
