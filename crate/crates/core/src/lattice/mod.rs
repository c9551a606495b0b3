//! Exact integral lattices.
//!
//! Everything here is computed over arbitrary-precision integers or exact
//! rationals; no floating point is involved in any invariant.

mod component;
mod gram;
mod matrix;
pub mod normal_form;

use num_bigint::BigInt;
use thiserror::Error;

pub use component::{Component, Decomposition, Sign, Term};
pub use gram::{DiscriminantGroup, GramLattice, LatticeInvariants, Signature};
pub use matrix::IntMatrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("rows have different lengths")]
    Ragged,
    #[error("Gram matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("Gram matrix is not symmetric")]
    NotSymmetric,
    #[error("expected a vector of length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("vector is zero")]
    ZeroVector,
    #[error("vector is not primitive (coordinate gcd {0})")]
    NotPrimitive(BigInt),
    #[error("form is degenerate")]
    Degenerate,
    #[error("transform is not unimodular (determinant {0})")]
    NotUnimodular(BigInt),
    #[error("invalid component: {0}")]
    InvalidComponent(String),
    #[error("lattice of rank {rank} exceeds the limit {limit}")]
    TooLarge { rank: BigInt, limit: BigInt },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("json error: {0}")]
    Json(String),
}
