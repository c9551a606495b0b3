//! Middle Hodge numbers, signature data and primitive cohomology lattices of
//! smooth even-dimensional complete intersections in projective space.
//!
//! The crate is organised bottom-up:
//!
//! * [`hodge`]: truncated bivariate generating series for primitive Hodge
//!   numbers, plus an independent Euler-characteristic oracle.
//! * [`lattice`]: exact integral lattice engine (Gram matrices, determinant,
//!   signature, parity, discriminant group, orthogonal complements).
//! * [`decompose`]: signature data, parity class and the orthogonal
//!   decomposition of the primitive lattice, with explicit witness vectors.
//! * [`oracle`]: independent verification (definite isometry search, parity
//!   cross-check, report auditing).
//! * [`batch`]: grids of cases for tables and bulk verification.
//! * [`render`]: text and JSON rendering used by the command-line tool.

pub mod batch;
pub mod decompose;
pub mod hodge;
pub mod lattice;
pub mod oracle;
pub mod render;
mod serde_big;

pub use decompose::{
    decompose, decompose_with, parity_class, signature_data, wall_witness, Branch,
    DecomposeError, DecomposeOptions, DecompositionReport, ParityClass, SignatureData,
    WitnessKind,
};
pub use hodge::{binomial, euler_oracle, hodge_row, HodgeError, HodgeRow, MultiDegree};
pub use lattice::{
    Component, Decomposition, DiscriminantGroup, GramLattice, IntMatrix, LatticeError,
    LatticeInvariants, Sign, Term,
};
pub use oracle::{audit, definite_isometry, lucas_parity, AuditResult, CheckResult};
