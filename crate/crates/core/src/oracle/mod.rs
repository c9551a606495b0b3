//! Independent checks on everything the decomposition pipeline produces.

mod audit;
pub mod isometry;

pub use audit::{audit, audit_with_budget, AuditResult, CheckResult, REALIZE_LIMIT};
pub use isometry::{definite_isometry, IsometryError, IsometryOutcome, IsometrySearchBudget};

/// `C(a + b, b) mod 2`: odd exactly when adding `a` and `b` in binary has no carry.
pub fn lucas_parity(a: u64, b: u64) -> u8 {
    u8::from(a & b == 0)
}
