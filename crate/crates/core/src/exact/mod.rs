//! Exact rational linear algebra and linear programming.

pub mod lp;
pub mod matrix;
pub mod scalar;
pub mod vector;

pub use lp::{lp_solve, Constraint, FarkasCertificate, LpOutcome, LpProblem, Sense};
pub use matrix::{rank, solve_linear, Echelon, ExactMatrix, LinearSolution};
pub use scalar::{format_scalar, int, parse_scalar, ratio, to_decimal, ExactScalar};
pub use vector::ExactVector;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KernelError {
    #[error("cannot parse rational {0:?}: expected \"p/q\" or \"p\"")]
    ParseScalar(String),
    #[error("linear system has no solution")]
    NoSolution,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}
