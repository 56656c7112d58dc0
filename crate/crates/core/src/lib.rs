//! Exact-arithmetic analysis of polytopic state spaces in generalized
//! probabilistic theories.
//!
//! The crate is layered bottom-up:
//!
//! * [`exact`]: rational scalars, vectors, matrices, and an exact simplex solver
//!   that returns Farkas certificates on infeasibility.
//! * [`geometry`]: V/H polytopes, hulls, faces, and the simplex and
//!   uniformly-pyramidal predicates.
//! * [`state_space`]: abstract state spaces, effect polytopes, pure effects and
//!   their certain/impossible faces.
//! * [`postulate`]: existence of measurement transformations that leave the
//!   certain face undisturbed, with witnesses or obstruction certificates.
//! * [`disturbance`]: the minimal disturbance of any transformation inducing
//!   a pure effect, as an exact LP value.
//! * [`models`]: the built-in model zoo.
//! * [`report`]: the JSON model format, analysis reports, and their
//!   LP-free re-validation.

pub mod disturbance;
pub mod exact;
pub mod geometry;
pub mod models;
pub mod postulate;
pub mod report;
pub mod state_space;

pub use disturbance::{DisturbanceResult, PolyhedralNorm};
pub use exact::{ExactMatrix, ExactScalar, ExactVector, LpOutcome, LpProblem};
pub use geometry::{AffineSubspace, HPolytope, VPolytope};
pub use models::ModelSpec;
pub use postulate::{ObstructionCertificate, TransformationOutcome, TransformationWitness};
pub use report::{AnalysisReport, ModelFile};
pub use state_space::{AbstractStateSpace, Classification, Effect};
