//! Polytopes in vertex and inequality form, and the face predicates used by
//! the state-space analysis.

mod affine;
mod dd;
mod faces;
mod hull;

use std::sync::OnceLock;

use crate::exact::{Constraint, ExactVector};

pub use affine::{affine_hull, dimension, AffineSubspace};
pub use faces::{
    conv_union, exposed_face, intersect_with_affine, is_affine_slice, is_face, is_simplex,
    is_uniformly_pyramidal, minus_faces, PyramidApex,
};
pub use hull::{
    contains, h_to_v, membership, reduce_to_vertices, v_to_h, verify_membership, Hull, Membership,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeometryError {
    #[error("empty input")]
    EmptyInput,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("the inequality system describes an unbounded set")]
    UnboundedInput,
    #[error("the functional does not support the polytope at the given level")]
    NotSupporting,
    #[error("operation needs a polytope of dimension at least one")]
    ZeroDimensionalInput,
}

/// Convex hull of finitely many points, stored by its extreme points in
/// lexicographic order. Equality is equality of vertex lists.
#[derive(Debug, Clone)]
pub struct VPolytope {
    ambient_dim: usize,
    vertices: Vec<ExactVector>,
    hrep: OnceLock<Result<HPolytope, GeometryError>>,
}

impl PartialEq for VPolytope {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_dim == other.ambient_dim && self.vertices == other.vertices
    }
}

impl Eq for VPolytope {}

impl VPolytope {
    /// `conv(points)`, keeping only extreme points.
    pub fn new(ambient_dim: usize, points: &[ExactVector]) -> Self {
        for p in points {
            assert_eq!(p.dim(), ambient_dim, "point dimension mismatch");
        }
        reduce_to_vertices(ambient_dim, points)
    }

    pub fn empty(ambient_dim: usize) -> Self {
        Self::from_extreme_points(ambient_dim, Vec::new())
    }

    /// Caller guarantees every point is extreme; only sorting and dedup happen.
    pub(crate) fn from_extreme_points(ambient_dim: usize, mut vertices: Vec<ExactVector>) -> Self {
        vertices.sort();
        vertices.dedup();
        Self {
            ambient_dim,
            vertices,
            hrep: OnceLock::new(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn vertices(&self) -> &[ExactVector] {
        &self.vertices
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn dimension(&self) -> i64 {
        dimension(&self.vertices)
    }

    /// Memoised facet description.
    pub fn h_representation(&self) -> Result<&HPolytope, GeometryError> {
        self.hrep
            .get_or_init(|| v_to_h(self))
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn index_of(&self, v: &ExactVector) -> Option<usize> {
        self.vertices.binary_search(v).ok()
    }
}

/// `{x : a·x ≤ b for each inequality, a·x = b for each equality}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HPolytope {
    ambient_dim: usize,
    inequalities: Vec<Constraint>,
    equalities: Vec<Constraint>,
}

impl HPolytope {
    pub fn new(ambient_dim: usize, inequalities: Vec<Constraint>, equalities: Vec<Constraint>) -> Self {
        for c in inequalities.iter().chain(&equalities) {
            assert_eq!(c.coeffs.dim(), ambient_dim, "constraint dimension mismatch");
        }
        Self {
            ambient_dim,
            inequalities,
            equalities,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn inequalities(&self) -> &[Constraint] {
        &self.inequalities
    }

    pub fn equalities(&self) -> &[Constraint] {
        &self.equalities
    }

    pub fn with_equalities(&self, extra: impl IntoIterator<Item = Constraint>) -> HPolytope {
        let mut eqs = self.equalities.clone();
        eqs.extend(extra);
        HPolytope::new(self.ambient_dim, self.inequalities.clone(), eqs)
    }

    pub fn contains(&self, x: &ExactVector) -> bool {
        self.inequalities.iter().all(|c| c.coeffs.dot(x) <= c.rhs)
            && self.equalities.iter().all(|c| c.coeffs.dot(x) == c.rhs)
    }
}
