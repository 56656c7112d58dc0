//! Abstract state spaces `(A, A₊, u_A)` with a polytopic normalized state set.
//!
//! States live in coordinates of `A = ℝ^d`; effects are functionals in dual
//! coordinates, so evaluating an effect on a state is a dot product. The cone
//! `A₊` is the cone over the normalized states and is never stored explicitly.

use std::fmt;
use std::sync::OnceLock;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::exact::{int, Constraint, ExactMatrix, ExactVector};
use crate::geometry::{self, GeometryError, HPolytope, VPolytope};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StateSpaceError {
    #[error("state set is empty")]
    EmptyStateSet,
    #[error("state {index} has unit-effect value {value}, expected 1")]
    NotNormalized { index: usize, value: String },
    #[error("states span a subspace of rank {rank}, but dim_A = {dim}")]
    NotGenerating { rank: usize, dim: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("point {0} is not a vertex of the state set")]
    NotAStateVertex(String),
    #[error("functional {0} takes values outside [0, 1] on the state set")]
    NotAnEffect(String),
    #[error("effects do not sum to the unit effect")]
    NotAMeasurement,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// A linear functional with values in `[0, 1]` on every normalized state.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Effect(ExactVector);

impl Effect {
    pub fn functional(&self) -> &ExactVector {
        &self.0
    }

    pub fn into_functional(self) -> ExactVector {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl fmt::Display for Effect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Classification {
    Classical,
    DiscreteNonClassical,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::Classical => write!(f, "Classical"),
            Classification::DiscreteNonClassical => write!(f, "DiscreteNonClassical"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct AbstractStateSpace {
    dim: usize,
    unit: ExactVector,
    omega: VPolytope,
    subnormalized: OnceLock<VPolytope>,
    pure_effects: OnceLock<Result<Vec<Effect>, GeometryError>>,
}

impl PartialEq for AbstractStateSpace {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.unit == other.unit && self.omega == other.omega
    }
}

impl AbstractStateSpace {
    /// Validates and builds a state space. Redundant points are dropped.
    pub fn build(
        dim: usize,
        unit: ExactVector,
        vertices: &[ExactVector],
    ) -> Result<Self, StateSpaceError> {
        if vertices.is_empty() {
            return Err(StateSpaceError::EmptyStateSet);
        }
        if unit.dim() != dim {
            return Err(StateSpaceError::DimensionMismatch {
                expected: dim,
                found: unit.dim(),
            });
        }
        for (index, v) in vertices.iter().enumerate() {
            if v.dim() != dim {
                return Err(StateSpaceError::DimensionMismatch {
                    expected: dim,
                    found: v.dim(),
                });
            }
            let value = unit.dot(v);
            if !value.is_one() {
                return Err(StateSpaceError::NotNormalized {
                    index,
                    value: value.to_string(),
                });
            }
        }
        let rank = ExactMatrix::from_rows(vertices, dim).rank();
        if rank != dim {
            return Err(StateSpaceError::NotGenerating { rank, dim });
        }
        let omega = VPolytope::new(dim, vertices);
        debug_assert_eq!(omega.dimension(), dim as i64 - 1);
        Ok(Self {
            dim,
            unit,
            omega,
            subnormalized: OnceLock::new(),
            pure_effects: OnceLock::new(),
        })
    }

    /// Embeds a polytope at height one: `x ↦ (x, 1)`, `u_A` = last coordinate.
    /// The base must be full-dimensional in its ambient space.
    pub fn lift(base: &VPolytope) -> Result<Self, StateSpaceError> {
        if base.is_empty() {
            return Err(StateSpaceError::EmptyStateSet);
        }
        let dim = base.ambient_dim() + 1;
        let vertices: Vec<ExactVector> = base.vertices().iter().map(|v| v.extended(int(1))).collect();
        Self::build(dim, ExactVector::unit(dim, dim - 1), &vertices)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit_effect(&self) -> Effect {
        Effect(self.unit.clone())
    }

    pub fn zero_effect(&self) -> Effect {
        Effect(ExactVector::zeros(self.dim))
    }

    /// Normalized states Ω_A.
    pub fn omega(&self) -> &VPolytope {
        &self.omega
    }

    pub fn states(&self) -> &[ExactVector] {
        self.omega.vertices()
    }

    /// Ω_A^{≤1} = conv(Ω_A ∪ {0}). The origin is always extreme because
    /// `u_A` vanishes there and equals one on Ω_A.
    pub fn subnormalized(&self) -> &VPolytope {
        self.subnormalized.get_or_init(|| {
            let mut pts = self.states().to_vec();
            pts.push(ExactVector::zeros(self.dim));
            VPolytope::from_extreme_points(self.dim, pts)
        })
    }

    /// Facets of Ω_A^{≤1}; full-dimensional, so there are no equalities.
    pub fn subnormalized_facets(&self) -> Result<&HPolytope, GeometryError> {
        self.subnormalized().h_representation()
    }

    /// E_A = {f : 0 ≤ f·ω ≤ 1 for every state vertex ω}, in dual coordinates.
    pub fn effect_polytope(&self) -> HPolytope {
        let mut ineqs = Vec::with_capacity(2 * self.states().len());
        for v in self.states() {
            ineqs.push(Constraint::new(v.neg(), int(0)));
            ineqs.push(Constraint::new(v.clone(), int(1)));
        }
        HPolytope::new(self.dim, ineqs, Vec::new())
    }

    /// Extreme points of E_A in lexicographic order.
    pub fn pure_effects(&self) -> Result<&[Effect], StateSpaceError> {
        self.pure_effects
            .get_or_init(|| {
                geometry::h_to_v(&self.effect_polytope())
                    .map(|p| p.vertices().iter().cloned().map(Effect).collect())
            })
            .as_ref()
            .map(Vec::as_slice)
            .map_err(|e| StateSpaceError::Geometry(e.clone()))
    }

    pub fn is_effect(&self, f: &ExactVector) -> bool {
        f.dim() == self.dim
            && self.states().iter().all(|v| {
                let x = f.dot(v);
                x >= int(0) && x <= int(1)
            })
    }

    /// Validates a functional as an effect.
    pub fn effect(&self, f: ExactVector) -> Result<Effect, StateSpaceError> {
        if f.dim() != self.dim {
            return Err(StateSpaceError::DimensionMismatch {
                expected: self.dim,
                found: f.dim(),
            });
        }
        if !self.is_effect(&f) {
            return Err(StateSpaceError::NotAnEffect(f.to_string()));
        }
        Ok(Effect(f))
    }

    /// Extremality in E_A: the state vertices where `f` is 0 or 1 span A.
    pub fn is_pure(&self, f: &Effect) -> bool {
        let tight: Vec<ExactVector> = self
            .states()
            .iter()
            .filter(|v| {
                let x = f.0.dot(v);
                x.is_zero() || x.is_one()
            })
            .cloned()
            .collect();
        ExactMatrix::from_rows(&tight, self.dim).rank() == self.dim
    }

    /// Indices (into [`Self::states`]) of the states where `f` equals `level`.
    pub fn level_indices(&self, f: &Effect, level: i64) -> Vec<usize> {
        let target = int(level);
        self.states()
            .iter()
            .enumerate()
            .filter(|(_, v)| f.0.dot(v) == target)
            .map(|(i, _)| i)
            .collect()
    }

    fn level_face(&self, f: &Effect, level: i64) -> VPolytope {
        let pts = self
            .level_indices(f, level)
            .into_iter()
            .map(|i| self.states()[i].clone())
            .collect();
        VPolytope::from_extreme_points(self.dim, pts)
    }

    /// F_f = {ω ∈ Ω_A : f(ω) = 1}.
    pub fn certain_face(&self, f: &Effect) -> VPolytope {
        self.level_face(f, 1)
    }

    /// F̄_f = {ω ∈ Ω_A : f(ω) = 0}.
    pub fn impossible_face(&self, f: &Effect) -> VPolytope {
        self.level_face(f, 0)
    }

    /// `u_A − f`.
    pub fn complementary(&self, f: &Effect) -> Effect {
        Effect(self.unit.sub(&f.0))
    }

    /// U_S = {f ∈ E_A : f(ω) = 1 for all ω ∈ S}, in vertex form.
    pub fn unanimity_face(&self, s: &[ExactVector]) -> Result<VPolytope, StateSpaceError> {
        for v in s {
            if self.omega.index_of(v).is_none() {
                return Err(StateSpaceError::NotAStateVertex(v.to_string()));
            }
        }
        let h = self
            .effect_polytope()
            .with_equalities(s.iter().map(|v| Constraint::new(v.clone(), int(1))));
        Ok(geometry::h_to_v(&h)?)
    }

    pub fn classify(&self) -> Classification {
        if geometry::is_simplex(&self.omega) {
            Classification::Classical
        } else {
            Classification::DiscreteNonClassical
        }
    }

    /// Checks that `effects` are effects summing to `u_A`.
    pub fn validate_measurement(&self, effects: &[Effect]) -> Result<(), StateSpaceError> {
        let mut total = ExactVector::zeros(self.dim);
        for e in effects {
            if !self.is_effect(&e.0) {
                return Err(StateSpaceError::NotAnEffect(e.to_string()));
            }
            total = total.add(&e.0);
        }
        if total != self.unit {
            return Err(StateSpaceError::NotAMeasurement);
        }
        Ok(())
    }
}
