//! Measurement transformations that leave the certain face undisturbed.
//!
//! For a pure effect `f` we look for a linear `T: A → A` with
//! `u_Aᵀ T = fᵀ`, `T ω = ω` on every vertex of the certain face `F_f`, and
//! `T v ∈ Ω_A^{≤1}` for every state vertex `v`. The search is one exact LP
//! over the `d²` entries of `T`. A feasible point is returned as a
//! [`TransformationWitness`]; otherwise the failure is explained, in order of
//! preference, by a dimension mismatch, a shape mismatch, or the raw Farkas
//! certificate of the LP.
//!
//! Everything returned here can be re-checked with [`verify_witness`] and
//! [`verify_obstruction`], which use only rational arithmetic.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::exact::{
    int, lp_solve, Constraint, ExactMatrix, ExactScalar, ExactVector, FarkasCertificate,
    LinearSolution, LpOutcome, LpProblem,
};
use crate::geometry::{self, GeometryError, Hull, Membership, VPolytope};
use crate::state_space::{AbstractStateSpace, Classification, Effect, StateSpaceError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PostulateError {
    #[error("effect {0} is not pure")]
    NotPure(String),
    #[error("the zero effect has an empty certain face and is excluded")]
    ZeroEffect,
    #[error("the given face is not a minus-face of the state set")]
    NotAMinusFace,
    #[error(transparent)]
    StateSpace(#[from] StateSpaceError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// `T` together with, for every state vertex `v`, weights `λ ≥ 0` with
/// `Σλ ≤ 1` and `T v = Σ λᵢ ωᵢ` over the state vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransformationWitness {
    pub effect: Effect,
    pub matrix: ExactMatrix,
    pub positivity: Vec<ExactVector>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum ObstructionCertificate {
    /// `certain_dim + impossible_dim > omega_dim − 1`.
    DimensionMismatch {
        certain_dim: i64,
        impossible_dim: i64,
        omega_dim: i64,
    },
    /// `point ∈ aff(F_f ∪ F̄_f) ∩ Ω_A` (with convex `weights` over the state
    /// vertices) but `normal·point > offset ≥ normal·w` for every vertex `w`
    /// of `F_f ∪ F̄_f`.
    ShapeMismatch {
        point: ExactVector,
        weights: ExactVector,
        normal: ExactVector,
        #[serde(with = "crate::exact::scalar::serde_scalar")]
        offset: ExactScalar,
    },
    /// Farkas certificate for [`transformation_system`].
    LpInfeasible { farkas: FarkasCertificate },
}

impl ObstructionCertificate {
    pub fn kind(&self) -> &'static str {
        match self {
            ObstructionCertificate::DimensionMismatch { .. } => "DimensionMismatch",
            ObstructionCertificate::ShapeMismatch { .. } => "ShapeMismatch",
            ObstructionCertificate::LpInfeasible { .. } => "LpInfeasible",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome")]
pub enum TransformationOutcome {
    Witness(TransformationWitness),
    Obstruction(ObstructionCertificate),
}

impl TransformationOutcome {
    pub fn is_witness(&self) -> bool {
        matches!(self, TransformationOutcome::Witness(_))
    }

    pub fn witness(&self) -> Option<&TransformationWitness> {
        match self {
            TransformationOutcome::Witness(w) => Some(w),
            TransformationOutcome::Obstruction(_) => None,
        }
    }

    pub fn obstruction(&self) -> Option<&ObstructionCertificate> {
        match self {
            TransformationOutcome::Witness(_) => None,
            TransformationOutcome::Obstruction(o) => Some(o),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConditionB {
    Holds,
    /// A vertex of `aff(F_f ∪ F̄_f) ∩ Ω_A` outside `conv(F_f ∪ F̄_f)`.
    Fails(ExactVector),
    /// F̄_f has two or more vertices.
    NotApplicable,
}

/// Which effects [`check_postulate`] sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Scope {
    /// Effects whose certain face is a minus-face.
    #[default]
    MinusFaces,
    /// Every nonzero pure effect.
    AllPure,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PostulateEntry {
    pub face: VPolytope,
    pub effect: Effect,
    pub outcome: TransformationOutcome,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PostulateReport {
    pub entries: Vec<PostulateEntry>,
}

impl PostulateReport {
    pub fn all_feasible(&self) -> bool {
        self.entries.iter().all(|e| e.outcome.is_witness())
    }
}

fn require_pure(space: &AbstractStateSpace, f: &Effect) -> Result<(), PostulateError> {
    if f.functional().dim() != space.dim() || !space.is_effect(f.functional()) {
        return Err(PostulateError::NotPure(f.to_string()));
    }
    if f.is_zero() {
        return Err(PostulateError::ZeroEffect);
    }
    if !space.is_pure(f) {
        return Err(PostulateError::NotPure(f.to_string()));
    }
    Ok(())
}

/// `dim F_f + dim F̄_f ≤ dim Ω_A − 1`.
pub fn lemma_condition_a(space: &AbstractStateSpace, f: &Effect) -> Result<bool, PostulateError> {
    require_pure(space, f)?;
    let certain = space.certain_face(f).dimension();
    let impossible = space.impossible_face(f).dimension();
    Ok(certain + impossible <= space.omega().dimension() - 1)
}

/// When F̄_f has at most one vertex: `aff(F_f ∪ F̄_f) ∩ Ω_A = conv(F_f ∪ F̄_f)`.
pub fn lemma_condition_b(
    space: &AbstractStateSpace,
    f: &Effect,
) -> Result<ConditionB, PostulateError> {
    require_pure(space, f)?;
    Ok(match shape_mismatch(space, f)? {
        None if space.impossible_face(f).vertices().len() >= 2 => ConditionB::NotApplicable,
        None => ConditionB::Holds,
        Some(ObstructionCertificate::ShapeMismatch { point, .. }) => ConditionB::Fails(point),
        Some(_) => unreachable!(),
    })
}

fn shape_mismatch(
    space: &AbstractStateSpace,
    f: &Effect,
) -> Result<Option<ObstructionCertificate>, PostulateError> {
    let certain = space.certain_face(f);
    let impossible = space.impossible_face(f);
    if impossible.vertices().len() >= 2 {
        return Ok(None);
    }
    let union = geometry::conv_union(&certain, &impossible)?;
    let slice = geometry::intersect_with_affine(space.omega(), &geometry::affine_hull(union.vertices())?)?;
    if slice == union {
        return Ok(None);
    }
    for p in slice.vertices() {
        if let Membership::Outside { normal, offset } =
            geometry::membership(union.vertices(), p, Hull::Convex)
        {
            let Membership::Inside(weights) = geometry::membership(space.states(), p, Hull::Convex)
            else {
                unreachable!("slice vertices lie in the state set");
            };
            return Ok(Some(ObstructionCertificate::ShapeMismatch {
                point: p.clone(),
                weights,
                normal,
                offset,
            }));
        }
    }
    unreachable!("a strictly larger slice has a vertex outside the hull")
}

/// The feasibility LP over the row-major entries of `T`: `uᵀT = fᵀ`,
/// `T ω = ω` for the listed certain-face vertices, and `a·(T v) ≤ b` for
/// every supplied inequality `(a, b)` and state vertex `v`.
///
/// `facets` is normally the facet list of Ω_A^{≤1}. Any list of inequalities
/// valid on Ω_A^{≤1} gives a relaxation, so a Farkas certificate for it
/// still proves that no transformation exists.
pub fn transformation_system(
    unit: &ExactVector,
    states: &[ExactVector],
    effect: &ExactVector,
    certain_vertices: &[ExactVector],
    facets: &[Constraint],
) -> LpProblem {
    let d = unit.dim();
    let idx = |i: usize, j: usize| i * d + j;
    let mut lp = LpProblem::new(d * d);
    for j in 0..d {
        let mut row = ExactVector::zeros(d * d);
        for i in 0..d {
            row[idx(i, j)] = unit[i].clone();
        }
        lp.add_eq(row, effect[j].clone());
    }
    for w in certain_vertices {
        for i in 0..d {
            let mut row = ExactVector::zeros(d * d);
            for j in 0..d {
                row[idx(i, j)] = w[j].clone();
            }
            lp.add_eq(row, w[i].clone());
        }
    }
    for facet in facets {
        for v in states {
            let mut row = ExactVector::zeros(d * d);
            for i in 0..d {
                if facet.coeffs[i].is_zero() {
                    continue;
                }
                for j in 0..d {
                    if !v[j].is_zero() {
                        row[idx(i, j)] = &facet.coeffs[i] * &v[j];
                    }
                }
            }
            lp.add_le(row, facet.rhs.clone());
        }
    }
    lp
}

pub(crate) fn matrix_from_point(point: &ExactVector, d: usize) -> ExactMatrix {
    ExactMatrix::from_entries(d, d, point.entries().to_vec())
}

/// Weights exhibiting `T v ∈ Ω_A^{≤1}` for every state vertex `v`, or `None`
/// if some image leaves Ω_A^{≤1}.
pub fn positivity_certificates(
    states: &[ExactVector],
    matrix: &ExactMatrix,
) -> Option<Vec<ExactVector>> {
    states
        .iter()
        .map(|v| match geometry::membership(states, &matrix.mul_vec(v), Hull::WithOrigin) {
            Membership::Inside(w) => Some(w),
            Membership::Outside { .. } => None,
        })
        .collect()
}

/// Searches for a transformation for the pure effect `f`.
pub fn find_transformation(
    space: &AbstractStateSpace,
    f: &Effect,
) -> Result<TransformationOutcome, PostulateError> {
    require_pure(space, f)?;
    let d = space.dim();
    let matrix = if *f == space.unit_effect() {
        ExactMatrix::identity(d)
    } else {
        let certain = space.certain_face(f);
        let facets = space.subnormalized_facets()?;
        let unit = space.unit_effect();
        let lp = transformation_system(
            unit.functional(),
            space.states(),
            f.functional(),
            certain.vertices(),
            facets.inequalities(),
        );
        match lp_solve(&lp) {
            LpOutcome::Feasible { point } | LpOutcome::Optimal { point, .. } => {
                matrix_from_point(&point, d)
            }
            LpOutcome::Infeasible { farkas } => {
                return Ok(TransformationOutcome::Obstruction(classify_obstruction(
                    space, f, farkas,
                )?));
            }
            LpOutcome::Unbounded { .. } => unreachable!("no objective"),
        }
    };
    let positivity = positivity_certificates(space.states(), &matrix)
        .expect("LP solution satisfies every facet of the subnormalized set");
    Ok(TransformationOutcome::Witness(TransformationWitness {
        effect: f.clone(),
        matrix,
        positivity,
    }))
}

fn classify_obstruction(
    space: &AbstractStateSpace,
    f: &Effect,
    farkas: FarkasCertificate,
) -> Result<ObstructionCertificate, PostulateError> {
    let certain_dim = space.certain_face(f).dimension();
    let impossible_dim = space.impossible_face(f).dimension();
    let omega_dim = space.omega().dimension();
    if certain_dim + impossible_dim > omega_dim - 1 {
        return Ok(ObstructionCertificate::DimensionMismatch {
            certain_dim,
            impossible_dim,
            omega_dim,
        });
    }
    if let Some(cert) = shape_mismatch(space, f)? {
        return Ok(cert);
    }
    Ok(ObstructionCertificate::LpInfeasible { farkas })
}

/// Vertices of `states` where `f` equals one.
fn certain_vertices(states: &[ExactVector], f: &ExactVector) -> Vec<ExactVector> {
    states.iter().filter(|v| f.dot(v).is_one()).cloned().collect()
}

fn impossible_vertices(states: &[ExactVector], f: &ExactVector) -> Vec<ExactVector> {
    states.iter().filter(|v| f.dot(v).is_zero()).cloned().collect()
}

fn rank_dimension(points: &[ExactVector]) -> i64 {
    match points.split_first() {
        None => -1,
        Some((base, rest)) => {
            let diffs: Vec<ExactVector> = rest.iter().map(|p| p.sub(base)).collect();
            ExactMatrix::from_rows(&diffs, base.dim()).rank() as i64
        }
    }
}

/// Re-checks a witness against raw model data.
pub fn verify_witness(
    unit: &ExactVector,
    states: &[ExactVector],
    witness: &TransformationWitness,
) -> Result<(), String> {
    let d = unit.dim();
    let t = &witness.matrix;
    let f = witness.effect.functional();
    if t.rows() != d || t.cols() != d || f.dim() != d {
        return Err("witness has the wrong shape".into());
    }
    if t.left_mul_vec(unit) != *f {
        return Err("u_A ∘ T differs from the effect".into());
    }
    for w in certain_vertices(states, f) {
        if t.mul_vec(&w) != w {
            return Err(format!("T moves certain-face vertex {w}"));
        }
    }
    if witness.positivity.len() != states.len() {
        return Err("positivity certificate count differs from state count".into());
    }
    for (v, weights) in states.iter().zip(&witness.positivity) {
        let image = t.mul_vec(v);
        let cert = Membership::Inside(weights.clone());
        if !geometry::verify_membership(states, &image, Hull::WithOrigin, &cert) {
            return Err(format!("positivity certificate fails for state {v}"));
        }
    }
    Ok(())
}

/// Re-checks an obstruction for effect `f` against raw model data.
/// `facets` is used only for [`ObstructionCertificate::LpInfeasible`], and
/// each facet is first checked to be valid on Ω_A^{≤1}.
pub fn verify_obstruction(
    unit: &ExactVector,
    states: &[ExactVector],
    f: &ExactVector,
    cert: &ObstructionCertificate,
    facets: &[Constraint],
) -> Result<(), String> {
    let certain = certain_vertices(states, f);
    let impossible = impossible_vertices(states, f);
    match cert {
        ObstructionCertificate::DimensionMismatch {
            certain_dim,
            impossible_dim,
            omega_dim,
        } => {
            let actual = (
                rank_dimension(&certain),
                rank_dimension(&impossible),
                rank_dimension(states),
            );
            if actual != (*certain_dim, *impossible_dim, *omega_dim) {
                return Err(format!("recomputed dimensions {actual:?} differ"));
            }
            if certain_dim + impossible_dim <= omega_dim - 1 {
                return Err("dimensions satisfy the compatibility inequality".into());
            }
            Ok(())
        }
        ObstructionCertificate::ShapeMismatch {
            point,
            weights,
            normal,
            offset,
        } => {
            let mut union = certain.clone();
            union.extend(impossible.iter().cloned());
            if union.is_empty() || rank_dimension(&union) != {
                let mut with_point = union.clone();
                with_point.push(point.clone());
                rank_dimension(&with_point)
            } {
                return Err("point is outside aff(F_f ∪ F̄_f)".into());
            }
            if !geometry::verify_membership(
                states,
                point,
                Hull::Convex,
                &Membership::Inside(weights.clone()),
            ) {
                return Err("point is not certified to lie in Ω_A".into());
            }
            if !geometry::verify_membership(
                &union,
                point,
                Hull::Convex,
                &Membership::Outside {
                    normal: normal.clone(),
                    offset: offset.clone(),
                },
            ) {
                return Err("separating hyperplane does not separate".into());
            }
            Ok(())
        }
        ObstructionCertificate::LpInfeasible { farkas } => {
            let mut sub = states.to_vec();
            sub.push(ExactVector::zeros(unit.dim()));
            for facet in facets {
                if sub.iter().any(|v| facet.coeffs.dot(v) > facet.rhs) {
                    return Err("supplied inequality is not valid on Ω_A^{≤1}".into());
                }
            }
            let lp = transformation_system(unit, states, f, &certain, facets);
            if farkas.verify(&lp) {
                Ok(())
            } else {
                Err("Farkas certificate does not validate".into())
            }
        }
    }
}

/// The unique pure effect whose certain face is the minus-face `face`.
pub fn minus_face_pure_effect(
    space: &AbstractStateSpace,
    face: &VPolytope,
) -> Result<Effect, PostulateError> {
    let faces = match geometry::minus_faces(space.omega()) {
        Ok(f) => f,
        Err(GeometryError::ZeroDimensionalInput) => return Err(PostulateError::NotAMinusFace),
        Err(e) => return Err(e.into()),
    };
    if !faces.contains(face) {
        return Err(PostulateError::NotAMinusFace);
    }
    let d = space.dim();
    let rows = face.vertices();
    let ones: ExactVector = rows.iter().map(|_| int(1)).collect();
    let solution = ExactMatrix::from_rows(rows, d)
        .solve(&ones)
        .expect("u_A solves f·ω = 1 on the face");
    let (base, direction) = match &solution {
        LinearSolution::Family {
            particular,
            nullspace,
        } if nullspace.len() == 1 => (particular.clone(), nullspace[0].clone()),
        _ => unreachable!("a minus-face spans a hyperplane of A"),
    };
    let probe = space
        .states()
        .iter()
        .find(|v| face.index_of(v).is_none())
        .expect("a minus-face misses some state");
    // One-parameter LP over the segment U_F: minimise f(probe).
    let mut lp = LpProblem::new(1).minimize(ExactVector::new(vec![direction.dot(probe)]));
    for v in space.states() {
        let slope = ExactVector::new(vec![direction.dot(v)]);
        let offset = base.dot(v);
        lp.add_le(slope.clone(), int(1) - &offset);
        lp.add_ge(slope, -offset);
    }
    let LpOutcome::Optimal { point, .. } = lp_solve(&lp) else {
        unreachable!("U_F is a nonempty segment");
    };
    let f = space.effect(base.add(&direction.scale(&point[0])))?;
    debug_assert!(space.is_pure(&f));
    debug_assert_eq!(space.certain_face(&f), *face);
    Ok(f)
}

/// Runs [`find_transformation`] over the chosen effects, in canonical order.
pub fn check_postulate(
    space: &AbstractStateSpace,
    scope: Scope,
) -> Result<PostulateReport, PostulateError> {
    let mut entries = Vec::new();
    match scope {
        Scope::MinusFaces => {
            let faces = match geometry::minus_faces(space.omega()) {
                Ok(f) => f,
                // A single state has no minus-faces.
                Err(GeometryError::ZeroDimensionalInput) => Vec::new(),
                Err(e) => return Err(e.into()),
            };
            for face in faces {
                let effect = minus_face_pure_effect(space, &face)?;
                let outcome = find_transformation(space, &effect)?;
                entries.push(PostulateEntry {
                    face,
                    effect,
                    outcome,
                });
            }
        }
        Scope::AllPure => {
            for effect in space.pure_effects()? {
                if effect.is_zero() {
                    continue;
                }
                let outcome = find_transformation(space, effect)?;
                entries.push(PostulateEntry {
                    face: space.certain_face(effect),
                    effect: effect.clone(),
                    outcome,
                });
            }
        }
    }
    Ok(PostulateReport { entries })
}

pub fn check_postulate_minusfaces(
    space: &AbstractStateSpace,
) -> Result<PostulateReport, PostulateError> {
    check_postulate(space, Scope::MinusFaces)
}

/// Intermediate facts of the classicality argument for one model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theorem1Trace {
    pub all_feasible: bool,
    pub classification: Classification,
    pub uniformly_pyramidal: bool,
    pub simplex: bool,
}

impl Theorem1Trace {
    /// Feasible everywhere ⇔ classical, feasible ⇒ uniformly pyramidal, and
    /// uniformly pyramidal ⇒ simplex.
    pub fn consistent(&self) -> bool {
        let classical = self.classification == Classification::Classical;
        self.all_feasible == classical
            && (!self.all_feasible || self.uniformly_pyramidal)
            && (!self.uniformly_pyramidal || self.simplex)
    }
}

pub fn theorem1_trace(space: &AbstractStateSpace) -> Result<Theorem1Trace, PostulateError> {
    let report = check_postulate_minusfaces(space)?;
    let uniformly_pyramidal = match geometry::is_uniformly_pyramidal(space.omega()) {
        Ok(apexes) => apexes.is_some(),
        Err(GeometryError::ZeroDimensionalInput) => true,
        Err(e) => return Err(e.into()),
    };
    Ok(Theorem1Trace {
        all_feasible: report.all_feasible(),
        classification: space.classify(),
        uniformly_pyramidal,
        simplex: geometry::is_simplex(space.omega()),
    })
}

/// Checks the biconditional "postulate holds on all minus-faces ⇔ classical".
pub fn verify_theorem1(space: &AbstractStateSpace) -> Result<bool, PostulateError> {
    Ok(theorem1_trace(space)?.consistent())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;
    use crate::models::{polygon, simplex_model, square_pyramid};

    fn edge_effects(space: &AbstractStateSpace) -> Vec<Effect> {
        geometry::minus_faces(space.omega())
            .unwrap()
            .iter()
            .map(|f| minus_face_pure_effect(space, f).unwrap())
            .collect()
    }

    #[test]
    fn condition_a_examples() {
        let sq = polygon(4).unwrap();
        for f in edge_effects(&sq) {
            assert!(!lemma_condition_a(&sq, &f).unwrap());
        }
        let pent = polygon(5).unwrap();
        for f in edge_effects(&pent) {
            assert!(lemma_condition_a(&pent, &f).unwrap());
        }
        assert!(lemma_condition_a(&sq, &sq.unit_effect()).unwrap());
        assert_eq!(
            lemma_condition_a(&sq, &sq.zero_effect()),
            Err(PostulateError::ZeroEffect)
        );
    }

    #[test]
    fn condition_b_examples() {
        let pent = polygon(5).unwrap();
        for f in edge_effects(&pent) {
            let ConditionB::Fails(p) = lemma_condition_b(&pent, &f).unwrap() else {
                panic!("pentagon edge should fail (b)");
            };
            // The witness is a pentagon vertex adjacent to the edge.
            assert!(pent.omega().index_of(&p).is_some());
            assert!(pent.certain_face(&f).index_of(&p).is_none());
            assert!(pent.impossible_face(&f).index_of(&p).is_none());
        }
        let tri = simplex_model(3).unwrap();
        for f in edge_effects(&tri) {
            assert_eq!(lemma_condition_b(&tri, &f).unwrap(), ConditionB::Holds);
        }
        let sq = polygon(4).unwrap();
        for f in edge_effects(&sq) {
            assert_eq!(lemma_condition_b(&sq, &f).unwrap(), ConditionB::NotApplicable);
        }
    }

    #[test]
    fn triangle_projection_witness() {
        let tri = simplex_model(3).unwrap();
        let f = tri.effect(ExactVector::from_ints(&[1, 1, 0])).unwrap();
        let TransformationOutcome::Witness(w) = find_transformation(&tri, &f).unwrap() else {
            panic!("expected witness");
        };
        assert!(verify_witness(tri.unit_effect().functional(), tri.states(), &w).is_ok());
        // The fixed-face constraints force the first two columns; positivity
        // and uᵀT = f force the third column to vanish.
        let mut diag = ExactMatrix::zeros(3, 3);
        diag.set(0, 0, int(1));
        diag.set(1, 1, int(1));
        assert_eq!(w.matrix, diag);
    }

    #[test]
    fn square_edges_are_dimension_mismatches() {
        let sq = polygon(4).unwrap();
        let report = check_postulate_minusfaces(&sq).unwrap();
        assert_eq!(report.entries.len(), 4);
        for e in &report.entries {
            assert_eq!(
                e.outcome,
                TransformationOutcome::Obstruction(ObstructionCertificate::DimensionMismatch {
                    certain_dim: 1,
                    impossible_dim: 1,
                    omega_dim: 2
                })
            );
        }
        assert!(!report.all_feasible());
    }

    #[test]
    fn pentagon_edges_are_shape_mismatches() {
        let pent = polygon(5).unwrap();
        let report = check_postulate_minusfaces(&pent).unwrap();
        assert_eq!(report.entries.len(), 5);
        let facets = pent.subnormalized_facets().unwrap().inequalities().to_vec();
        for e in &report.entries {
            let cert = e.outcome.obstruction().unwrap();
            assert_eq!(cert.kind(), "ShapeMismatch");
            verify_obstruction(
                pent.unit_effect().functional(),
                pent.states(),
                e.effect.functional(),
                cert,
                &facets,
            )
            .unwrap();
        }
    }

    #[test]
    fn unit_effect_has_identity_witness() {
        let pent = polygon(5).unwrap();
        let out = find_transformation(&pent, &pent.unit_effect()).unwrap();
        assert_eq!(out.witness().unwrap().matrix, ExactMatrix::identity(3));
    }

    #[test]
    fn non_pure_effect_is_rejected() {
        let sq = polygon(4).unwrap();
        let half = sq
            .effect(ExactVector::new(vec![int(0), int(0), ratio(1, 2)]))
            .unwrap();
        assert!(matches!(
            find_transformation(&sq, &half),
            Err(PostulateError::NotPure(_))
        ));
    }

    #[test]
    fn minus_face_effect_examples() {
        let tri = simplex_model(3).unwrap();
        let edge = VPolytope::new(3, &[ExactVector::unit(3, 0), ExactVector::unit(3, 1)]);
        assert_eq!(
            minus_face_pure_effect(&tri, &edge).unwrap().functional(),
            &ExactVector::from_ints(&[1, 1, 0])
        );
        let not_face = VPolytope::new(3, &[ExactVector::unit(3, 0)]);
        assert_eq!(
            minus_face_pure_effect(&tri, &not_face),
            Err(PostulateError::NotAMinusFace)
        );
    }

    #[test]
    fn square_pyramid_base_is_feasible_sides_are_not() {
        let p = square_pyramid();
        let report = check_postulate_minusfaces(&p).unwrap();
        let witnesses = report.entries.iter().filter(|e| e.outcome.is_witness()).count();
        assert_eq!(witnesses, 1);
        assert_eq!(report.entries.len(), 5);
        assert!(verify_theorem1(&p).unwrap());
    }

    #[test]
    fn theorem1_on_small_models() {
        for k in 1..=4 {
            let t = theorem1_trace(&simplex_model(k).unwrap()).unwrap();
            assert!(t.all_feasible && t.simplex && t.consistent(), "k = {k}");
        }
        for n in 4..=6 {
            let t = theorem1_trace(&polygon(n).unwrap()).unwrap();
            assert!(!t.all_feasible && t.consistent(), "n = {n}");
        }
    }
}
