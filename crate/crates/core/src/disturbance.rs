//! Minimal disturbance of the certain face over all transformations inducing
//! a pure effect.
//!
//! `T_f` is the set of positive linear maps `T` with `u_Aᵀ T = fᵀ`. The
//! disturbance of `T` is `D_f(T) = max_{ω ∈ F_f} ‖Tω − ω‖`, and
//! [`min_disturbance`] computes `ε = min_{T ∈ T_f} D_f(T)` exactly as one LP
//! for the polyhedral norms ℓ∞ and ℓ1.

use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::exact::{
    int, lp_solve, ratio, ExactMatrix, ExactScalar, ExactVector, LpOutcome, LpProblem,
};
use crate::geometry::{self, GeometryError};
use crate::postulate::{self, PostulateError};
use crate::state_space::{AbstractStateSpace, Classification, Effect, StateSpaceError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DisturbanceError {
    #[error("matrix is not in T_f: {0}")]
    NotInTf(String),
    #[error("the certain face of the effect is empty")]
    EmptyCertainFace,
    #[error("the model is classical")]
    IsClassical,
    #[error(transparent)]
    Postulate(#[from] PostulateError),
    #[error(transparent)]
    StateSpace(#[from] StateSpaceError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub enum PolyhedralNorm {
    #[default]
    MaxAbs,
    SumAbs,
}

impl PolyhedralNorm {
    pub fn eval(self, x: &ExactVector) -> ExactScalar {
        match self {
            PolyhedralNorm::MaxAbs => x.max_abs(),
            PolyhedralNorm::SumAbs => x.sum_abs(),
        }
    }

    pub fn short_name(self) -> &'static str {
        match self {
            PolyhedralNorm::MaxAbs => "linf",
            PolyhedralNorm::SumAbs => "l1",
        }
    }
}

impl fmt::Display for PolyhedralNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for PolyhedralNorm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "linf" | "MaxAbs" => Ok(PolyhedralNorm::MaxAbs),
            "l1" | "SumAbs" => Ok(PolyhedralNorm::SumAbs),
            other => Err(format!("unknown norm {other:?}, expected linf or l1")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DisturbanceResult {
    pub effect: Effect,
    pub norm: PolyhedralNorm,
    #[serde(with = "crate::exact::scalar::serde_scalar")]
    pub epsilon: ExactScalar,
    pub minimizer: ExactMatrix,
    pub witness_state: ExactVector,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CaseIBound {
    /// The impossible face is not a single point.
    NotApplicable,
    Bound {
        value: ExactScalar,
        /// State vertex whose image under `L` is furthest from Ω_A^{≤1}.
        tau: ExactVector,
        distance: ExactScalar,
        alpha_max: ExactScalar,
    },
}

impl CaseIBound {
    pub fn value(&self) -> Option<&ExactScalar> {
        match self {
            CaseIBound::NotApplicable => None,
            CaseIBound::Bound { value, .. } => Some(value),
        }
    }
}

fn pad(v: &ExactVector, n: usize) -> ExactVector {
    let mut e = v.entries().to_vec();
    e.resize(n, int(0));
    ExactVector::new(e)
}

fn idx(d: usize, i: usize, j: usize) -> usize {
    i * d + j
}

/// `T_f` as an LP over the first `d²` of `num_vars` variables.
fn tf_problem(
    space: &AbstractStateSpace,
    f: &Effect,
    num_vars: usize,
) -> Result<LpProblem, DisturbanceError> {
    let facets = space.subnormalized_facets()?;
    let base = postulate::transformation_system(
        space.unit_effect().functional(),
        space.states(),
        f.functional(),
        &[],
        facets.inequalities(),
    );
    let mut lp = LpProblem::new(num_vars);
    for c in base.equalities() {
        lp.add_eq(pad(&c.coeffs, num_vars), c.rhs.clone());
    }
    for c in base.inequalities() {
        lp.add_le(pad(&c.coeffs, num_vars), c.rhs.clone());
    }
    Ok(lp)
}

/// Row of coefficients for `(Tω)_k` in the `T` variables.
fn image_row(d: usize, k: usize, omega: &ExactVector, num_vars: usize) -> ExactVector {
    let mut row = ExactVector::zeros(num_vars);
    for m in 0..d {
        row[idx(d, k, m)] = omega[m].clone();
    }
    row
}

fn require_certain(space: &AbstractStateSpace, f: &Effect) -> Result<Vec<ExactVector>, DisturbanceError> {
    if f.functional().dim() != space.dim() || !space.is_pure(f) {
        return Err(PostulateError::NotPure(f.to_string()).into());
    }
    let face = space.certain_face(f);
    if face.is_empty() {
        return Err(DisturbanceError::EmptyCertainFace);
    }
    Ok(face.vertices().to_vec())
}

/// Checks `u_Aᵀ T = fᵀ` and `T v ∈ Ω_A^{≤1}` for every state vertex `v`.
pub fn validate_tf(
    space: &AbstractStateSpace,
    f: &Effect,
    t: &ExactMatrix,
) -> Result<(), DisturbanceError> {
    let d = space.dim();
    if t.rows() != d || t.cols() != d {
        return Err(DisturbanceError::NotInTf(format!(
            "expected a {d}x{d} matrix, got {}x{}",
            t.rows(),
            t.cols()
        )));
    }
    if t.left_mul_vec(space.unit_effect().functional()) != *f.functional() {
        return Err(DisturbanceError::NotInTf("u_A ∘ T differs from f".into()));
    }
    let facets = space.subnormalized_facets()?;
    for v in space.states() {
        let image = t.mul_vec(v);
        if !facets.contains(&image) {
            return Err(DisturbanceError::NotInTf(format!(
                "image of state {v} leaves the subnormalized state set"
            )));
        }
    }
    Ok(())
}

/// `T(ω) = (f·ω) σ`, which lies in `T_f` for every state `σ`.
pub fn collapse_map(f: &Effect, sigma: &ExactVector) -> ExactMatrix {
    let d = sigma.dim();
    let mut t = ExactMatrix::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            t.set(i, j, &sigma[i] * &f.functional()[j]);
        }
    }
    t
}

/// `D_f(T)` together with the first certain-face vertex attaining it.
fn disturbance_with_state(
    certain: &[ExactVector],
    t: &ExactMatrix,
    norm: PolyhedralNorm,
) -> (ExactScalar, ExactVector) {
    let mut best: Option<(ExactScalar, ExactVector)> = None;
    for w in certain {
        let value = norm.eval(&t.mul_vec(w).sub(w));
        if best.as_ref().map_or(true, |(b, _)| value > *b) {
            best = Some((value, w.clone()));
        }
    }
    best.expect("certain face is nonempty")
}

/// `D_f(T) = max_{ω ∈ vert F_f} ‖Tω − ω‖`. The maximum of a convex function
/// over a polytope is attained at a vertex.
pub fn disturbance(
    space: &AbstractStateSpace,
    f: &Effect,
    t: &ExactMatrix,
    norm: PolyhedralNorm,
) -> Result<ExactScalar, DisturbanceError> {
    let certain = require_certain(space, f)?;
    validate_tf(space, f, t)?;
    Ok(disturbance_with_state(&certain, t, norm).0)
}

/// Adds `‖x_expr − target‖ ≤ t` where `x_expr[k]` are variable rows.
/// `t` sits at `t_index`; SumAbs slacks start at `slack_start`.
fn add_norm_bound(
    lp: &mut LpProblem,
    norm: PolyhedralNorm,
    rows: &[ExactVector],
    target: &ExactVector,
    t_index: usize,
    slack_start: usize,
) {
    let n = lp.num_vars();
    match norm {
        PolyhedralNorm::MaxAbs => {
            for (row, b) in rows.iter().zip(target.iter()) {
                let mut up = row.clone();
                up[t_index] = int(-1);
                lp.add_le(up, b.clone());
                let mut down = row.neg();
                down[t_index] = int(-1);
                lp.add_le(down, -b.clone());
            }
        }
        PolyhedralNorm::SumAbs => {
            let mut total = ExactVector::zeros(n);
            for (k, (row, b)) in rows.iter().zip(target.iter()).enumerate() {
                let s = slack_start + k;
                let mut up = row.clone();
                up[s] = int(-1);
                lp.add_le(up, b.clone());
                let mut down = row.neg();
                down[s] = int(-1);
                lp.add_le(down, -b.clone());
                total[s] = int(1);
            }
            total[t_index] = int(-1);
            lp.add_le(total, int(0));
        }
    }
}

/// Exact `ε = min_{T ∈ T_f} D_f(T)` with a minimizer.
pub fn min_disturbance(
    space: &AbstractStateSpace,
    f: &Effect,
    norm: PolyhedralNorm,
) -> Result<DisturbanceResult, DisturbanceError> {
    let certain = require_certain(space, f)?;
    let d = space.dim();
    let t_index = d * d;
    let slacks = match norm {
        PolyhedralNorm::MaxAbs => 0,
        PolyhedralNorm::SumAbs => d * certain.len(),
    };
    let n = d * d + 1 + slacks;
    let mut lp = tf_problem(space, f, n)?;
    for (j, w) in certain.iter().enumerate() {
        let rows: Vec<ExactVector> = (0..d).map(|k| image_row(d, k, w, n)).collect();
        add_norm_bound(&mut lp, norm, &rows, w, t_index, t_index + 1 + j * d);
    }
    let lp = lp.minimize(ExactVector::unit(n, t_index));
    let LpOutcome::Optimal { point, value } = lp_solve(&lp) else {
        unreachable!("T_f is nonempty and the objective is bounded below by zero");
    };
    let minimizer = postulate::matrix_from_point(&ExactVector::new(point.entries()[..d * d].to_vec()), d);
    let (epsilon, witness_state) = disturbance_with_state(&certain, &minimizer, norm);
    debug_assert_eq!(epsilon, value);
    Ok(DisturbanceResult {
        effect: f.clone(),
        norm,
        epsilon,
        minimizer,
        witness_state,
    })
}

/// Seeded elements of `T_f`: LP optima for random integer objectives, each
/// mixed with the previous sample by a random rational weight so that
/// samples are not restricted to vertices of `T_f`.
pub fn sample_tf(
    space: &AbstractStateSpace,
    f: &Effect,
    count: usize,
    seed: u64,
) -> Result<Vec<ExactMatrix>, DisturbanceError> {
    let d = space.dim();
    let base = tf_problem(space, f, d * d)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut samples: Vec<ExactMatrix> = Vec::with_capacity(count);
    let mut prev: Option<ExactVector> = None;
    while samples.len() < count {
        let c: ExactVector = (0..d * d).map(|_| int(rng.gen_range(-10..=10))).collect();
        let lp = base.clone().maximize(c);
        let LpOutcome::Optimal { point, .. } = lp_solve(&lp) else {
            unreachable!("T_f is a nonempty polytope");
        };
        let mixed = match &prev {
            Some(q) => {
                let w = ratio(rng.gen_range(0..=10), 10);
                point.scale(&w).add(&q.scale(&(int(1) - &w)))
            }
            None => point.clone(),
        };
        prev = Some(point);
        samples.push(postulate::matrix_from_point(&mixed, d));
    }
    Ok(samples)
}

/// `dim T(F_f) ≤ dim A − dim F̄_f − 2`.
pub fn lemma6_dimension_check(
    space: &AbstractStateSpace,
    f: &Effect,
    t: &ExactMatrix,
) -> Result<bool, DisturbanceError> {
    let certain = require_certain(space, f)?;
    validate_tf(space, f, t)?;
    let images: Vec<ExactVector> = certain.iter().map(|w| t.mul_vec(w)).collect();
    let lhs = geometry::dimension(&images);
    let rhs = space.dim() as i64 - space.impossible_face(f).dimension() - 2;
    Ok(lhs <= rhs)
}

/// `min_{σ ∈ Ω_A^{≤1}} ‖x − σ‖`.
pub fn distance_to_subnormalized(
    space: &AbstractStateSpace,
    x: &ExactVector,
    norm: PolyhedralNorm,
) -> ExactScalar {
    let states = space.states();
    let (m, d) = (states.len(), space.dim());
    let t_index = m;
    let slacks = match norm {
        PolyhedralNorm::MaxAbs => 0,
        PolyhedralNorm::SumAbs => d,
    };
    let n = m + 1 + slacks;
    let mut lp = LpProblem::new(n);
    let mut total = ExactVector::zeros(n);
    for i in 0..m {
        lp.add_ge(ExactVector::unit(n, i), int(0));
        total[i] = int(1);
    }
    lp.add_le(total, int(1));
    let rows: Vec<ExactVector> = (0..d)
        .map(|k| {
            let mut row = ExactVector::zeros(n);
            for (i, s) in states.iter().enumerate() {
                row[i] = s[k].clone();
            }
            row
        })
        .collect();
    add_norm_bound(&mut lp, norm, &rows, x, t_index, t_index + 1);
    let lp = lp.minimize(ExactVector::unit(n, t_index));
    match lp_solve(&lp) {
        LpOutcome::Optimal { value, .. } => value,
        _ => unreachable!("distance LP always has an optimum"),
    }
}

/// Lex-first vertices whose differences to the first are linearly independent.
fn affinely_independent(points: &[ExactVector], want: usize) -> Vec<ExactVector> {
    let mut chosen: Vec<ExactVector> = Vec::new();
    for p in points {
        if chosen.len() == want {
            break;
        }
        let mut trial = chosen.clone();
        trial.push(p.clone());
        if geometry::dimension(&trial) == trial.len() as i64 - 1 {
            chosen = trial;
        }
    }
    chosen
}

/// The case-(i) lower bound `d(L(τ), Ω_A^{≤1}) / ((d_A − 1) α_max)` for an
/// effect whose certain face is a minus-face.
pub fn proof_bound_case_i(
    space: &AbstractStateSpace,
    f: &Effect,
    norm: PolyhedralNorm,
) -> Result<CaseIBound, DisturbanceError> {
    let certain = space.certain_face(f);
    // Validates purity and the minus-face precondition.
    postulate::minus_face_pure_effect(space, &certain)?;
    if !space.is_pure(f) {
        return Err(PostulateError::NotPure(f.to_string()).into());
    }
    let impossible = space.impossible_face(f);
    if impossible.vertices().len() != 1 {
        return Ok(CaseIBound::NotApplicable);
    }
    let d = space.dim();
    let omega_bar = impossible.vertices()[0].clone();
    let mut basis = affinely_independent(certain.vertices(), d - 1);
    debug_assert_eq!(basis.len(), d - 1);
    basis.push(omega_bar);
    let b = ExactMatrix::from_columns(&basis, d);
    let b_inv = b.inverse().expect("F_f and the impossible vertex span A");
    let mut images = basis.clone();
    images[d - 1] = ExactVector::zeros(d);
    let l = ExactMatrix::from_columns(&images, d).mul(&b_inv);

    let mut best: Option<(ExactScalar, ExactVector)> = None;
    for tau in space.states() {
        let dist = distance_to_subnormalized(space, &l.mul_vec(tau), norm);
        if best.as_ref().map_or(true, |(b, _)| dist > *b) {
            best = Some((dist, tau.clone()));
        }
    }
    let (distance, tau) = best.expect("state set is nonempty");
    if distance.is_zero() {
        return Ok(CaseIBound::Bound {
            value: int(0),
            tau,
            distance,
            alpha_max: int(0),
        });
    }
    let alpha = b_inv.mul_vec(&tau);
    let alpha_max = alpha.entries()[..d - 1]
        .iter()
        .map(|a| a.abs())
        .max()
        .expect("d_A ≥ 2");
    let value = &distance / (&alpha_max * int(d as i64 - 1));
    Ok(CaseIBound::Bound {
        value,
        tau,
        distance,
        alpha_max,
    })
}

/// Some minus-face pure effect has positive minimal disturbance.
pub fn verify_theorem2(
    space: &AbstractStateSpace,
    norm: PolyhedralNorm,
) -> Result<bool, DisturbanceError> {
    if space.classify() == Classification::Classical {
        return Err(DisturbanceError::IsClassical);
    }
    for face in geometry::minus_faces(space.omega())? {
        let f = postulate::minus_face_pure_effect(space, &face)?;
        if min_disturbance(space, &f, norm)?.epsilon > int(0) {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{polygon, simplex_model};
    use crate::postulate::minus_face_pure_effect;

    fn edge_effects(space: &AbstractStateSpace) -> Vec<Effect> {
        geometry::minus_faces(space.omega())
            .unwrap()
            .iter()
            .map(|f| minus_face_pure_effect(space, f).unwrap())
            .collect()
    }

    #[test]
    fn zero_disturbance_examples() {
        let tri = simplex_model(3).unwrap();
        let f = tri.effect(ExactVector::from_ints(&[1, 1, 0])).unwrap();
        let diag = ExactMatrix::from_ints(3, 3, &[1, 0, 0, 0, 1, 0, 0, 0, 0]);
        assert_eq!(disturbance(&tri, &f, &diag, PolyhedralNorm::MaxAbs).unwrap(), int(0));
        let u = tri.unit_effect();
        assert_eq!(
            disturbance(&tri, &u, &ExactMatrix::identity(3), PolyhedralNorm::SumAbs).unwrap(),
            int(0)
        );
    }

    #[test]
    fn square_collapse_map_disturbance() {
        let sq = polygon(4).unwrap();
        for f in edge_effects(&sq) {
            let face = sq.certain_face(&f);
            let (sigma, other) = (&face.vertices()[0], &face.vertices()[1]);
            let t = collapse_map(&f, sigma);
            validate_tf(&sq, &f, &t).unwrap();
            let direct = sigma.sub(other).max_abs();
            assert_eq!(disturbance(&sq, &f, &t, PolyhedralNorm::MaxAbs).unwrap(), direct);
            assert_eq!(direct, int(1));
        }
    }

    #[test]
    fn not_in_tf_is_rejected() {
        let sq = polygon(4).unwrap();
        let f = edge_effects(&sq).remove(0);
        assert!(matches!(
            disturbance(&sq, &f, &ExactMatrix::identity(3), PolyhedralNorm::MaxAbs),
            Err(DisturbanceError::NotInTf(_))
        ));
    }

    #[test]
    fn min_disturbance_signs() {
        let tri = simplex_model(3).unwrap();
        for f in edge_effects(&tri) {
            let r = min_disturbance(&tri, &f, PolyhedralNorm::MaxAbs).unwrap();
            assert_eq!(r.epsilon, int(0));
        }
        for n in [4, 5] {
            let p = polygon(n).unwrap();
            for norm in [PolyhedralNorm::MaxAbs, PolyhedralNorm::SumAbs] {
                for f in edge_effects(&p) {
                    let r = min_disturbance(&p, &f, norm).unwrap();
                    assert!(r.epsilon > int(0), "n = {n}");
                    validate_tf(&p, &f, &r.minimizer).unwrap();
                    assert_eq!(disturbance(&p, &f, &r.minimizer, norm).unwrap(), r.epsilon);
                }
            }
        }
        let pent = polygon(5).unwrap();
        let r = min_disturbance(&pent, &pent.unit_effect(), PolyhedralNorm::MaxAbs).unwrap();
        assert_eq!(r.epsilon, int(0));
    }

    #[test]
    fn case_i_bound_examples() {
        let sq = polygon(4).unwrap();
        for f in edge_effects(&sq) {
            assert_eq!(
                proof_bound_case_i(&sq, &f, PolyhedralNorm::MaxAbs).unwrap(),
                CaseIBound::NotApplicable
            );
        }
        let tri = simplex_model(3).unwrap();
        for f in edge_effects(&tri) {
            let b = proof_bound_case_i(&tri, &f, PolyhedralNorm::MaxAbs).unwrap();
            assert_eq!(b.value(), Some(&int(0)));
        }
        let pent = polygon(5).unwrap();
        for f in edge_effects(&pent) {
            let b = proof_bound_case_i(&pent, &f, PolyhedralNorm::MaxAbs).unwrap();
            assert!(b.value().unwrap() > &int(0));
        }
    }

    #[test]
    fn lemma6_examples() {
        let tri = simplex_model(3).unwrap();
        let f = tri.effect(ExactVector::from_ints(&[1, 1, 0])).unwrap();
        let diag = ExactMatrix::from_ints(3, 3, &[1, 0, 0, 0, 1, 0, 0, 0, 0]);
        assert!(lemma6_dimension_check(&tri, &f, &diag).unwrap());
        let sq = polygon(4).unwrap();
        for f in edge_effects(&sq) {
            for t in sample_tf(&sq, &f, 5, 7).unwrap() {
                validate_tf(&sq, &f, &t).unwrap();
                assert!(lemma6_dimension_check(&sq, &f, &t).unwrap());
            }
        }
    }

    #[test]
    fn theorem2_examples() {
        assert!(verify_theorem2(&polygon(4).unwrap(), PolyhedralNorm::MaxAbs).unwrap());
        assert_eq!(
            verify_theorem2(&simplex_model(3).unwrap(), PolyhedralNorm::MaxAbs),
            Err(DisturbanceError::IsClassical)
        );
    }

    #[test]
    fn norm_parsing() {
        assert_eq!("linf".parse::<PolyhedralNorm>().unwrap(), PolyhedralNorm::MaxAbs);
        assert_eq!("l1".parse::<PolyhedralNorm>().unwrap(), PolyhedralNorm::SumAbs);
        assert!("l2".parse::<PolyhedralNorm>().is_err());
    }
}
