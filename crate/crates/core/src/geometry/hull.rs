//! Conversions between vertex and inequality descriptions, and LP-backed
//! membership tests with checkable certificates.

use num_traits::{Signed, Zero};

use crate::exact::{
    int, lp_solve, Constraint, ExactMatrix, ExactScalar, ExactVector, LinearSolution, LpOutcome,
    LpProblem,
};

use super::affine::affine_hull;
use super::dd::extreme_rays;
use super::{GeometryError, HPolytope, VPolytope};

/// Whether the weights of a combination must sum to one or at most one.
/// The second case describes `conv(points ∪ {0})`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Hull {
    Convex,
    WithOrigin,
}

/// Outcome of a membership query, each side carrying its proof.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    /// Nonnegative weights reproducing the query point.
    Inside(ExactVector),
    /// `normal·p ≤ offset` for every generator (and the origin, for
    /// [`Hull::WithOrigin`]) while `normal·x > offset`.
    Outside {
        normal: ExactVector,
        offset: ExactScalar,
    },
}

impl Membership {
    pub fn is_inside(&self) -> bool {
        matches!(self, Membership::Inside(_))
    }
}

/// Decides `x ∈ conv(points)` (or `conv(points ∪ {0})`) by LP feasibility.
pub fn membership(points: &[ExactVector], x: &ExactVector, hull: Hull) -> Membership {
    let k = points.len();
    let n = x.dim();
    let mut lp = LpProblem::new(k);
    for i in 0..k {
        lp.add_le(ExactVector::unit(k, i).neg(), int(0));
    }
    let ones: ExactVector = (0..k).map(|_| int(1)).collect();
    match hull {
        Hull::Convex => lp.add_eq(ones, int(1)),
        Hull::WithOrigin => lp.add_le(ones, int(1)),
    }
    for c in 0..n {
        let row: ExactVector = points.iter().map(|p| p[c].clone()).collect();
        lp.add_eq(row, x[c].clone());
    }
    match lp_solve(&lp) {
        LpOutcome::Feasible { point } | LpOutcome::Optimal { point, .. } => {
            Membership::Inside(point)
        }
        LpOutcome::Infeasible { farkas } => {
            let eqs = &farkas.equality_multipliers;
            let (offset, coord_start) = match hull {
                Hull::Convex => (eqs[0].clone(), 1),
                Hull::WithOrigin => (farkas.inequality_multipliers[k].clone(), 0),
            };
            let normal: ExactVector = (0..n).map(|c| -eqs[coord_start + c].clone()).collect();
            Membership::Outside { normal, offset }
        }
        LpOutcome::Unbounded { .. } => unreachable!("feasibility problems have no objective"),
    }
}

/// Checks a membership certificate using arithmetic only.
pub fn verify_membership(
    points: &[ExactVector],
    x: &ExactVector,
    hull: Hull,
    cert: &Membership,
) -> bool {
    match cert {
        Membership::Inside(w) => {
            if w.dim() != points.len() || w.iter().any(Signed::is_negative) {
                return false;
            }
            let total: ExactScalar = w.iter().sum();
            let weight_ok = match hull {
                Hull::Convex => total == int(1),
                Hull::WithOrigin => total <= int(1),
            };
            let mut combo = ExactVector::zeros(x.dim());
            for (p, wi) in points.iter().zip(w.iter()) {
                if !wi.is_zero() {
                    combo = combo.add(&p.scale(wi));
                }
            }
            weight_ok && combo == *x
        }
        Membership::Outside { normal, offset } => {
            let origin_ok = match hull {
                Hull::Convex => true,
                Hull::WithOrigin => !offset.is_negative(),
            };
            origin_ok
                && points.iter().all(|p| normal.dot(p) <= *offset)
                && normal.dot(x) > *offset
        }
    }
}

pub fn contains(p: &VPolytope, x: &ExactVector) -> Result<bool, GeometryError> {
    if x.dim() != p.ambient_dim() {
        return Err(GeometryError::DimensionMismatch {
            expected: p.ambient_dim(),
            found: x.dim(),
        });
    }
    if p.is_empty() {
        return Ok(false);
    }
    Ok(membership(p.vertices(), x, Hull::Convex).is_inside())
}

/// Drops every point that is a convex combination of the others.
pub fn reduce_to_vertices(ambient_dim: usize, points: &[ExactVector]) -> VPolytope {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    let mut keep = vec![true; pts.len()];
    for i in 0..pts.len() {
        let others: Vec<ExactVector> = pts
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i && keep[j])
            .map(|(_, p)| p.clone())
            .collect();
        if !others.is_empty() && membership(&others, &pts[i], Hull::Convex).is_inside() {
            keep[i] = false;
        }
    }
    let vertices = pts
        .into_iter()
        .zip(keep)
        .filter_map(|(p, k)| k.then_some(p))
        .collect();
    VPolytope::from_extreme_points(ambient_dim, vertices)
}

/// Facet description. Equalities cut out the affine hull; each inequality
/// is facet-defining, its normal lies on the pivot coordinates of the hull,
/// and it is scaled so the leading coefficient has absolute value one.
pub fn v_to_h(p: &VPolytope) -> Result<HPolytope, GeometryError> {
    let hull = affine_hull(p.vertices())?;
    let n = p.ambient_dim();
    let equalities = hull.equations();
    let r = hull.dim();
    if r == 0 {
        return Ok(HPolytope::new(n, Vec::new(), equalities));
    }
    // Homogenised local coordinates (y, 1); a facet is an extreme ray (c, c0)
    // of {c·y + c0 ≥ 0 for every vertex}.
    let rows: Vec<ExactVector> = p
        .vertices()
        .iter()
        .map(|v| hull.local_coordinates(v).extended(int(1)))
        .collect();
    let rays = extreme_rays(&rows, r + 1);
    let mut inequalities: Vec<Constraint> = rays
        .iter()
        .map(|ray| {
            let mut a = ExactVector::zeros(n);
            for (k, &pc) in hull.pivots().iter().enumerate() {
                a[pc] = -ray[k].clone();
            }
            let b = &ray[r] + a.dot(hull.basepoint());
            let mut full = a.extended(b);
            full = full.normalize_leading();
            let b = full[n].clone();
            let a: ExactVector = full.entries()[..n].iter().cloned().collect();
            Constraint::new(a, b)
        })
        .collect();
    inequalities.sort_by(|x, y| (&x.coeffs, &x.rhs).cmp(&(&y.coeffs, &y.rhs)));
    inequalities.dedup();
    Ok(HPolytope::new(n, inequalities, equalities))
}

/// Vertex enumeration of a bounded, nonempty H-polytope.
pub fn h_to_v(h: &HPolytope) -> Result<VPolytope, GeometryError> {
    let n = h.ambient_dim();
    let eq_rows: Vec<ExactVector> = h.equalities().iter().map(|c| c.coeffs.clone()).collect();
    let eq_rhs: ExactVector = h.equalities().iter().map(|c| c.rhs.clone()).collect();
    let solution = if eq_rows.is_empty() {
        LinearSolution::Family {
            particular: ExactVector::zeros(n),
            nullspace: (0..n).map(|i| ExactVector::unit(n, i)).collect(),
        }
    } else {
        ExactMatrix::from_rows(&eq_rows, n)
            .solve(&eq_rhs)
            .map_err(|_| GeometryError::EmptyInput)?
    };
    let x0 = solution.particular().clone();
    let basis = solution.nullspace().to_vec();
    let k = basis.len();
    if k == 0 {
        return if h.inequalities().iter().all(|c| c.coeffs.dot(&x0) <= c.rhs) {
            Ok(VPolytope::from_extreme_points(n, vec![x0]))
        } else {
            Err(GeometryError::EmptyInput)
        };
    }
    // Restrict to z-coordinates: x = x0 + K z.
    let restricted: Vec<(ExactVector, ExactScalar)> = h
        .inequalities()
        .iter()
        .map(|c| {
            let a: ExactVector = basis.iter().map(|b| c.coeffs.dot(b)).collect();
            (a, &c.rhs - c.coeffs.dot(&x0))
        })
        .collect();
    let mut feas = LpProblem::new(k);
    for (a, b) in &restricted {
        feas.add_le(a.clone(), b.clone());
    }
    if lp_solve(&feas).is_infeasible() {
        return Err(GeometryError::EmptyInput);
    }
    let a_rows: Vec<ExactVector> = restricted.iter().map(|(a, _)| a.clone()).collect();
    if ExactMatrix::from_rows(&a_rows, k).rank() < k {
        return Err(GeometryError::UnboundedInput);
    }
    // Cone {(z, s) : s·b − a·z ≥ 0, s ≥ 0}; vertices are rays with s > 0.
    let mut rows: Vec<ExactVector> = restricted
        .iter()
        .map(|(a, b)| a.neg().extended(b.clone()))
        .collect();
    rows.push(ExactVector::unit(k + 1, k));
    let rays = extreme_rays(&rows, k + 1);
    let mut vertices = Vec::with_capacity(rays.len());
    for ray in rays {
        let s = &ray[k];
        if s.is_zero() {
            return Err(GeometryError::UnboundedInput);
        }
        let mut x = x0.clone();
        for (zi, b) in ray.entries()[..k].iter().zip(&basis) {
            if !zi.is_zero() {
                x = x.add(&b.scale(&(zi / s)));
            }
        }
        vertices.push(x);
    }
    Ok(VPolytope::from_extreme_points(n, vertices))
}
