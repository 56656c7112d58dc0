use crate::exact::{ExactScalar, ExactVector};

use super::affine::{affine_hull, AffineSubspace};
use super::hull::{h_to_v, reduce_to_vertices};
use super::{GeometryError, VPolytope};

/// The face of `p` where `f·x = c`, given that `f·x ≤ c` on `p`.
pub fn exposed_face(
    p: &VPolytope,
    f: &ExactVector,
    c: &ExactScalar,
) -> Result<VPolytope, GeometryError> {
    if f.dim() != p.ambient_dim() {
        return Err(GeometryError::DimensionMismatch {
            expected: p.ambient_dim(),
            found: f.dim(),
        });
    }
    let mut tight = Vec::new();
    for v in p.vertices() {
        let val = f.dot(v);
        if val > *c {
            return Err(GeometryError::NotSupporting);
        }
        if val == *c {
            tight.push(v.clone());
        }
    }
    if tight.is_empty() {
        return Err(GeometryError::NotSupporting);
    }
    Ok(VPolytope::from_extreme_points(p.ambient_dim(), tight))
}

/// One face per facet inequality, in the canonical inequality order.
pub fn minus_faces(p: &VPolytope) -> Result<Vec<VPolytope>, GeometryError> {
    if p.dimension() < 1 {
        return Err(GeometryError::ZeroDimensionalInput);
    }
    let h = p.h_representation()?;
    let faces = h
        .inequalities()
        .iter()
        .map(|c| {
            let tight = p
                .vertices()
                .iter()
                .filter(|v| c.coeffs.dot(v) == c.rhs)
                .cloned()
                .collect();
            VPolytope::from_extreme_points(p.ambient_dim(), tight)
        })
        .collect();
    Ok(faces)
}

pub fn is_simplex(p: &VPolytope) -> bool {
    p.vertices().len() as i64 == p.dimension() + 1
}

/// A minus-face together with the single vertex of the polytope outside it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PyramidApex {
    pub face: VPolytope,
    pub apex: ExactVector,
}

/// `Some(apexes)` when `p = conv(F ∪ {a_F})` for every minus-face `F`, i.e.
/// exactly one vertex of `p` lies outside each minus-face; `None` otherwise.
pub fn is_uniformly_pyramidal(p: &VPolytope) -> Result<Option<Vec<PyramidApex>>, GeometryError> {
    let faces = minus_faces(p)?;
    let mut apexes = Vec::with_capacity(faces.len());
    for face in faces {
        let mut outside = p.vertices().iter().filter(|v| face.index_of(v).is_none());
        match (outside.next(), outside.next()) {
            (Some(apex), None) => {
                let apex = apex.clone();
                apexes.push(PyramidApex { face, apex });
            }
            _ => return Ok(None),
        }
    }
    Ok(Some(apexes))
}

pub fn conv_union(p: &VPolytope, q: &VPolytope) -> Result<VPolytope, GeometryError> {
    if p.ambient_dim() != q.ambient_dim() {
        return Err(GeometryError::DimensionMismatch {
            expected: p.ambient_dim(),
            found: q.ambient_dim(),
        });
    }
    let mut pts = p.vertices().to_vec();
    pts.extend(q.vertices().iter().cloned());
    Ok(reduce_to_vertices(p.ambient_dim(), &pts))
}

/// `p ∩ s` in vertex form; empty when they do not meet.
pub fn intersect_with_affine(
    p: &VPolytope,
    s: &AffineSubspace,
) -> Result<VPolytope, GeometryError> {
    if p.ambient_dim() != s.ambient_dim() {
        return Err(GeometryError::DimensionMismatch {
            expected: p.ambient_dim(),
            found: s.ambient_dim(),
        });
    }
    if p.is_empty() {
        return Ok(p.clone());
    }
    let h = p.h_representation()?.with_equalities(s.equations());
    match h_to_v(&h) {
        Ok(v) => Ok(v),
        Err(GeometryError::EmptyInput) => Ok(VPolytope::empty(p.ambient_dim())),
        Err(e) => Err(e),
    }
}

/// Exact face test for polytopes: the vertices of `f` are vertices of `p` and
/// `f` is the intersection of the facets of `p` that contain it. The empty set
/// and `p` itself count as faces.
pub fn is_face(p: &VPolytope, f: &VPolytope) -> Result<bool, GeometryError> {
    if f.is_empty() || f == p {
        return Ok(true);
    }
    if f.vertices().iter().any(|v| p.index_of(v).is_none()) {
        return Ok(false);
    }
    if p.dimension() < 1 {
        return Ok(false);
    }
    let h = p.h_representation()?;
    let mut common: Vec<bool> = vec![true; p.vertices().len()];
    for c in h.inequalities() {
        if f.vertices().iter().all(|v| c.coeffs.dot(v) == c.rhs) {
            for (keep, v) in common.iter_mut().zip(p.vertices()) {
                *keep &= c.coeffs.dot(v) == c.rhs;
            }
        }
    }
    Ok(common.iter().filter(|&&k| k).count() == f.vertices().len())
}

/// `aff(f) ∩ p = f`, the affine-slice property every face has.
pub fn is_affine_slice(p: &VPolytope, f: &VPolytope) -> Result<bool, GeometryError> {
    if f.is_empty() {
        return Ok(true);
    }
    let s = affine_hull(f.vertices())?;
    Ok(intersect_with_affine(p, &s)? == *f)
}
