use crate::exact::{Constraint, ExactMatrix, ExactVector};

use super::GeometryError;

/// `basepoint + span(directions)`. The directions are the nonzero rows of a
/// reduced row echelon form, so they are independent and canonical for the
/// subspace they span.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSubspace {
    basepoint: ExactVector,
    directions: Vec<ExactVector>,
    pivots: Vec<usize>,
}

impl AffineSubspace {
    pub fn new(basepoint: ExactVector, directions: &[ExactVector]) -> Self {
        let n = basepoint.dim();
        let ech = ExactMatrix::from_rows(directions, n).echelon();
        let dirs = (0..ech.pivots.len()).map(|r| ech.matrix.row(r)).collect();
        Self {
            basepoint,
            directions: dirs,
            pivots: ech.pivots,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.basepoint.dim()
    }

    pub fn dim(&self) -> usize {
        self.directions.len()
    }

    pub fn basepoint(&self) -> &ExactVector {
        &self.basepoint
    }

    pub fn directions(&self) -> &[ExactVector] {
        &self.directions
    }

    /// Coordinates of `x − basepoint` in the direction basis, assuming
    /// `x` lies in the subspace. Because the basis is in reduced echelon form
    /// these are just the pivot entries.
    pub(crate) fn local_coordinates(&self, x: &ExactVector) -> ExactVector {
        let d = x.sub(&self.basepoint);
        self.pivots.iter().map(|&p| d[p].clone()).collect()
    }

    pub(crate) fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn contains(&self, x: &ExactVector) -> bool {
        let d = x.sub(&self.basepoint);
        let mut rows = self.directions.clone();
        rows.push(d);
        ExactMatrix::from_rows(&rows, self.ambient_dim()).rank() == self.dim()
    }

    /// Equations `a·x = b` cutting out the subspace, in reduced echelon form
    /// over `[a | b]`.
    pub fn equations(&self) -> Vec<Constraint> {
        let n = self.ambient_dim();
        let normals = ExactMatrix::from_rows(&self.directions, n).nullspace();
        if normals.is_empty() {
            return Vec::new();
        }
        let ech = ExactMatrix::from_rows(&normals, n).echelon();
        (0..ech.pivots.len())
            .map(|r| {
                let a = ech.matrix.row(r);
                let b = a.dot(&self.basepoint);
                Constraint::new(a, b)
            })
            .collect()
    }
}

/// Smallest affine subspace containing `points`.
pub fn affine_hull(points: &[ExactVector]) -> Result<AffineSubspace, GeometryError> {
    let base = points.first().ok_or(GeometryError::EmptyInput)?;
    let diffs: Vec<ExactVector> = points[1..].iter().map(|p| p.sub(base)).collect();
    Ok(AffineSubspace::new(base.clone(), &diffs))
}

/// Maximal number of affinely independent points minus one; `−1` for the
/// empty set.
pub fn dimension(points: &[ExactVector]) -> i64 {
    match affine_hull(points) {
        Ok(s) => s.dim() as i64,
        Err(_) => -1,
    }
}
