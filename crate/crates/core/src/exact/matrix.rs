use std::fmt;

use num_traits::{One, Zero};
use serde::{de::Error as _, Deserialize, Deserializer, Serialize, Serializer};

use super::scalar::{int, ExactScalar};
use super::vector::ExactVector;
use super::KernelError;

/// Dense row-major rational matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<ExactScalar>,
}

/// Result of reducing a matrix to reduced row echelon form.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub matrix: ExactMatrix,
    /// Pivot column of each nonzero row, in row order.
    pub pivots: Vec<usize>,
}

/// Solution set of a consistent linear system `m x = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearSolution {
    Unique(ExactVector),
    /// `particular + span(nullspace)`; the nullspace basis is linearly independent.
    Family {
        particular: ExactVector,
        nullspace: Vec<ExactVector>,
    },
}

impl LinearSolution {
    pub fn particular(&self) -> &ExactVector {
        match self {
            LinearSolution::Unique(x) => x,
            LinearSolution::Family { particular, .. } => particular,
        }
    }

    pub fn nullspace(&self) -> &[ExactVector] {
        match self {
            LinearSolution::Unique(_) => &[],
            LinearSolution::Family { nullspace, .. } => nullspace,
        }
    }
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![ExactScalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, int(1));
        }
        m
    }

    pub fn from_entries(rows: usize, cols: usize, data: Vec<ExactScalar>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must equal rows * cols");
        Self { rows, cols, data }
    }

    /// Builds a matrix from row vectors; `cols` is needed for the zero-row case.
    pub fn from_rows(rows: &[ExactVector], cols: usize) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.dim(), cols, "row length mismatch");
            data.extend(r.iter().cloned());
        }
        Self {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn from_columns(columns: &[ExactVector], rows: usize) -> Self {
        Self::from_rows(columns, rows).transpose()
    }

    pub fn from_ints(rows: usize, cols: usize, values: &[i64]) -> Self {
        Self::from_entries(rows, cols, values.iter().map(|&v| int(v)).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[ExactScalar] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> &ExactScalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: ExactScalar) {
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> ExactVector {
        ExactVector::new(self.data[r * self.cols..(r + 1) * self.cols].to_vec())
    }

    pub fn column(&self, c: usize) -> ExactVector {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<ExactVector> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, x: &ExactVector) -> ExactVector {
        assert_eq!(self.cols, x.dim(), "dimension mismatch in matrix-vector product");
        (0..self.rows)
            .map(|r| {
                let mut acc = ExactScalar::zero();
                for c in 0..self.cols {
                    let a = self.get(r, c);
                    if !a.is_zero() && !x[c].is_zero() {
                        acc += a * &x[c];
                    }
                }
                acc
            })
            .collect()
    }

    /// Row vector times matrix: `yᵀ M`.
    pub fn left_mul_vec(&self, y: &ExactVector) -> ExactVector {
        assert_eq!(self.rows, y.dim(), "dimension mismatch in vector-matrix product");
        let mut out = ExactVector::zeros(self.cols);
        for r in 0..self.rows {
            if y[r].is_zero() {
                continue;
            }
            for c in 0..self.cols {
                let a = self.get(r, c);
                if !a.is_zero() {
                    out[c] += &y[r] * a;
                }
            }
        }
        out
    }

    pub fn mul(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        let idx = r * other.cols + c;
                        out.data[idx] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    /// Gauss-Jordan elimination with the first nonzero entry as pivot.
    pub fn echelon(&self) -> Echelon {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.get(row, col).recip();
            for c in col..m.cols {
                let v = m.get(row, c) * &inv;
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r == row || m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col).clone();
                for c in col..m.cols {
                    let pv = m.get(row, c);
                    if pv.is_zero() {
                        continue;
                    }
                    let v = m.get(r, c) - &factor * pv;
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        Echelon { matrix: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Basis of `{x : M x = 0}`, one vector per free column, in column order.
    pub fn nullspace(&self) -> Vec<ExactVector> {
        let ech = self.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !ech.pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = ExactVector::zeros(self.cols);
                v[fc] = ExactScalar::one();
                for (r, &pc) in ech.pivots.iter().enumerate() {
                    v[pc] = -ech.matrix.get(r, fc).clone();
                }
                v
            })
            .collect()
    }

    /// Solves `M x = b` exactly. Returns the unique solution, an affine family
    /// when underdetermined, or `NoSolution` when `b` is outside the column space.
    pub fn solve(&self, b: &ExactVector) -> Result<LinearSolution, KernelError> {
        if b.dim() != self.rows {
            return Err(KernelError::DimensionMismatch {
                expected: self.rows,
                found: b.dim(),
            });
        }
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, b[r].clone());
        }
        let ech = aug.echelon();
        if ech.pivots.last() == Some(&self.cols) {
            return Err(KernelError::NoSolution);
        }
        let mut particular = ExactVector::zeros(self.cols);
        for (r, &pc) in ech.pivots.iter().enumerate() {
            particular[pc] = ech.matrix.get(r, self.cols).clone();
        }
        let nullspace = self.nullspace();
        if nullspace.is_empty() {
            Ok(LinearSolution::Unique(particular))
        } else {
            Ok(LinearSolution::Family {
                particular,
                nullspace,
            })
        }
    }

    pub fn inverse(&self) -> Option<ExactMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, ExactScalar::one());
        }
        let ech = aug.echelon();
        if ech.pivots.len() < n || ech.pivots[n - 1] >= n {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, ech.matrix.get(r, n + c).clone());
            }
        }
        Some(inv)
    }

    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        self.row_vectors().iter().map(ExactVector::to_strings).collect()
    }
}

/// Solves `m x = b`; free-function form of [`ExactMatrix::solve`].
pub fn solve_linear(m: &ExactMatrix, b: &ExactVector) -> Result<LinearSolution, KernelError> {
    m.solve(b)
}

pub fn rank(m: &ExactMatrix) -> usize {
    m.rank()
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            writeln!(f, "{}", self.row(r))?;
        }
        Ok(())
    }
}

impl Serialize for ExactMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.row_vectors().serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExactMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows = Vec::<ExactVector>::deserialize(d)?;
        let cols = rows.first().map_or(0, ExactVector::dim);
        if rows.iter().any(|r| r.dim() != cols) {
            return Err(D::Error::custom("ragged matrix rows"));
        }
        Ok(Self::from_rows(&rows, cols))
    }
}
