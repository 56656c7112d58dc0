//! Double description: extreme rays of a pointed polyhedral cone
//! `{x : gᵢ·x ≥ 0}` given by its constraint rows.
//!
//! Rows are inserted one at a time. Adjacency of a positive/negative ray
//! pair uses the combinatorial test: their common zero set must have at least
//! `dim − 2` rows and must not be contained in the zero set of any third ray.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::exact::{ExactMatrix, ExactScalar, ExactVector};

#[derive(Clone, Debug)]
struct ZeroSet(Vec<u64>);

impl ZeroSet {
    fn new(len: usize) -> Self {
        Self(vec![0; len.div_ceil(64)])
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn intersection(&self, other: &ZeroSet) -> ZeroSet {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn is_subset_of(&self, other: &ZeroSet) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
}

#[derive(Clone, Debug)]
struct Ray {
    dir: ExactVector,
    zeros: ZeroSet,
}

/// Rescales to the primitive integer vector on the same ray.
pub(crate) fn primitive(v: &ExactVector) -> ExactVector {
    let mut lcm = BigInt::one();
    for x in v.iter() {
        lcm = lcm.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return v.clone();
    }
    ints.into_iter()
        .map(|x| BigRational::from_integer(x / &g))
        .collect()
}

/// Extreme rays of `{x ∈ ℝ^dim : row·x ≥ 0 for every row}`.
///
/// The row matrix must have full column rank (the cone is pointed). Rays are
/// returned as primitive integer vectors in lexicographic order.
pub(crate) fn extreme_rays(rows: &[ExactVector], dim: usize) -> Vec<ExactVector> {
    assert!(dim > 0);
    // Greedy choice of `dim` independent rows for the starting simplicial cone.
    let mut chosen: Vec<usize> = Vec::with_capacity(dim);
    let mut chosen_rows: Vec<ExactVector> = Vec::with_capacity(dim);
    for (i, row) in rows.iter().enumerate() {
        if chosen.len() == dim {
            break;
        }
        chosen_rows.push(row.clone());
        if ExactMatrix::from_rows(&chosen_rows, dim).rank() == chosen_rows.len() {
            chosen.push(i);
        } else {
            chosen_rows.pop();
        }
    }
    assert_eq!(chosen.len(), dim, "constraint rows must have full column rank");
    let inv = ExactMatrix::from_rows(&chosen_rows, dim)
        .inverse()
        .expect("independent rows");

    let total = rows.len();
    let mut rays: Vec<Ray> = (0..dim)
        .map(|k| {
            let mut zeros = ZeroSet::new(total);
            for (j, &row_idx) in chosen.iter().enumerate() {
                if j != k {
                    zeros.insert(row_idx);
                }
            }
            Ray {
                dir: primitive(&inv.column(k)),
                zeros,
            }
        })
        .collect();

    let mut processed = vec![false; total];
    for &i in &chosen {
        processed[i] = true;
    }
    for (i, row) in rows.iter().enumerate() {
        if processed[i] {
            continue;
        }
        processed[i] = true;
        let values: Vec<ExactScalar> = rays.iter().map(|r| row.dot(&r.dir)).collect();
        let mut next: Vec<Ray> = Vec::with_capacity(rays.len());
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        for (k, val) in values.iter().enumerate() {
            if val.is_positive() {
                pos.push(k);
                next.push(rays[k].clone());
            } else if val.is_zero() {
                let mut r = rays[k].clone();
                r.zeros.insert(i);
                next.push(r);
            } else {
                neg.push(k);
            }
        }
        for &p in &pos {
            for &n in &neg {
                let common = rays[p].zeros.intersection(&rays[n].zeros);
                if common.count() + 2 < dim {
                    continue;
                }
                let blocked = rays
                    .iter()
                    .enumerate()
                    .any(|(k, r)| k != p && k != n && common.is_subset_of(&r.zeros));
                if blocked {
                    continue;
                }
                let dir = rays[n]
                    .dir
                    .scale(&values[p])
                    .sub(&rays[p].dir.scale(&values[n]));
                let mut zeros = common;
                zeros.insert(i);
                next.push(Ray {
                    dir: primitive(&dir),
                    zeros,
                });
            }
        }
        rays = next;
    }
    let mut out: Vec<ExactVector> = rays.into_iter().map(|r| r.dir).collect();
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orthant_rays_are_unit_vectors() {
        let rows: Vec<_> = (0..3).map(|i| ExactVector::unit(3, i)).collect();
        let rays = extreme_rays(&rows, 3);
        assert_eq!(rays.len(), 3);
        for r in rays {
            assert_eq!(r.iter().filter(|x| !x.is_zero()).count(), 1);
        }
    }

    #[test]
    fn square_cone_has_four_rays() {
        // Cone over the square [-1,1]² at height 1: x3 ± x1 ≥ 0, x3 ± x2 ≥ 0.
        let rows = vec![
            ExactVector::from_ints(&[1, 0, 1]),
            ExactVector::from_ints(&[-1, 0, 1]),
            ExactVector::from_ints(&[0, 1, 1]),
            ExactVector::from_ints(&[0, -1, 1]),
        ];
        let rays = extreme_rays(&rows, 3);
        assert_eq!(
            rays,
            vec![
                ExactVector::from_ints(&[-1, -1, 1]),
                ExactVector::from_ints(&[-1, 1, 1]),
                ExactVector::from_ints(&[1, -1, 1]),
                ExactVector::from_ints(&[1, 1, 1]),
            ]
        );
    }

    #[test]
    fn primitive_clears_denominators() {
        let v = ExactVector::new(vec![
            crate::exact::ratio(1, 2),
            crate::exact::ratio(-3, 4),
        ]);
        assert_eq!(primitive(&v), ExactVector::from_ints(&[2, -3]));
    }
}
