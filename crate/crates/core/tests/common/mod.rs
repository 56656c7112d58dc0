//! Shared fixtures and brute-force oracles for the integration tests.
//!
//! The oracles deliberately avoid the double-description code and the
//! simplex solver: they enumerate constraint or point subsets and use only
//! exact linear solves and sign checks.

#![allow(dead_code)]

use gptlab_core::exact::{int, Constraint, ExactMatrix, ExactScalar, ExactVector, LinearSolution};
use gptlab_core::models::{polygon, simplex_model, square_pyramid};
use gptlab_core::AbstractStateSpace;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Every zoo model that is cheap enough for full analysis.
pub fn small_zoo() -> Vec<(String, AbstractStateSpace)> {
    let mut out = Vec::new();
    for n in 3..=9 {
        out.push((format!("polygon:{n}"), polygon(n).unwrap()));
    }
    for k in 1..=5 {
        out.push((format!("simplex:{k}"), simplex_model(k).unwrap()));
    }
    out.push(("square_pyramid".into(), square_pyramid()));
    out
}

/// Index sets of size `k` drawn from `0..n`, in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Vertices of `{x : a·x ≤ b}` in `ℝ^d` by trying every `d`-subset of
/// constraints as the tight set.
pub fn brute_force_vertices(d: usize, constraints: &[Constraint]) -> Vec<ExactVector> {
    let mut found = Vec::new();
    for set in subsets(constraints.len(), d) {
        let rows: Vec<ExactVector> = set.iter().map(|&i| constraints[i].coeffs.clone()).collect();
        let rhs: ExactVector = set.iter().map(|&i| constraints[i].rhs.clone()).collect();
        let m = ExactMatrix::from_rows(&rows, d);
        if m.rank() < d {
            continue;
        }
        let Ok(LinearSolution::Unique(x)) = m.solve(&rhs) else {
            continue;
        };
        if constraints.iter().all(|c| c.coeffs.dot(&x) <= c.rhs) {
            found.push(x);
        }
    }
    found.sort();
    found.dedup();
    found
}

/// Facets of a full-dimensional `conv(points)` in `ℝ^d` by trying every
/// hyperplane through `d` affinely independent points. Each facet is scaled
/// so its first nonzero normal entry has absolute value one.
pub fn brute_force_facets(d: usize, points: &[ExactVector]) -> Vec<Constraint> {
    let mut found: Vec<Constraint> = Vec::new();
    for set in subsets(points.len(), d) {
        let base = &points[set[0]];
        let diffs: Vec<ExactVector> = set[1..].iter().map(|&i| points[i].sub(base)).collect();
        let m = ExactMatrix::from_rows(&diffs, d);
        if m.rank() != d - 1 {
            continue;
        }
        let normal = m.nullspace().remove(0);
        let level = normal.dot(base);
        let above = points.iter().any(|p| normal.dot(p) > level);
        let below = points.iter().any(|p| normal.dot(p) < level);
        let (a, b) = match (above, below) {
            (true, true) => continue,
            (false, _) => (normal, level),
            (true, false) => (normal.neg(), -level),
        };
        let lead = a.iter().find(|x| **x != int(0)).unwrap().clone();
        let scale = if lead < int(0) { -lead } else { lead };
        let c = Constraint::new(a.scale(&(int(1) / &scale)), &b / &scale);
        if !found.contains(&c) {
            found.push(c);
        }
    }
    found
}

/// Random rational point with coordinates `p/q`, `|p| ≤ 6`, `1 ≤ q ≤ 3`.
pub fn random_point(rng: &mut ChaCha8Rng, d: usize) -> ExactVector {
    (0..d)
        .map(|_| {
            let p: i64 = rng.gen_range(-6..=6);
            let q: i64 = rng.gen_range(1..=3);
            ExactScalar::new(p.into(), q.into())
        })
        .collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Correlator coordinates of every vertex of the two-input two-output
/// no-signaling polytope, built from full probability tables: the 16 local
/// deterministic boxes and the 8 relabelled PR boxes.
pub fn nosignaling_oracle_vertices() -> Vec<ExactVector> {
    let half = ExactScalar::new(1.into(), 2.into());
    let mut tables = Vec::new();
    for la in 0..4usize {
        for lb in 0..4usize {
            let mut t = [[[[int(0), int(0)], [int(0), int(0)]], [[int(0), int(0)], [int(0), int(0)]]],
                         [[[int(0), int(0)], [int(0), int(0)]], [[int(0), int(0)], [int(0), int(0)]]]];
            for x in 0..2 {
                for y in 0..2 {
                    // Local strategy: output bit x of la, bit y of lb.
                    let a = (la >> x) & 1;
                    let b = (lb >> y) & 1;
                    t[x][y][a][b] = int(1);
                }
            }
            tables.push(t);
        }
    }
    for alpha in 0..2usize {
        for beta in 0..2usize {
            for gamma in 0..2usize {
                let mut t = [[[[int(0), int(0)], [int(0), int(0)]], [[int(0), int(0)], [int(0), int(0)]]],
                             [[[int(0), int(0)], [int(0), int(0)]], [[int(0), int(0)], [int(0), int(0)]]]];
                for x in 0..2 {
                    for y in 0..2 {
                        for a in 0..2 {
                            for b in 0..2 {
                                if (a ^ b) == ((x & y) ^ (alpha & x) ^ (beta & y) ^ gamma) {
                                    t[x][y][a][b] = half.clone();
                                }
                            }
                        }
                    }
                }
                tables.push(t);
            }
        }
    }
    let mut pts: Vec<ExactVector> = tables
        .iter()
        .map(|t| gptlab_core::models::correlators(t).extended(int(1)))
        .collect();
    pts.sort();
    pts.dedup();
    pts
}
