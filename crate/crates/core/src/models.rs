//! Built-in state spaces with exact rational coordinates.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use crate::exact::{int, ratio, ExactScalar, ExactVector};
use crate::geometry::VPolytope;
use crate::state_space::{AbstractStateSpace, StateSpaceError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("a polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("a simplex model needs k >= 1")]
    EmptySimplex,
    #[error("unknown model {0:?}")]
    UnknownModel(String),
    #[error("model {name:?} expects {expected}")]
    BadParameter { name: String, expected: &'static str },
    #[error(transparent)]
    StateSpace(#[from] StateSpaceError),
}

/// Named generator with integer parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelSpec {
    pub name: String,
    pub parameters: BTreeMap<String, i64>,
    pub description: String,
}

impl ModelSpec {
    /// Parses `zoo:<name>[:<param>]`, or `<name>[:<param>]` without the prefix.
    pub fn parse(reference: &str) -> Result<ModelSpec, ModelError> {
        let body = reference.strip_prefix("zoo:").unwrap_or(reference);
        let mut parts = body.splitn(2, ':');
        let name = parts.next().unwrap_or_default().to_string();
        let param = parts.next();
        let bad = |expected| ModelError::BadParameter {
            name: name.clone(),
            expected,
        };
        let (key, needs_param, description) = match name.as_str() {
            "polygon" => ("n", true, "convex n-gon with rational vertices on the unit circle"),
            "simplex" => ("k", true, "classical theory with k perfectly distinguishable states"),
            "square_pyramid" => ("", false, "pyramid over a square, lifted to dim_A = 4"),
            "nosignaling" => ("", false, "bipartite no-signaling boxes, two inputs and two outputs"),
            _ => return Err(ModelError::UnknownModel(name)),
        };
        let mut parameters = BTreeMap::new();
        match (needs_param, param) {
            (true, Some(p)) => {
                let value = p.parse::<i64>().map_err(|_| bad("an integer parameter"))?;
                parameters.insert(key.to_string(), value);
            }
            (true, None) => return Err(bad("an integer parameter")),
            (false, Some(_)) => return Err(bad("no parameter")),
            (false, None) => {}
        }
        Ok(ModelSpec {
            name,
            parameters,
            description: description.to_string(),
        })
    }

    pub fn reference(&self) -> String {
        match self.parameters.values().next() {
            Some(p) => format!("zoo:{}:{}", self.name, p),
            None => format!("zoo:{}", self.name),
        }
    }

    pub fn build(&self) -> Result<AbstractStateSpace, ModelError> {
        let param = |key: &str| self.parameters.get(key).copied().unwrap_or(0);
        match self.name.as_str() {
            "polygon" => polygon(param("n").max(0) as usize),
            "simplex" => simplex_model(param("k").max(0) as usize),
            "square_pyramid" => Ok(square_pyramid()),
            "nosignaling" => Ok(nosignaling_2222()),
            other => Err(ModelError::UnknownModel(other.to_string())),
        }
    }
}

/// Catalogue entries for `zoo` listings.
pub fn catalogue() -> Vec<(&'static str, &'static str)> {
    vec![
        ("zoo:polygon:<n>", "convex n-gon (n >= 3) with rational vertices on the unit circle"),
        ("zoo:simplex:<k>", "classical theory: standard basis of R^k, u = (1,...,1)"),
        ("zoo:square_pyramid", "pyramid over a square, dim_A = 4"),
        ("zoo:nosignaling", "2-party 2-input 2-output no-signaling polytope, dim_A = 9"),
    ]
}

/// Rational approximations of `tan(πk/n)` for `k < count`, using the first
/// denominator in 10, 100, 1000 that keeps them strictly increasing.
fn half_angle_tangents(n: usize, count: usize) -> Vec<ExactScalar> {
    for q in [10i64, 100, 1000] {
        let ts: Vec<ExactScalar> = (0..count)
            .map(|k| {
                let t = (PI * k as f64 / n as f64).tan();
                ratio((t * q as f64).round() as i64, q)
            })
            .collect();
        if ts.windows(2).all(|w| w[0] < w[1]) {
            return ts;
        }
    }
    panic!("polygon with {n} vertices needs finer approximations")
}

/// Point on the unit circle for the half-angle tangent `t`.
fn circle_point(t: &ExactScalar) -> ExactVector {
    let t2 = t * t;
    let denom = &t2 + int(1);
    ExactVector::new(vec![(int(1) - &t2) / &denom, (t * int(2)) / &denom])
}

/// Regular-polygon stand-in: `n` rational points on the unit circle near the
/// angles `2πk/n`. Every set of distinct points on a circle is in convex
/// position, so the result is always an n-gon. Even n is centrally symmetric
/// and odd n is mirror symmetric about the x-axis, as for the regular polygon.
pub fn polygon(n: usize) -> Result<AbstractStateSpace, ModelError> {
    if n < 3 {
        return Err(ModelError::TooFewVertices(n));
    }
    let mut points = Vec::with_capacity(n);
    if n % 2 == 0 {
        let half: Vec<ExactVector> = half_angle_tangents(n, n / 2).iter().map(circle_point).collect();
        points.extend(half.iter().cloned());
        points.extend(half.iter().map(ExactVector::neg));
    } else {
        for (k, t) in half_angle_tangents(n, n / 2 + 1).iter().enumerate() {
            let p = circle_point(t);
            if k > 0 {
                points.push(ExactVector::new(vec![p[0].clone(), -p[1].clone()]));
            }
            points.push(p);
        }
    }
    let base = VPolytope::new(2, &points);
    debug_assert_eq!(base.vertices().len(), n);
    Ok(AbstractStateSpace::lift(&base)?)
}

/// Standard basis `e₁…e_k` of `ℝ^k` with `u = (1, …, 1)`.
pub fn simplex_model(k: usize) -> Result<AbstractStateSpace, ModelError> {
    if k == 0 {
        return Err(ModelError::EmptySimplex);
    }
    let vertices: Vec<ExactVector> = (0..k).map(|i| ExactVector::unit(k, i)).collect();
    let unit: ExactVector = (0..k).map(|_| int(1)).collect();
    Ok(AbstractStateSpace::build(k, unit, &vertices)?)
}

/// Square base `(±1, ±1, 0)` and apex `(0, 0, 1)`, lifted to `dim_A = 4`.
pub fn square_pyramid() -> AbstractStateSpace {
    let pts: Vec<ExactVector> = [
        [-1, -1, 0],
        [-1, 1, 0],
        [1, -1, 0],
        [1, 1, 0],
        [0, 0, 1],
    ]
    .iter()
    .map(|p| ExactVector::from_ints(p))
    .collect();
    AbstractStateSpace::lift(&VPolytope::new(3, &pts)).expect("square pyramid is valid")
}

/// Correlator coordinates of a box `p(ab|xy)` with outcomes `±1`:
/// `(⟨A₀⟩, ⟨A₁⟩, ⟨B₀⟩, ⟨B₁⟩, ⟨A₀B₀⟩, ⟨A₀B₁⟩, ⟨A₁B₀⟩, ⟨A₁B₁⟩)`.
/// `table[x][y][a][b]` holds `p(ab|xy)` with outcome index 0 ↦ +1, 1 ↦ −1.
pub fn correlators(table: &[[[[ExactScalar; 2]; 2]; 2]; 2]) -> ExactVector {
    let sign = |o: usize| if o == 0 { int(1) } else { int(-1) };
    let mut out = Vec::with_capacity(8);
    for x in 0..2 {
        // Marginal of A for input x, read with y = 0.
        let mut m = int(0);
        for a in 0..2 {
            for b in 0..2 {
                m += sign(a) * &table[x][0][a][b];
            }
        }
        out.push(m);
    }
    for y in 0..2 {
        let mut m = int(0);
        for a in 0..2 {
            for b in 0..2 {
                m += sign(b) * &table[0][y][a][b];
            }
        }
        out.push(m);
    }
    for x in 0..2 {
        for y in 0..2 {
            let mut c = int(0);
            for a in 0..2 {
                for b in 0..2 {
                    c += sign(a) * sign(b) * &table[x][y][a][b];
                }
            }
            out.push(c);
        }
    }
    ExactVector::new(out)
}

/// The 16 local deterministic boxes and 8 PR-box variants, in correlator
/// coordinates lifted to `dim_A = 9`.
pub fn nosignaling_2222() -> AbstractStateSpace {
    let mut pts = Vec::with_capacity(24);
    for bits in 0..16u32 {
        let a = [(bits & 1) as i64, ((bits >> 1) & 1) as i64];
        let b = [((bits >> 2) & 1) as i64, ((bits >> 3) & 1) as i64];
        let s = |o: i64| 1 - 2 * o;
        pts.push(ExactVector::from_ints(&[
            s(a[0]),
            s(a[1]),
            s(b[0]),
            s(b[1]),
            s(a[0]) * s(b[0]),
            s(a[0]) * s(b[1]),
            s(a[1]) * s(b[0]),
            s(a[1]) * s(b[1]),
        ]));
    }
    for bits in 0..8u32 {
        let (alpha, beta, gamma) = ((bits & 1) as i64, ((bits >> 1) & 1) as i64, ((bits >> 2) & 1) as i64);
        let mut v = vec![0, 0, 0, 0];
        for x in 0..2i64 {
            for y in 0..2i64 {
                let parity = (x * y + alpha * x + beta * y + gamma) % 2;
                v.push(1 - 2 * parity);
            }
        }
        pts.push(ExactVector::from_ints(&v));
    }
    AbstractStateSpace::lift(&VPolytope::new(8, &pts)).expect("no-signaling polytope is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state_space::Classification;

    #[test]
    fn polygon_examples() {
        let sq = polygon(4).unwrap();
        assert_eq!(sq.states().len(), 4);
        assert_eq!(sq.classify(), Classification::DiscreteNonClassical);
        assert_eq!(polygon(3).unwrap().classify(), Classification::Classical);
        let pent = polygon(5).unwrap();
        assert_eq!(pent.states().len(), 5);
        assert_eq!(pent.pure_effects().unwrap().len(), 12);
        assert_eq!(polygon(2), Err(ModelError::TooFewVertices(2)));
    }

    #[test]
    fn square_is_the_exact_diamond() {
        let sq = polygon(4).unwrap();
        let expected: Vec<ExactVector> = [[-1, 0, 1], [0, -1, 1], [0, 1, 1], [1, 0, 1]]
            .iter()
            .map(|p| ExactVector::from_ints(p))
            .collect();
        assert_eq!(sq.states(), &expected[..]);
    }

    #[test]
    fn polygons_have_n_vertices_and_minus_faces() {
        for n in 3..=9 {
            let p = polygon(n).unwrap();
            assert_eq!(p.states().len(), n);
            assert_eq!(crate::geometry::minus_faces(p.omega()).unwrap().len(), n);
        }
    }

    #[test]
    fn simplex_examples() {
        assert_eq!(simplex_model(2).unwrap().omega().dimension(), 1);
        assert_eq!(simplex_model(3).unwrap().states().len(), 3);
        assert_eq!(simplex_model(1).unwrap().states().len(), 1);
        assert_eq!(simplex_model(0), Err(ModelError::EmptySimplex));
    }

    #[test]
    fn square_pyramid_examples() {
        let p = square_pyramid();
        assert!(crate::geometry::is_uniformly_pyramidal(p.omega()).unwrap().is_none());
        assert_eq!(p.classify(), Classification::DiscreteNonClassical);
        assert_eq!(crate::geometry::minus_faces(p.omega()).unwrap().len(), 5);
    }

    #[test]
    fn spec_parsing() {
        assert_eq!(ModelSpec::parse("zoo:polygon:7").unwrap().reference(), "zoo:polygon:7");
        assert_eq!(ModelSpec::parse("zoo:nosignaling").unwrap().reference(), "zoo:nosignaling");
        assert!(matches!(ModelSpec::parse("zoo:blob"), Err(ModelError::UnknownModel(_))));
        assert!(matches!(
            ModelSpec::parse("zoo:polygon"),
            Err(ModelError::BadParameter { .. })
        ));
        assert!(matches!(
            ModelSpec::parse("zoo:square_pyramid:3"),
            Err(ModelError::BadParameter { .. })
        ));
    }
}
