mod common;

use common::{brute_force_vertices, nosignaling_oracle_vertices, small_zoo, subsets};
use gptlab_core::exact::{int, Constraint, ExactMatrix, ExactVector};
use gptlab_core::geometry::{self, is_face, is_affine_slice, minus_faces, VPolytope};
use gptlab_core::models::{nosignaling_2222, polygon, simplex_model};
use gptlab_core::postulate::minus_face_pure_effect;
use gptlab_core::Classification;

/// Vertices of `{f : 0 ≤ f·v ≤ 1 for every state v}` by subset search.
fn oracle_pure_effects(space: &gptlab_core::AbstractStateSpace) -> Vec<ExactVector> {
    let mut rows = Vec::new();
    for v in space.states() {
        rows.push(Constraint::new(v.neg(), int(0)));
        rows.push(Constraint::new(v.clone(), int(1)));
    }
    brute_force_vertices(space.dim(), &rows)
}

#[test]
fn pure_effect_counts_match_oracle() {
    for (space, expected) in [
        (polygon(4).unwrap(), 6),
        (simplex_model(3).unwrap(), 8),
        (polygon(5).unwrap(), 12),
    ] {
        let ours: Vec<ExactVector> = space
            .pure_effects()
            .unwrap()
            .iter()
            .map(|f| f.functional().clone())
            .collect();
        assert_eq!(ours, oracle_pure_effects(&space));
        assert_eq!(ours.len(), expected);
    }
}

#[test]
fn zoo_pure_effects_match_oracle() {
    for (name, space) in small_zoo() {
        if space.dim() > 4 {
            continue;
        }
        let ours: Vec<ExactVector> = space
            .pure_effects()
            .unwrap()
            .iter()
            .map(|f| f.functional().clone())
            .collect();
        assert_eq!(ours, oracle_pure_effects(&space), "{name}");
    }
}

#[test]
fn pure_effects_are_extreme() {
    for (name, space) in small_zoo() {
        for f in space.pure_effects().unwrap() {
            let tight: Vec<ExactVector> = space
                .states()
                .iter()
                .filter(|v| {
                    let x = f.functional().dot(v);
                    x == int(0) || x == int(1)
                })
                .cloned()
                .collect();
            assert_eq!(ExactMatrix::from_rows(&tight, space.dim()).rank(), space.dim(), "{name}");
            assert!(space.is_pure(f));
        }
    }
}

#[test]
fn complement_permutes_pure_effects() {
    for (name, space) in small_zoo() {
        let effects = space.pure_effects().unwrap();
        let mut complements: Vec<_> = effects.iter().map(|f| space.complementary(f)).collect();
        complements.sort();
        assert_eq!(complements, effects, "{name}");
    }
}

#[test]
fn certain_and_impossible_faces_are_faces() {
    for (name, space) in small_zoo() {
        for f in space.pure_effects().unwrap() {
            let certain = space.certain_face(f);
            let impossible = space.impossible_face(f);
            for face in [&certain, &impossible] {
                assert!(is_face(space.omega(), face).unwrap(), "{name}");
                assert!(is_affine_slice(space.omega(), face).unwrap(), "{name}");
            }
            if !f.is_zero() {
                assert!(!certain.is_empty(), "{name}: {f}");
            }
        }
    }
}

#[test]
fn unanimity_faces_are_faces_of_the_effect_set() {
    for (name, space) in small_zoo() {
        if space.dim() > 4 {
            continue;
        }
        let effects: Vec<ExactVector> = space
            .pure_effects()
            .unwrap()
            .iter()
            .map(|f| f.functional().clone())
            .collect();
        let effect_set = VPolytope::new(space.dim(), &effects);
        let states = space.states();
        for k in 1..=3.min(states.len()) {
            for set in subsets(states.len(), k) {
                let s: Vec<ExactVector> = set.iter().map(|&i| states[i].clone()).collect();
                let face = space.unanimity_face(&s).unwrap();
                assert!(is_face(&effect_set, &face).unwrap(), "{name} {set:?}");
            }
        }
    }
}

#[test]
fn origin_is_outside_affine_hulls_of_states() {
    for (name, space) in small_zoo() {
        let states = space.states();
        let zero = ExactVector::zeros(space.dim());
        for k in 1..=3.min(states.len()) {
            for set in subsets(states.len(), k) {
                let s: Vec<ExactVector> = set.iter().map(|&i| states[i].clone()).collect();
                assert!(!geometry::affine_hull(&s).unwrap().contains(&zero), "{name}");
            }
        }
    }
}

#[test]
fn zoo_models_are_valid_and_polygons_have_n_minus_faces() {
    for n in 3..=9 {
        let p = polygon(n).unwrap();
        let faces = minus_faces(p.omega()).unwrap();
        assert_eq!(faces.len(), n);
        for f in &faces {
            minus_face_pure_effect(&p, f).unwrap();
        }
        assert!(p.states().iter().all(|v| p.unit_effect().functional().dot(v) == int(1)));
    }
}

#[test]
fn nosignaling_matches_probability_table_oracle() {
    let ns = nosignaling_2222();
    assert_eq!(ns.states(), &nosignaling_oracle_vertices()[..]);
    assert_eq!(ns.states().len(), 24);
    assert_eq!(ns.omega().dimension(), 8);
    assert_eq!(ns.classify(), Classification::DiscreteNonClassical);
}
