//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Every comparison is exact rational arithmetic; the pinned tolerance for
//! all numeric checks is zero.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::panic::{self, AssertUnwindSafe};
use std::path::Path;
use std::process::{Command, ExitCode};

use common::{brute_force_facets, random_point, rng, small_zoo};
use gptlab_core::disturbance::{
    lemma6_dimension_check, min_disturbance, proof_bound_case_i, sample_tf, verify_theorem2, CaseIBound,
};
use gptlab_core::exact::{int, ExactMatrix, ExactVector};
use gptlab_core::geometry::{self, h_to_v, minus_faces, v_to_h, VPolytope};
use gptlab_core::models::{nosignaling_2222, polygon, simplex_model};
use gptlab_core::postulate::{
    find_transformation, lemma_condition_a, lemma_condition_b, minus_face_pure_effect, theorem1_trace,
    verify_obstruction, verify_theorem1, verify_witness, ConditionB,
};
use gptlab_core::{AbstractStateSpace, Classification, Effect, ObstructionCertificate, PolyhedralNorm};

const TOLERANCE: &str = "exact (tolerance 0)";
const NORMS: [PolyhedralNorm; 2] = [PolyhedralNorm::MaxAbs, PolyhedralNorm::SumAbs];

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn minus_face_effects(space: &AbstractStateSpace) -> Vec<Effect> {
    match minus_faces(space.omega()) {
        Ok(faces) => faces
            .iter()
            .map(|f| minus_face_pure_effect(space, f).unwrap())
            .collect(),
        Err(geometry::GeometryError::ZeroDimensionalInput) => Vec::new(),
        Err(e) => panic!("{e}"),
    }
}

fn facets(space: &AbstractStateSpace) -> Vec<gptlab_core::exact::Constraint> {
    space.subnormalized_facets().unwrap().inequalities().to_vec()
}

fn square() -> Outcome {
    let sq = polygon(4).unwrap();
    let count = sq.pure_effects().unwrap().len();
    ensure(count == 6, || format!("{count} pure effects, expected 6"))?;
    let effects = minus_face_effects(&sq);
    ensure(effects.len() == 4, || format!("{} minus-face effects", effects.len()))?;
    for f in &effects {
        let outcome = find_transformation(&sq, f).unwrap();
        let cert = outcome.obstruction().ok_or_else(|| format!("{f}: witness found"))?;
        let expected = ObstructionCertificate::DimensionMismatch {
            certain_dim: 1,
            impossible_dim: 1,
            omega_dim: 2,
        };
        ensure(*cert == expected, || format!("{f}: {cert:?}"))?;
        verify_obstruction(sq.unit_effect().functional(), sq.states(), f.functional(), cert, &facets(&sq))?;
        for norm in NORMS {
            let eps = min_disturbance(&sq, f, norm).unwrap().epsilon;
            ensure(eps > int(0), || format!("{f}: epsilon {eps} under {norm}"))?;
        }
    }
    Ok("6 pure effects; 4 x DimensionMismatch(1,1,2); epsilon > 0 in linf and l1".into())
}

fn pentagon() -> Outcome {
    let p = polygon(5).unwrap();
    let effects = minus_face_effects(&p);
    ensure(effects.len() == 5, || format!("{} minus-face effects", effects.len()))?;
    for f in &effects {
        ensure(lemma_condition_a(&p, f).unwrap(), || format!("{f}: condition (a) fails"))?;
        let ConditionB::Fails(point) = lemma_condition_b(&p, f).unwrap() else {
            return Err(format!("{f}: condition (b) does not fail"));
        };
        let union = geometry::conv_union(&p.certain_face(f), &p.impossible_face(f)).unwrap();
        ensure(geometry::contains(p.omega(), &point).unwrap(), || format!("{point} outside Ω"))?;
        ensure(!geometry::contains(&union, &point).unwrap(), || format!("{point} inside the union"))?;
        let cert = find_transformation(&p, f).unwrap();
        let cert = cert.obstruction().ok_or_else(|| format!("{f}: witness found"))?;
        verify_obstruction(p.unit_effect().functional(), p.states(), f.functional(), cert, &facets(&p))?;
        for norm in NORMS {
            let eps = min_disturbance(&p, f, norm).unwrap().epsilon;
            ensure(eps > int(0), || format!("{f}: epsilon {eps} under {norm}"))?;
        }
    }
    Ok("5 edges: (a) holds, (b) fails at a validated point; epsilon > 0".into())
}

fn classical() -> Outcome {
    let mut checked = 0;
    for k in 1..=5 {
        let s = simplex_model(k).unwrap();
        let mut effects = minus_face_effects(&s);
        effects.push(s.unit_effect());
        for f in &effects {
            let outcome = find_transformation(&s, f).unwrap();
            let w = outcome.witness().ok_or_else(|| format!("simplex {k}, {f}: obstruction"))?;
            verify_witness(s.unit_effect().functional(), s.states(), w)?;
            for norm in NORMS {
                let eps = min_disturbance(&s, f, norm).unwrap().epsilon;
                ensure(eps == int(0), || format!("simplex {k}, {f}: epsilon {eps}"))?;
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} effects over simplex 1..5: validated witnesses, epsilon = 0"))
}

fn theorem1_sweep() -> Outcome {
    let zoo = small_zoo();
    for (name, space) in &zoo {
        // Independent oracle: a cone over linearly independent vertices.
        let rank = ExactMatrix::from_rows(space.states(), space.dim()).rank();
        let expected = if rank == space.states().len() {
            Classification::Classical
        } else {
            Classification::DiscreteNonClassical
        };
        let trace = theorem1_trace(space).unwrap();
        ensure(trace.classification == expected, || format!("{name}: {trace:?}"))?;
        ensure(trace.consistent() && verify_theorem1(space).unwrap(), || format!("{name}: {trace:?}"))?;
        ensure(trace.simplex == (expected == Classification::Classical), || format!("{name}: {trace:?}"))?;
    }
    let ns = nosignaling_2222();
    ensure(ns.classify() == Classification::DiscreteNonClassical, || "nosignaling classical".into())?;
    ensure(!geometry::is_simplex(ns.omega()), || "nosignaling is a simplex".into())?;
    ensure(
        geometry::is_uniformly_pyramidal(ns.omega()).unwrap().is_none(),
        || "nosignaling is uniformly pyramidal".into(),
    )?;
    Ok(format!("{} models plus nosignaling (classification only)", zoo.len()))
}

fn theorem2_sweep() -> Outcome {
    let mut models = 0;
    let mut tested = 0;
    for (name, space) in small_zoo() {
        if space.classify() == Classification::Classical || space.dim() > 4 {
            continue;
        }
        models += 1;
        for norm in NORMS {
            ensure(verify_theorem2(&space, norm).unwrap(), || format!("{name}: no positive epsilon"))?;
        }
        for f in space.pure_effects().unwrap().iter().filter(|f| !f.is_zero()) {
            let feasible = find_transformation(&space, f).unwrap().is_witness();
            for norm in NORMS {
                let eps = min_disturbance(&space, f, norm).unwrap().epsilon;
                ensure((eps == int(0)) == feasible, || {
                    format!("{name}, {f}: epsilon {eps}, feasible {feasible}")
                })?;
            }
            tested += 1;
        }
    }
    Ok(format!("{models} models; epsilon = 0 <=> feasible on {tested} effects x 2 norms"))
}

fn constructive_bound() -> Outcome {
    let p = polygon(5).unwrap();
    let mut pairs = 0;
    for f in minus_face_effects(&p) {
        for norm in NORMS {
            let CaseIBound::Bound { value, .. } = proof_bound_case_i(&p, &f, norm).unwrap() else {
                return Err(format!("{f}: bound not applicable"));
            };
            let eps = min_disturbance(&p, &f, norm).unwrap().epsilon;
            ensure(eps >= value, || format!("{f}: epsilon {eps} < bound {value}"))?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} edge/norm pairs: bound applicable and epsilon >= bound"))
}

fn lemma6() -> Outcome {
    let mut samples = 0;
    for (name, space) in [
        ("polygon 4", polygon(4).unwrap()),
        ("polygon 5", polygon(5).unwrap()),
        ("simplex 3", simplex_model(3).unwrap()),
    ] {
        for (i, f) in minus_face_effects(&space).iter().enumerate() {
            for t in sample_tf(&space, f, 20, 7 + i as u64).unwrap() {
                ensure(lemma6_dimension_check(&space, f, &t).unwrap(), || format!("{name}, {f}"))?;
                samples += 1;
            }
        }
    }
    Ok(format!("{samples} seeded samples"))
}

fn geometry_oracle() -> Outcome {
    let mut r = rng(20_240_601);
    let mut full = 0;
    for i in 0..50 {
        let d = 1 + i % 4;
        let k = 2 + (i * 7) % 7;
        let pts: Vec<ExactVector> = (0..k).map(|_| random_point(&mut r, d)).collect();
        let p = VPolytope::new(d, &pts);
        let h = v_to_h(&p).unwrap();
        ensure(h_to_v(&h).unwrap() == p, || format!("polytope {i}: round trip differs"))?;
        if p.dimension() == d as i64 {
            let mut ours = h.inequalities().to_vec();
            let mut oracle = brute_force_facets(d, p.vertices());
            ours.sort_by(|a, b| (&a.coeffs, &a.rhs).cmp(&(&b.coeffs, &b.rhs)));
            oracle.sort_by(|a, b| (&a.coeffs, &a.rhs).cmp(&(&b.coeffs, &b.rhs)));
            ensure(ours == oracle, || format!("polytope {i}: facets differ from oracle"))?;
            full += 1;
        }
        if p.dimension() >= 1 {
            for f in minus_faces(&p).unwrap() {
                let aff = geometry::affine_hull(f.vertices()).unwrap();
                ensure(geometry::intersect_with_affine(&p, &aff).unwrap() == f, || {
                    format!("polytope {i}: minus-face is not an affine slice")
                })?;
            }
        }
    }
    Ok(format!("50 polytopes round-trip; {full} full-dimensional match the facet oracle"))
}

/// Zoo references whose full reports are generated and re-validated.
fn report_targets() -> Vec<(String, &'static str)> {
    let mut out = Vec::new();
    for n in 3..=9 {
        out.push((format!("zoo:polygon:{n}"), "linf"));
    }
    for k in 1..=5 {
        out.push((format!("zoo:simplex:{k}"), "linf"));
    }
    out.push(("zoo:square_pyramid".into(), "linf"));
    out.push(("zoo:polygon:4".into(), "l1"));
    out.push(("zoo:polygon:5".into(), "l1"));
    out
}

fn gptlab(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_gptlab"))
        .args(args)
        .output()
        .expect("gptlab runs")
}

fn generate_reports(dir: &Path) -> Result<Vec<std::path::PathBuf>, String> {
    let mut paths = Vec::new();
    for (model, norm) in report_targets() {
        let path = dir.join(format!("{}_{norm}.json", model.replace(':', "_")));
        let out = gptlab(&["report", &model, "--norm", norm, "--json", path.to_str().unwrap()]);
        ensure(out.status.success(), || {
            format!("report {model}: {}", String::from_utf8_lossy(&out.stderr))
        })?;
        paths.push(path);
    }
    Ok(paths)
}

fn certificate_soundness(dir: &Path) -> Outcome {
    let paths = generate_reports(dir)?;
    for path in &paths {
        let out = gptlab(&["verify-report", path.to_str().unwrap()]);
        ensure(out.status.success(), || {
            format!("{}: {}", path.display(), String::from_utf8_lossy(&out.stderr))
        })?;
    }
    Ok(format!("{} reports, 0 verification failures", paths.len()))
}

fn determinism(first: &Path, second: &Path) -> Outcome {
    let paths = generate_reports(second)?;
    for path in &paths {
        let name = path.file_name().unwrap();
        let a = std::fs::read(first.join(name)).map_err(|e| e.to_string())?;
        let b = std::fs::read(path).map_err(|e| e.to_string())?;
        ensure(a == b, || format!("{}: reports differ", name.to_string_lossy()))?;
    }
    Ok(format!("{} reports byte-identical across two runs", paths.len()))
}

fn run(id: usize, title: &str, check: impl FnOnce() -> Outcome) -> bool {
    let result = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
        let msg = e
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        Err(format!("panic: {msg}"))
    });
    match result {
        Ok(detail) => {
            println!("PASS [{id:>2}] {title} [{TOLERANCE}]: {detail}");
            true
        }
        Err(detail) => {
            println!("FAIL [{id:>2}] {title} [{TOLERANCE}]: {detail}");
            false
        }
    }
}

fn main() -> ExitCode {
    let first = tempfile::tempdir().expect("temp dir");
    let second = tempfile::tempdir().expect("temp dir");
    panic::set_hook(Box::new(|_| {}));
    let results = [
        run(1, "square reproduction", square),
        run(2, "pentagon reproduction", pentagon),
        run(3, "classical reproduction", classical),
        run(4, "classicality sweep", theorem1_sweep),
        run(5, "positive-disturbance sweep", theorem2_sweep),
        run(6, "constructive lower bound", constructive_bound),
        run(7, "image-dimension sampling", lemma6),
        run(8, "geometry oracle equivalence", geometry_oracle),
        run(9, "certificate soundness", || certificate_soundness(first.path())),
        run(10, "determinism", || determinism(first.path(), second.path())),
    ];
    let passed = results.iter().filter(|&&ok| ok).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
