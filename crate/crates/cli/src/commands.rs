use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use gptlab_core::disturbance::{self, PolyhedralNorm};
use gptlab_core::exact::to_decimal;
use gptlab_core::geometry;
use gptlab_core::models::{self, ModelSpec};
use gptlab_core::postulate::{self, Scope};
use gptlab_core::report::{self, AnalysisReport, AnalyzeOptions, ModelFile, DISTURBANCE_DIM_LIMIT};
use gptlab_core::{AbstractStateSpace, Effect};
use serde_json::json;

pub struct Model {
    pub name: String,
    pub space: AbstractStateSpace,
}

pub fn load(reference: &str) -> Result<Model> {
    if reference.starts_with("zoo:") {
        let spec = ModelSpec::parse(reference)?;
        let space = spec.build()?;
        return Ok(Model {
            name: spec.reference(),
            space,
        });
    }
    let text = fs::read_to_string(reference).with_context(|| format!("reading {reference}"))?;
    let file = ModelFile::from_json(&text).with_context(|| format!("parsing {reference}"))?;
    let space = file
        .to_space()
        .with_context(|| format!("validating {reference}"))?;
    Ok(Model {
        name: file.name.clone().unwrap_or_else(|| reference.to_string()),
        space,
    })
}

fn print_json(value: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("json value serializes"));
}

fn join(items: &[usize]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

pub fn classify(model: &Model, json: bool) -> Result<u8> {
    let c = model.space.classify();
    if json {
        print_json(&json!({ "model": model.name, "classification": c }));
    } else {
        println!("{c}");
    }
    Ok(0)
}

pub fn effects(model: &Model, json: bool) -> Result<u8> {
    let rows = report::effect_table(&model.space)?;
    if json {
        print_json(&json!({ "model": model.name, "pure_effects": rows }));
        return Ok(0);
    }
    println!("{:>4}  {:<32} {:<16} {:>6}  {:<16} {:>6}", "#", "functional", "certain", "dim", "impossible", "dim");
    for (i, r) in rows.iter().enumerate() {
        println!(
            "{:>4}  {:<32} {:<16} {:>6}  {:<16} {:>6}",
            i,
            r.functional.to_string(),
            join(&r.certain_face),
            r.certain_dim,
            join(&r.impossible_face),
            r.impossible_dim
        );
    }
    Ok(0)
}

pub fn postulate(model: &Model, all_pure: bool, json: bool) -> Result<u8> {
    let scope = if all_pure { Scope::AllPure } else { Scope::MinusFaces };
    let sweep = postulate::check_postulate(&model.space, scope)?;
    let status = if sweep.all_feasible() { 0 } else { 1 };
    if json {
        let entries: Vec<_> = sweep
            .entries
            .iter()
            .map(|e| json!({ "effect": e.effect, "result": e.outcome }))
            .collect();
        print_json(&json!({
            "model": model.name,
            "all_feasible": sweep.all_feasible(),
            "entries": entries,
        }));
        return Ok(status);
    }
    for e in &sweep.entries {
        let detail = match e.outcome.obstruction() {
            Some(postulate::ObstructionCertificate::DimensionMismatch {
                certain_dim,
                impossible_dim,
                omega_dim,
            }) => format!(" ({certain_dim},{impossible_dim},{omega_dim})"),
            Some(postulate::ObstructionCertificate::ShapeMismatch { point, .. }) => {
                format!(" at {point}")
            }
            _ => String::new(),
        };
        println!("{}  {}{}", e.effect, report::outcome_label(&e.outcome), detail);
    }
    println!(
        "{}",
        if sweep.all_feasible() { "AllFeasible" } else { "ObstructionFound" }
    );
    Ok(status)
}

pub enum Selection {
    Index(usize),
    MinusFaces,
}

pub struct DisturbanceOptions {
    pub norm: PolyhedralNorm,
    pub selection: Selection,
    pub witness: bool,
    pub force: bool,
    pub samples: usize,
    pub seed: u64,
    pub json: bool,
}

fn selected_effects(space: &AbstractStateSpace, selection: &Selection) -> Result<Vec<Effect>> {
    match selection {
        Selection::Index(k) => {
            let all = space.pure_effects()?;
            let Some(f) = all.get(*k) else {
                bail!("effect index {k} out of range (model has {} pure effects)", all.len());
            };
            if f.is_zero() {
                bail!("effect index {k} is the zero effect, whose certain face is empty");
            }
            Ok(vec![f.clone()])
        }
        Selection::MinusFaces => {
            let faces = match geometry::minus_faces(space.omega()) {
                Ok(f) => f,
                Err(geometry::GeometryError::ZeroDimensionalInput) => Vec::new(),
                Err(e) => return Err(e.into()),
            };
            faces
                .iter()
                .map(|f| Ok(postulate::minus_face_pure_effect(space, f)?))
                .collect()
        }
    }
}

pub fn disturbance(model: &Model, opts: &DisturbanceOptions) -> Result<u8> {
    let space = &model.space;
    if space.dim() > DISTURBANCE_DIM_LIMIT && !opts.force {
        bail!(
            "dim_A = {} exceeds the disturbance limit {DISTURBANCE_DIM_LIMIT}; pass --force to run anyway",
            space.dim()
        );
    }
    let mut rows = Vec::new();
    for f in selected_effects(space, &opts.selection)? {
        let row = report::disturbance_row(space, &f, opts.norm)?;
        if opts.samples > 0 {
            for t in disturbance::sample_tf(space, &f, opts.samples, opts.seed)? {
                let value = disturbance::disturbance(space, &f, &t, opts.norm)?;
                if value < row.epsilon {
                    bail!("sampled transformation beats the LP optimum for {f}; solver bug");
                }
            }
        }
        rows.push(row);
    }
    if opts.json {
        let entries: Vec<_> = rows
            .iter()
            .map(|r| {
                let mut v = json!({
                    "effect": r.effect,
                    "epsilon": r.epsilon.to_string(),
                    "epsilon_decimal": r.epsilon_decimal,
                    "witness_state": r.witness_state,
                });
                if opts.witness {
                    v["minimizer"] = json!(r.minimizer);
                }
                v
            })
            .collect();
        print_json(&json!({ "model": model.name, "norm": opts.norm, "entries": entries }));
        return Ok(0);
    }
    for r in &rows {
        println!("{}  epsilon = {} ≈ {}", r.effect, r.epsilon, to_decimal(&r.epsilon, 6));
        if opts.witness {
            for row in r.minimizer.to_string_rows() {
                println!("    [{}]", row.join(", "));
            }
        }
    }
    Ok(0)
}

pub fn report(
    model: &Model,
    norm: PolyhedralNorm,
    out: Option<&Path>,
    all_pure: bool,
    force: bool,
    timings: bool,
) -> Result<u8> {
    let options = AnalyzeOptions {
        scope: if all_pure { Scope::AllPure } else { Scope::MinusFaces },
        norm,
        force_disturbance: force,
        skip_disturbance: false,
        timings,
    };
    let analysis = report::analyze(&model.space, &model.name, &options)?;
    let text = analysis.to_json();
    match out {
        Some(path) => fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(0)
}

pub fn verify_report(path: &Path) -> Result<u8> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let parsed = AnalysisReport::from_json(&text)?;
    match report::verify_report(&parsed) {
        Ok(s) => {
            println!(
                "ok: {} effects, {} witnesses, {} obstructions, {} disturbance values verified",
                s.effects, s.witnesses, s.obstructions, s.disturbances
            );
            Ok(0)
        }
        Err(errors) => {
            for e in &errors {
                eprintln!("FAIL {e}");
            }
            bail!("{} verification failure(s)", errors.len())
        }
    }
}

pub fn zoo() -> Result<u8> {
    for (name, description) in models::catalogue() {
        println!("{name:<22} {description}");
    }
    Ok(0)
}
