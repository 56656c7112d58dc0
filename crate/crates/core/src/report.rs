//! JSON model files, full analysis reports, and LP-free report verification.
//!
//! Every rational is a string `"p/q"` or `"p"`. Reports round-trip through
//! [`AnalysisReport::to_json`] and [`AnalysisReport::from_json`] byte for
//! byte, and contain no wall-clock data unless timings are requested.

use std::collections::BTreeMap;
use std::time::Instant;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::disturbance::{self, DisturbanceError, PolyhedralNorm};
use crate::exact::{
    int, parse_scalar, to_decimal, Constraint, ExactMatrix, ExactScalar, ExactVector, KernelError,
};
use crate::geometry::{self, Hull, Membership};
use crate::postulate::{self, PostulateError, Scope, TransformationOutcome};
use crate::state_space::{AbstractStateSpace, Classification, Effect, StateSpaceError};

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
/// Default ceiling on `dim_A` for disturbance computations.
pub const DISTURBANCE_DIM_LIMIT: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReportError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("unsupported schema_version {found}, expected {expected}")]
    SchemaVersion { found: u32, expected: u32 },
    #[error("field {field}: {message}")]
    Field { field: String, message: String },
    #[error(transparent)]
    StateSpace(#[from] StateSpaceError),
    #[error(transparent)]
    Postulate(#[from] PostulateError),
    #[error(transparent)]
    Disturbance(#[from] DisturbanceError),
}

fn field_error(field: impl Into<String>, message: impl ToString) -> ReportError {
    ReportError::Field {
        field: field.into(),
        message: message.to_string(),
    }
}

fn parse_vector(field: &str, items: &[String]) -> Result<ExactVector, ReportError> {
    items
        .iter()
        .enumerate()
        .map(|(i, s)| {
            parse_scalar(s).map_err(|e: KernelError| field_error(format!("{field}[{i}]"), e))
        })
        .collect()
}

/// On-disk model description.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub schema_version: u32,
    #[serde(rename = "dim_A")]
    pub dim_a: usize,
    pub unit_effect: Vec<String>,
    pub vertices: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
}

impl ModelFile {
    pub fn from_json(text: &str) -> Result<ModelFile, ReportError> {
        let raw: serde_json::Value =
            serde_json::from_str(text).map_err(|e| ReportError::Json(e.to_string()))?;
        match raw.get("schema_version") {
            None => return Err(field_error("schema_version", "missing field")),
            Some(v) => match v.as_u64() {
                Some(found) if found == u64::from(SCHEMA_VERSION) => {}
                Some(found) => {
                    return Err(ReportError::SchemaVersion {
                        found: found as u32,
                        expected: SCHEMA_VERSION,
                    })
                }
                None => return Err(field_error("schema_version", "expected an integer")),
            },
        }
        serde_json::from_value(raw).map_err(|e| ReportError::Json(e.to_string()))
    }

    pub fn from_space(space: &AbstractStateSpace, name: Option<String>) -> ModelFile {
        ModelFile {
            schema_version: SCHEMA_VERSION,
            dim_a: space.dim(),
            unit_effect: space.unit_effect().functional().to_strings(),
            vertices: space.states().iter().map(ExactVector::to_strings).collect(),
            name,
            description: None,
        }
    }

    pub fn to_space(&self) -> Result<AbstractStateSpace, ReportError> {
        let unit = parse_vector("unit_effect", &self.unit_effect)?;
        if unit.dim() != self.dim_a {
            return Err(field_error(
                "unit_effect",
                format!("has {} entries, dim_A is {}", unit.dim(), self.dim_a),
            ));
        }
        let vertices = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let field = format!("vertices[{i}]");
                let p = parse_vector(&field, v)?;
                if p.dim() != self.dim_a {
                    return Err(field_error(
                        field,
                        format!("has {} entries, dim_A is {}", p.dim(), self.dim_a),
                    ));
                }
                Ok(p)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(AbstractStateSpace::build(self.dim_a, unit, &vertices)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelSection {
    pub name: String,
    #[serde(rename = "dim_A")]
    pub dim_a: usize,
    pub unit_effect: ExactVector,
    pub vertices: Vec<ExactVector>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EffectRow {
    pub functional: Effect,
    pub certain_face: Vec<usize>,
    pub impossible_face: Vec<usize>,
    pub certain_dim: i64,
    pub impossible_dim: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PostulateRow {
    pub face: Vec<usize>,
    pub effect: Effect,
    pub result: TransformationOutcome,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DisturbanceRow {
    pub effect: Effect,
    #[serde(with = "crate::exact::scalar::serde_scalar")]
    pub epsilon: ExactScalar,
    pub epsilon_decimal: String,
    pub minimizer: ExactMatrix,
    pub witness_state: ExactVector,
    /// Per state vertex, weights placing `T v` in Ω_A^{≤1}.
    pub positivity: Vec<ExactVector>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DisturbanceSection {
    pub norm: PolyhedralNorm,
    pub entries: Vec<DisturbanceRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema_version: u32,
    pub tool_version: String,
    pub model: ModelSection,
    pub classification: Classification,
    pub subnormalized_facets: Vec<Constraint>,
    pub pure_effects: Vec<EffectRow>,
    pub postulate: Vec<PostulateRow>,
    pub disturbance: Option<DisturbanceSection>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    /// Microseconds per stage; absent unless requested.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings_us: Option<BTreeMap<String, u64>>,
}

impl AnalysisReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<AnalysisReport, ReportError> {
        let report: AnalysisReport =
            serde_json::from_str(text).map_err(|e| ReportError::Json(e.to_string()))?;
        if report.schema_version != SCHEMA_VERSION {
            return Err(ReportError::SchemaVersion {
                found: report.schema_version,
                expected: SCHEMA_VERSION,
            });
        }
        Ok(report)
    }

    pub fn obstruction_count(&self) -> usize {
        self.postulate.iter().filter(|r| !r.result.is_witness()).count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnalyzeOptions {
    pub scope: Scope,
    pub norm: PolyhedralNorm,
    /// Compute disturbances even above [`DISTURBANCE_DIM_LIMIT`].
    pub force_disturbance: bool,
    pub skip_disturbance: bool,
    pub timings: bool,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            scope: Scope::MinusFaces,
            norm: PolyhedralNorm::MaxAbs,
            force_disturbance: false,
            skip_disturbance: false,
            timings: false,
        }
    }
}

fn indices(space: &AbstractStateSpace, face: &geometry::VPolytope) -> Vec<usize> {
    face.vertices()
        .iter()
        .map(|v| space.omega().index_of(v).expect("face vertices are states"))
        .collect()
}

pub fn effect_table(space: &AbstractStateSpace) -> Result<Vec<EffectRow>, ReportError> {
    Ok(space
        .pure_effects()?
        .iter()
        .map(|f| {
            let certain = space.certain_face(f);
            let impossible = space.impossible_face(f);
            EffectRow {
                functional: f.clone(),
                certain_face: indices(space, &certain),
                impossible_face: indices(space, &impossible),
                certain_dim: certain.dimension(),
                impossible_dim: impossible.dimension(),
            }
        })
        .collect())
}

pub fn disturbance_row(
    space: &AbstractStateSpace,
    f: &Effect,
    norm: PolyhedralNorm,
) -> Result<DisturbanceRow, ReportError> {
    let r = disturbance::min_disturbance(space, f, norm)?;
    let positivity = postulate::positivity_certificates(space.states(), &r.minimizer)
        .expect("minimizer lies in T_f");
    Ok(DisturbanceRow {
        effect: r.effect,
        epsilon_decimal: to_decimal(&r.epsilon, 6),
        epsilon: r.epsilon,
        minimizer: r.minimizer,
        witness_state: r.witness_state,
        positivity,
    })
}

/// Runs classification, pure-effect enumeration, the postulate sweep, and
/// (dimension permitting) minimal disturbances for the minus-face effects.
pub fn analyze(
    space: &AbstractStateSpace,
    name: &str,
    options: &AnalyzeOptions,
) -> Result<AnalysisReport, ReportError> {
    let mut timings = BTreeMap::new();
    let mut clock = Instant::now();
    let mut lap = |stage: &str, timings: &mut BTreeMap<String, u64>| {
        timings.insert(stage.to_string(), clock.elapsed().as_micros() as u64);
        clock = Instant::now();
    };

    let classification = space.classify();
    let subnormalized_facets = space
        .subnormalized_facets()
        .map_err(StateSpaceError::from)?
        .inequalities()
        .to_vec();
    lap("classify", &mut timings);

    let pure_effects = effect_table(space)?;
    lap("effects", &mut timings);

    let sweep = postulate::check_postulate(space, options.scope)?;
    let postulate: Vec<PostulateRow> = sweep
        .entries
        .into_iter()
        .map(|e| PostulateRow {
            face: indices(space, &e.face),
            effect: e.effect,
            result: e.outcome,
        })
        .collect();
    lap("postulate", &mut timings);

    let mut notes = Vec::new();
    let disturbance = if options.skip_disturbance {
        None
    } else if space.dim() > DISTURBANCE_DIM_LIMIT && !options.force_disturbance {
        notes.push(format!(
            "disturbance skipped: dim_A = {} exceeds {}",
            space.dim(),
            DISTURBANCE_DIM_LIMIT
        ));
        None
    } else {
        let minus = match geometry::minus_faces(space.omega()) {
            Ok(f) => f,
            Err(geometry::GeometryError::ZeroDimensionalInput) => Vec::new(),
            Err(e) => return Err(StateSpaceError::from(e).into()),
        };
        let mut entries = Vec::with_capacity(minus.len());
        for face in minus {
            let f = postulate::minus_face_pure_effect(space, &face)?;
            entries.push(disturbance_row(space, &f, options.norm)?);
        }
        Some(DisturbanceSection {
            norm: options.norm,
            entries,
        })
    };
    lap("disturbance", &mut timings);

    Ok(AnalysisReport {
        schema_version: SCHEMA_VERSION,
        tool_version: TOOL_VERSION.to_string(),
        model: ModelSection {
            name: name.to_string(),
            dim_a: space.dim(),
            unit_effect: space.unit_effect().into_functional(),
            vertices: space.states().to_vec(),
        },
        classification,
        subnormalized_facets,
        pure_effects,
        postulate,
        disturbance,
        notes,
        timings_us: options.timings.then_some(timings),
    })
}

/// Counts of items re-checked by [`verify_report`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerifySummary {
    pub effects: usize,
    pub witnesses: usize,
    pub obstructions: usize,
    pub disturbances: usize,
}

impl VerifySummary {
    pub fn total(&self) -> usize {
        self.effects + self.witnesses + self.obstructions + self.disturbances
    }
}

fn level_set(states: &[ExactVector], f: &ExactVector, level: &ExactScalar) -> Vec<usize> {
    states
        .iter()
        .enumerate()
        .filter(|(_, v)| f.dot(v) == *level)
        .map(|(i, _)| i)
        .collect()
}

fn rank_dimension(points: &[ExactVector]) -> i64 {
    match points.split_first() {
        None => -1,
        Some((base, rest)) => {
            let diffs: Vec<ExactVector> = rest.iter().map(|p| p.sub(base)).collect();
            ExactMatrix::from_rows(&diffs, base.dim()).rank() as i64
        }
    }
}

/// Re-validates every witness, certificate, and table entry of a report with
/// rational arithmetic and linear algebra only. Returns every failure found.
pub fn verify_report(report: &AnalysisReport) -> Result<VerifySummary, Vec<String>> {
    let mut errors = Vec::new();
    let mut summary = VerifySummary::default();
    let unit = &report.model.unit_effect;
    let states = &report.model.vertices;
    let d = report.model.dim_a;
    if unit.dim() != d || states.iter().any(|v| v.dim() != d) {
        return Err(vec!["model dimensions are inconsistent".into()]);
    }
    for (i, v) in states.iter().enumerate() {
        if !unit.dot(v).is_one() {
            errors.push(format!("vertex {i} is not normalized"));
        }
    }

    let omega_dim = rank_dimension(states);
    let simplex = states.len() as i64 == omega_dim + 1;
    let expected = if simplex {
        Classification::Classical
    } else {
        Classification::DiscreteNonClassical
    };
    if report.classification != expected {
        errors.push(format!(
            "classification {} disagrees with {} vertices spanning dimension {omega_dim}",
            report.classification,
            states.len()
        ));
    }

    let mut sub = states.clone();
    sub.push(ExactVector::zeros(d));
    for (k, c) in report.subnormalized_facets.iter().enumerate() {
        if c.coeffs.dim() != d || sub.iter().any(|v| c.coeffs.dot(v) > c.rhs) {
            errors.push(format!("facet {k} is not valid on the subnormalized states"));
        }
    }

    for (k, row) in report.pure_effects.iter().enumerate() {
        let f = row.functional.functional();
        let values: Vec<ExactScalar> = states.iter().map(|v| f.dot(v)).collect();
        if f.dim() != d || values.iter().any(|x| *x < int(0) || *x > int(1)) {
            errors.push(format!("pure effect {k} is not an effect"));
            continue;
        }
        if level_set(states, f, &int(1)) != row.certain_face
            || level_set(states, f, &int(0)) != row.impossible_face
        {
            errors.push(format!("pure effect {k} has wrong face indices"));
        }
        let pick = |ix: &[usize]| ix.iter().map(|&i| states[i].clone()).collect::<Vec<_>>();
        if rank_dimension(&pick(&row.certain_face)) != row.certain_dim
            || rank_dimension(&pick(&row.impossible_face)) != row.impossible_dim
        {
            errors.push(format!("pure effect {k} has wrong face dimensions"));
        }
        summary.effects += 1;
    }

    for (k, row) in report.postulate.iter().enumerate() {
        let f = row.effect.functional();
        if f.dim() != d || level_set(states, f, &int(1)) != row.face {
            errors.push(format!("postulate entry {k}: face does not match the effect"));
            continue;
        }
        match &row.result {
            TransformationOutcome::Witness(w) => {
                if w.effect != row.effect {
                    errors.push(format!("postulate entry {k}: witness is for another effect"));
                } else if let Err(e) = postulate::verify_witness(unit, states, w) {
                    errors.push(format!("postulate entry {k}: {e}"));
                }
                summary.witnesses += 1;
            }
            TransformationOutcome::Obstruction(cert) => {
                if let Err(e) = postulate::verify_obstruction(
                    unit,
                    states,
                    f,
                    cert,
                    &report.subnormalized_facets,
                ) {
                    errors.push(format!("postulate entry {k}: {e}"));
                }
                summary.obstructions += 1;
            }
        }
    }

    if let Some(section) = &report.disturbance {
        for (k, row) in section.entries.iter().enumerate() {
            let t = &row.minimizer;
            let f = row.effect.functional();
            if t.rows() != d || t.cols() != d || f.dim() != d {
                errors.push(format!("disturbance entry {k}: wrong shape"));
                continue;
            }
            if t.left_mul_vec(unit) != *f {
                errors.push(format!("disturbance entry {k}: u_A ∘ T differs from f"));
            }
            if row.positivity.len() != states.len()
                || states.iter().zip(&row.positivity).any(|(v, w)| {
                    !geometry::verify_membership(
                        states,
                        &t.mul_vec(v),
                        Hull::WithOrigin,
                        &Membership::Inside(w.clone()),
                    )
                })
            {
                errors.push(format!("disturbance entry {k}: positivity certificate fails"));
            }
            let certain: Vec<&ExactVector> = states.iter().filter(|v| f.dot(v).is_one()).collect();
            let max = certain
                .iter()
                .map(|w| section.norm.eval(&t.mul_vec(w).sub(w)))
                .max();
            if max.as_ref() != Some(&row.epsilon) {
                errors.push(format!("disturbance entry {k}: epsilon is not D_f(minimizer)"));
            }
            if !certain.contains(&&row.witness_state)
                || section.norm.eval(&t.mul_vec(&row.witness_state).sub(&row.witness_state))
                    != row.epsilon
            {
                errors.push(format!("disturbance entry {k}: witness state does not attain epsilon"));
            }
            if row.epsilon_decimal != to_decimal(&row.epsilon, 6) {
                errors.push(format!("disturbance entry {k}: decimal annotation is stale"));
            }
            summary.disturbances += 1;
        }
    }

    if errors.is_empty() {
        Ok(summary)
    } else {
        Err(errors)
    }
}

/// Short tag of a postulate outcome for tables.
pub fn outcome_label(outcome: &TransformationOutcome) -> &'static str {
    match outcome {
        TransformationOutcome::Witness(_) => "Witness",
        TransformationOutcome::Obstruction(o) => o.kind(),
    }
}
