//! Experiment configuration, orchestration and report rendering.
//!
//! A report has three parts: a flat `summary` of key values, a `table` of
//! per-row results (what CSV output contains), and a structured `detail`
//! document. All numbers are exact integers or exact field elements.

use std::fmt::Write as _;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::binary::{
    hyperelliptic_test, in_scroll_binary_curve, project_from_node, quadrics_through,
    expected_quadric_dim, random_binary_curve, scroll_containment_witness, BinaryCurve, BinaryError,
    NodeCorrespondence, Verdict,
};
use crate::families::{
    dim_scrolls_through_frame, dim_scrolls_with_curve, gonality_bound, intersection_bound, stratification_table, FamilyDim,
    FamilyError, ScrollType,
};
use crate::field::{Field, FieldError, FieldSpec, PrimeField, Rationals};
use crate::rnc::{rnc_experiment, QuadricKind, RncError};
use crate::sampling::{run_trials, trial_rng};
use crate::scroll_curves::{
    degeneration_checks, incidence_dimension_estimate, interpolate_unisecant, random_lifted_frame, ScrollError,
    UnisecantOutcome,
};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Error)]
pub enum RunError {
    #[error("missing required option --{0}")]
    Missing(&'static str),
    #[error("invalid option: {0}")]
    Invalid(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Rnc(#[from] RncError),
    #[error(transparent)]
    Scroll(#[from] ScrollError),
    #[error(transparent)]
    Binary(#[from] BinaryError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Dims,
    Rnc,
    Unisecant,
    Incidence,
    Degenerate,
    Gonality,
    Hyperelliptic,
    Quadrics,
    Containment,
    Project,
}

impl Command {
    pub const ALL: [Command; 10] = [
        Command::Dims,
        Command::Rnc,
        Command::Unisecant,
        Command::Incidence,
        Command::Degenerate,
        Command::Gonality,
        Command::Hyperelliptic,
        Command::Quadrics,
        Command::Containment,
        Command::Project,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Dims => "dims",
            Command::Rnc => "rnc",
            Command::Unisecant => "unisecant",
            Command::Incidence => "incidence",
            Command::Degenerate => "degenerate",
            Command::Gonality => "gonality",
            Command::Hyperelliptic => "hyperelliptic",
            Command::Quadrics => "quadrics",
            Command::Containment => "containment",
            Command::Project => "project",
        }
    }

    /// Symbolic experiments default to ℚ, sampling experiments to 𝔽_10007.
    pub fn default_field(self) -> FieldSpec {
        match self {
            Command::Containment | Command::Degenerate => FieldSpec::Rational,
            _ => FieldSpec::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
    Text,
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" => Ok(Format::Text),
            _ => Err(format!("unknown format {s:?} (json, csv, text)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub command: Command,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h: Option<u32>,
    /// Quadric rank for `rnc` (3 or 4); any quadric through the frame when absent.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    /// Node to project from for `project`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub node: Option<usize>,
    /// Values of λ for `degenerate`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Vec<i64>>,
    /// Run `containment` on the in-scroll positive control.
    #[serde(default)]
    pub control: bool,
    pub field: FieldSpec,
    pub seed: u64,
    pub trials: usize,
    pub format: Format,
}

impl ExperimentConfig {
    pub fn new(command: Command) -> Self {
        ExperimentConfig {
            command,
            n: None,
            d: None,
            a: None,
            k: None,
            h: None,
            rank: None,
            node: None,
            lambda: None,
            control: false,
            field: command.default_field(),
            seed: 0,
            trials: 1,
            format: Format::Json,
        }
    }

    fn n(&self) -> Result<u32, RunError> {
        self.n.ok_or(RunError::Missing("n"))
    }

    /// The scroll type from `--a`, with `n` implied or checked against `--n`.
    fn scroll(&self) -> Result<ScrollType, RunError> {
        let a = self.a.clone().ok_or(RunError::Missing("a"))?;
        Ok(match self.n {
            Some(n) => ScrollType::new(a, n)?,
            None => ScrollType::from_index(a)?,
        })
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    fn new(columns: &[&str]) -> Self {
        Table {
            columns: columns.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }
    fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub config: ExperimentConfig,
    pub summary: Map<String, Value>,
    pub table: Table,
    pub detail: Value,
    pub elapsed_ms: u64,
}

impl Report {
    pub fn to_json(&self, timing: bool) -> Value {
        let mut doc = json!({
            "tool": "scrollfam",
            "version": VERSION,
            "config": self.config,
            "summary": self.summary,
            "table": {"columns": self.table.columns, "rows": self.table.rows},
            "detail": self.detail,
        });
        if timing {
            doc["elapsed_ms"] = json!(self.elapsed_ms);
        }
        doc
    }

    fn meta_lines(&self, timing: bool) -> Vec<String> {
        let mut out = vec![
            format!("scrollfam {VERSION} {}", self.config.command.name()),
            format!("config {}", serde_json::to_string(&self.config).expect("serializable")),
        ];
        for (k, v) in &self.summary {
            out.push(format!("{k} = {}", plain(v)));
        }
        if timing {
            out.push(format!("elapsed_ms = {}", self.elapsed_ms));
        }
        out
    }

    /// Renders in the configured format. `timing = false` drops the wall clock
    /// so that reruns are byte-identical.
    pub fn render(&self, timing: bool) -> String {
        match self.config.format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json(timing)).expect("serializable");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut s = String::new();
                for line in self.meta_lines(timing) {
                    let _ = writeln!(s, "# {line}");
                }
                let _ = writeln!(s, "{}", self.table.columns.iter().map(|c| csv_cell(c)).collect::<Vec<_>>().join(","));
                for row in &self.table.rows {
                    let _ = writeln!(s, "{}", row.iter().map(|c| csv_cell(c)).collect::<Vec<_>>().join(","));
                }
                s
            }
            Format::Text => {
                let mut s = String::new();
                for line in self.meta_lines(timing) {
                    let _ = writeln!(s, "{line}");
                }
                if !self.table.rows.is_empty() {
                    let widths: Vec<usize> = (0..self.table.columns.len())
                        .map(|i| {
                            self.table
                                .rows
                                .iter()
                                .map(|r| r[i].len())
                                .chain([self.table.columns[i].len()])
                                .max()
                                .unwrap_or(0)
                        })
                        .collect();
                    let line = |cells: &[String]| {
                        cells
                            .iter()
                            .zip(&widths)
                            .map(|(c, w)| format!("{c:>w$}"))
                            .collect::<Vec<_>>()
                            .join("  ")
                    };
                    let _ = writeln!(s);
                    let _ = writeln!(s, "{}", line(&self.table.columns));
                    for r in &self.table.rows {
                        let _ = writeln!(s, "{}", line(r));
                    }
                }
                s
            }
        }
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn csv_cell(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

struct Output {
    summary: Map<String, Value>,
    table: Table,
    detail: Value,
}

macro_rules! summary {
    ($($k:expr => $v:expr),* $(,)?) => {{
        let mut m = Map::new();
        $(m.insert($k.to_string(), json!($v));)*
        m
    }};
}

/// Runs the experiment named by the config.
pub fn run(config: &ExperimentConfig) -> Result<Report, RunError> {
    if config.trials == 0 {
        return Err(RunError::Invalid("--trials must be positive".into()));
    }
    let start = Instant::now();
    let out = match config.field {
        FieldSpec::Rational => dispatch(&Rationals, config)?,
        FieldSpec::Prime(p) => dispatch(&PrimeField::new(p)?, config)?,
    };
    Ok(Report {
        config: config.clone(),
        summary: out.summary,
        table: out.table,
        detail: out.detail,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

fn dispatch<F: Field>(field: &F, cfg: &ExperimentConfig) -> Result<Output, RunError> {
    match cfg.command {
        Command::Dims => dims(cfg),
        Command::Rnc => rnc(field, cfg),
        Command::Unisecant => unisecant(field, cfg),
        Command::Incidence => incidence(field, cfg),
        Command::Degenerate => degenerate(field, cfg),
        Command::Gonality => gonality(field, cfg),
        Command::Hyperelliptic => hyperelliptic(field, cfg),
        Command::Quadrics => quadrics(field, cfg),
        Command::Containment => containment(field, cfg),
        Command::Project => project(field, cfg),
    }
}

fn dim_cell(d: &FamilyDim) -> String {
    d.to_string()
}

fn dims(cfg: &ExperimentConfig) -> Result<Output, RunError> {
    let n = cfg.n()?;
    let d = cfg.d.ok_or(RunError::Missing("d"))?;
    let rows = stratification_table(n, d)?;
    let mut cols = vec!["n", "d", "a", "dim_all", "dim_stratum", "aut_dim", "balanced", "dense", "dim_through_frame"];
    let per_k: Vec<String> = (1..=d)
        .flat_map(|k| [format!("dim_curves_k{k}"), format!("dim_scrolls_with_curve_k{k}")])
        .collect();
    cols.extend(per_k.iter().map(String::as_str));
    let mut table = Table::new(&cols);
    for r in &rows {
        let mut row = vec![
            r.n.to_string(),
            r.d.to_string(),
            join(&r.a),
            r.dim_all.to_string(),
            r.dim_stratum.to_string(),
            r.aut_dim.to_string(),
            r.balanced.to_string(),
            r.dense.to_string(),
            r.dim_through_frame.to_string(),
        ];
        for pk in &r.per_k {
            row.push(dim_cell(&pk.dim_curves));
            row.push(pk.dim_scrolls_with_curve.as_ref().map_or("NA".into(), dim_cell));
        }
        table.push(row);
    }
    let mut detail = json!({ "rows": rows });
    let mut summary = summary! { "strata" => rows.len(), "dim_all" => rows[0].dim_all };
    if let (Some(h), Some(k)) = (cfg.h, cfg.k) {
        let bound = intersection_bound(n)?;
        let mut checks = Vec::new();
        for r in &rows {
            let t = ScrollType::new(r.a.clone(), n)?;
            let (Ok(dh), Ok(dk)) = (dim_scrolls_with_curve(&t, h), dim_scrolls_with_curve(&t, k)) else {
                continue;
            };
            if let (Some(x), Some(y)) = (dh.value(), dk.value()) {
                let lhs = x + y - dim_scrolls_through_frame(&t);
                checks.push(json!({"a": r.a, "h": h, "k": k, "value": lhs, "bound": bound, "within": lhs <= bound}));
            }
        }
        summary.insert("intersection_bound".into(), json!(bound));
        summary.insert("intersection_checks".into(), json!(checks.len()));
        detail["intersection_checks"] = json!(checks);
    }
    Ok(Output { summary, table, detail })
}

fn rnc<F: Field>(field: &F, cfg: &ExperimentConfig) -> Result<Output, RunError> {
    let n = cfg.n()? as usize;
    if n < 3 {
        return Err(RunError::Invalid("rnc needs n >= 3".into()));
    }
    let kind = match cfg.rank {
        None => QuadricKind::Any,
        Some(r) => QuadricKind::Rank(r),
    };
    let trials = rnc_experiment(field, n, kind, cfg.seed, cfg.trials)?;
    let mut table = Table::new(&["trial", "quadric_rank", "residual_degree", "factorization_exact", "jacobian_rank"]);
    for t in &trials {
        table.push(vec![
            t.trial.to_string(),
            t.quadric_rank.to_string(),
            t.residual_degree.to_string(),
            t.factorization_exact.to_string(),
            t.jacobian_rank.to_string(),
        ]);
    }
    let summary = summary! {
        "trials" => trials.len(),
        "exact_factorizations" => trials.iter().filter(|t| t.factorization_exact).count(),
        "residual_degree_n_minus_2" => trials.iter().filter(|t| t.residual_degree == n - 2).count(),
        "full_rank" => trials.iter().filter(|t| t.jacobian_rank == n - 1).count(),
        "expected_rank" => n - 1,
    };
    Ok(Output { summary, table, detail: json!({}) })
}

fn unisecant<F: Field>(field: &F, cfg: &ExperimentConfig) -> Result<Output, RunError> {
    let scroll = cfg.scroll()?;
    let rows: Vec<Result<(String, usize, bool, String), RunError>> = run_trials(cfg.seed, cfg.trials, |rng, _| {
        let pts = random_lifted_frame(field, &scroll, false, rng);
        let (label, secs, vanish) = match interpolate_unisecant(field, &scroll, &pts)? {
            UnisecantOutcome::Unique { sections_through_points, sections_vanish, .. } => {
                ("UNIQUE".to_string(), sections_through_points, sections_vanish)
            }
            other => (other.label().to_string(), 0, false),
        };
        let rep = random_lifted_frame(field, &scroll, true, rng);
        let rep_label = interpolate_unisecant(field, &scroll, &rep)?.label().to_string();
        Ok((label, secs, vanish, rep_label))
    });
    let rows = rows.into_iter().collect::<Result<Vec<_>, _>>()?;
    let mut table = Table::new(&["trial", "outcome", "sections_through_points", "sections_vanish", "repeated_t_outcome"]);
    for (i, (l, s, v, r)) in rows.iter().enumerate() {
        table.push(vec![i.to_string(), l.clone(), s.to_string(), v.to_string(), r.clone()]);
    }
    let summary = summary! {
        "a" => join(scroll.a()),
        "n" => scroll.n(),
        "unique" => rows.iter().filter(|r| r.0 == "UNIQUE").count(),
        "unique_and_sections_vanish" => rows.iter().filter(|r| r.0 == "UNIQUE" && r.2).count(),
        "repeated_t_none" => rows.iter().filter(|r| r.3 == "NONE").count(),
        "trials" => rows.len(),
    };
    Ok(Output { summary, table, detail: json!({}) })
}

fn incidence<F: Field>(field: &F, cfg: &ExperimentConfig) -> Result<Output, RunError> {
    let scroll = cfg.scroll()?;
    let k = cfg.k.ok_or(RunError::Missing("k"))?;
    let rep = incidence_dimension_estimate(field, &scroll, k, cfg.trials, cfg.seed)?;
    let mut table = Table::new(&["trial", "rank", "measured", "predicted", "incidence_rank", "fiber_dim"]);
    for t in &rep.trials {
        table.push(vec![
            t.trial.to_string(),
            t.rank.to_string(),
            t.measured.to_string(),
            rep.predicted.to_string(),
            t.incidence_rank.to_string(),
            t.fiber_dim.to_string(),
        ]);
    }
    let summary = summary! {
        "a" => join(&rep.a),
        "n" => rep.n,
        "k" => rep.k,
        "predicted" => rep.predicted,
        "coefficient_count" => rep.coefficient_count,
        "group_correction" => rep.group_correction,
        "matches" => rep.matches,
        "trials" => rep.trials.len(),
    };
    Ok(Output { summary, table, detail: serde_json::to_value(&rep).expect("serializable") })
}

fn degenerate<F: Field>(field: &F, cfg: &ExperimentConfig) -> Result<Output, RunError> {
    let a = cfg.a.clone().ok_or(RunError::Missing("a"))?;
    let lambdas: Vec<F::Elem> = cfg
        .lambda
        .clone()
        .unwrap_or_else(|| vec![1, 2, -1, 5])
        .into_iter()
        .map(|l| field.from_i64(l))
        .collect();
    let rep = degeneration_checks(field, a, None, None, &lambdas)?;
    let mut table = Table::new(&["lambda", "equivalent_to_lambda_1"]);
    for (l, e) in rep.lambdas.iter().zip(&rep.equivalences) {
        table.push(vec![l.clone(), e.to_string()]);
    }
    let summary = summary! {
        "a" => join(&rep.a),
        "aux" => join(&rep.aux),
        "degenerate" => join(&rep.degenerate),
        "lambda0_is_phi2_image" => rep.lambda0_is_phi2_image,
        "phi1_identity" => rep.phi1_identity,
        "all_pass" => rep.all_pass(),
    };
    Ok(Output { summary, table, detail: serde_json::to_value(&rep).expect("serializable") })
}

fn binary_n(cfg: &ExperimentConfig) -> Result<usize, RunError> {
    Ok(cfg.n()? as usize)
}

fn gonality<F: Field>(field: &F, cfg: &ExperimentConfig) -> Result<Output, RunError> {
    let n = binary_n(cfg)?;
    let rows: Vec<Result<Value, RunError>> = run_trials(cfg.seed, cfg.trials, |rng, trial| {
        let c = BinaryCurve::random(field, n, rng)?;
        let g = c.gonality_map()?;
        Ok(json!({
            "trial": trial,
            "curve": c.to_json(),
            "kernel_dim": g.kernel_dim,
            "system": [g.rows, g.unknowns],
            "witness": {"q1": g.witness.q1.to_json(), "q2": g.witness.q2.to_json()},
            "witness_degree": g.witness.degree,
            "total_degree": g.witness.total_degree,
            "reduced_by": g.witness.reduced_by,
            "certified": g.certified,
        }))
    });
    let rows = rows.into_iter().collect::<Result<Vec<_>, _>>()?;
    let bound = gonality_bound(n as u32 + 1)?;
    let mut table = Table::new(&["trial", "kernel_dim", "witness_degree", "total_degree", "gonality_bound", "certified"]);
    for r in &rows {
        table.push(vec![
            plain(&r["trial"]),
            plain(&r["kernel_dim"]),
            plain(&r["witness_degree"]),
            plain(&r["total_degree"]),
            bound.to_string(),
            plain(&r["certified"]),
        ]);
    }
    let summary = summary! {
        "n" => n,
        "genus" => n + 1,
        "gonality_bound" => bound,
        "kernel_dim_2" => rows.iter().filter(|r| r["kernel_dim"] == 2).count(),
        "certified" => rows.iter().filter(|r| r["certified"] == true).count(),
        "trials" => rows.len(),
    };
    Ok(Output { summary, table, detail: json!({ "trials": rows }) })
}

fn hyperelliptic<F: Field>(field: &F, cfg: &ExperimentConfig) -> Result<Output, RunError> {
    let n = binary_n(cfg)?;
    let rows: Vec<Result<(bool, usize, bool), RunError>> = run_trials(cfg.seed, cfg.trials, |rng, _| {
        let c = BinaryCurve::random(field, n, rng)?;
        let r = c.hyperelliptic_test();
        let control = hyperelliptic_test(&NodeCorrespondence::random_mobius(field.clone(), n + 2, rng));
        Ok((r.hyperelliptic, r.kernel_dim, control.hyperelliptic))
    });
    let rows = rows.into_iter().collect::<Result<Vec<_>, _>>()?;
    let mut table = Table::new(&["trial", "random_curve_hyperelliptic", "kernel_dim", "mobius_control_hyperelliptic"]);
    for (i, (h, k, c)) in rows.iter().enumerate() {
        table.push(vec![i.to_string(), h.to_string(), k.to_string(), c.to_string()]);
    }
    let summary = summary! {
        "n" => n,
        "random_false" => rows.iter().filter(|r| !r.0).count(),
        "mobius_true" => rows.iter().filter(|r| r.2).count(),
        "trials" => rows.len(),
    };
    Ok(Output { summary, table, detail: json!({}) })
}

fn quadrics<F: Field>(field: &F, cfg: &ExperimentConfig) -> Result<Output, RunError> {
    let n = binary_n(cfg)?;
    let rows: Vec<Result<(usize, bool), RunError>> = run_trials(cfg.seed, cfg.trials, |rng, _| {
        let c = BinaryCurve::random(field, n, rng)?;
        let qs = quadrics_through(&c);
        let vanish = qs.iter().all(|q| {
            q.compose(&c.comp1().coordinate_forms()).is_zero() && q.compose(&c.comp2().coordinate_forms()).is_zero()
        });
        Ok((qs.len(), vanish))
    });
    let rows = rows.into_iter().collect::<Result<Vec<_>, _>>()?;
    let expected = expected_quadric_dim(n);
    let mut table = Table::new(&["trial", "quadric_dim", "expected", "basis_vanishes"]);
    for (i, (d, v)) in rows.iter().enumerate() {
        table.push(vec![i.to_string(), d.to_string(), expected.to_string(), v.to_string()]);
    }
    let summary = summary! {
        "n" => n,
        "expected" => expected,
        "matches" => rows.iter().filter(|r| r.0 == expected).count(),
        "trials" => rows.len(),
    };
    Ok(Output { summary, table, detail: json!({}) })
}

fn containment<F: Field>(field: &F, cfg: &ExperimentConfig) -> Result<Output, RunError> {
    let n = binary_n(cfg)?;
    let c = if cfg.control {
        if n != 4 {
            return Err(RunError::Invalid("the positive control lives in P^4".into()));
        }
        in_scroll_binary_curve(field, &mut trial_rng(cfg.seed, u64::MAX - 1))?
    } else {
        random_binary_curve(n, field, cfg.seed)?
    };
    let rep = scroll_containment_witness(&c, cfg.trials, cfg.seed)?;
    let mut table = Table::new(&["trial", "macaulay_rank", "common_zero_estimate", "resultant_gcd_degree", "hit"]);
    for t in &rep.plane_trials {
        table.push(vec![
            t.trial.to_string(),
            t.macaulay_rank.to_string(),
            t.common_zero_estimate.to_string(),
            t.resultant_gcd_degree.to_string(),
            t.hit.to_string(),
        ]);
    }
    let verdict = match &rep.verdict {
        Verdict::NoneFound => "NONE_FOUND",
        Verdict::Witness { .. } => "WITNESS",
    };
    let summary = summary! {
        "n" => n,
        "verdict" => verdict,
        "method" => rep.method,
        "hits" => rep.hits,
        "plane_trials" => rep.plane_trials.len(),
        "quadric_dim" => rep.quadric_dim,
        "expected_quadric_dim" => rep.expected_quadric_dim,
    };
    let detail = json!({ "curve": c.to_json(), "report": rep });
    Ok(Output { summary, table, detail })
}

fn project<F: Field>(field: &F, cfg: &ExperimentConfig) -> Result<Output, RunError> {
    let n = binary_n(cfg)?;
    let j = cfg.node.unwrap_or(0);
    let c = random_binary_curve(n, field, cfg.seed)?;
    let p = project_from_node(&c, j)?;
    let mut table = Table::new(&["stage", "n", "genus", "nodes"]);
    table.push(vec!["original".into(), c.n().to_string(), c.genus().to_string(), (c.n() + 2).to_string()]);
    table.push(vec!["projected".into(), p.n().to_string(), p.genus().to_string(), (p.n() + 2).to_string()]);
    let summary = summary! {
        "node" => j,
        "genus_before" => c.genus(),
        "genus_after" => p.genus(),
    };
    Ok(Output { summary, table, detail: json!({ "original": c.to_json(), "projected": p.to_json() }) })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(cmd: Command) -> ExperimentConfig {
        ExperimentConfig::new(cmd)
    }

    #[test]
    fn dims_table() {
        let mut c = cfg(Command::Dims);
        c.n = Some(4);
        c.d = Some(2);
        let r = run(&c).unwrap();
        assert_eq!(r.table.rows.len(), 2);
        assert_eq!(r.table.rows[0][2], "0 3");
        assert_eq!(r.table.rows[1][2], "1 2");
        assert_eq!(r.table.rows[1][3], "18");
        c.format = Format::Csv;
        let csv = run(&c).unwrap().render(false);
        assert!(csv.lines().any(|l| l == "4,2,1 2,18,18,4,true,true,6,6,6,5,5"), "{csv}");
    }

    #[test]
    fn gonality_seed_7() {
        let mut c = cfg(Command::Gonality);
        c.n = Some(4);
        c.seed = 7;
        let r = run(&c).unwrap();
        assert_eq!(r.summary["kernel_dim_2"], 1);
        assert_eq!(r.table.rows[0][2], "3");
    }

    #[test]
    fn rendering_is_deterministic() {
        let mut c = cfg(Command::Incidence);
        c.a = Some(vec![1, 2]);
        c.k = Some(1);
        c.trials = 4;
        for f in [Format::Json, Format::Csv, Format::Text] {
            c.format = f;
            assert_eq!(run(&c).unwrap().render(false), run(&c).unwrap().render(false));
        }
    }

    #[test]
    fn usage_errors() {
        assert!(matches!(run(&cfg(Command::Dims)), Err(RunError::Missing("n"))));
        let mut c = cfg(Command::Gonality);
        c.n = Some(4);
        c.trials = 0;
        assert!(matches!(run(&c), Err(RunError::Invalid(_))));
    }
}
