//! Replicated factorial experiments: generate → perturb → model → measure.

use indexmap::IndexMap;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use spatialgen::record::format_value;
use spatialgen::rng::mix_seed_path;
use spatialgen::RngStream;

use crate::error::{CliError, CliResult};
use crate::measures::{self, Source};
use crate::spec::{Artifact, ArtifactKind, GeneratorSpec, PerturbationSpec, SchellingSpec};

pub const DEFAULT_JOB_CAP: u64 = 1_000_000;
/// Environment variable capping the number of worker threads.
pub const JOBS_ENV: &str = "SPATIALGEN_JOBS";

fn one() -> u64 {
    1
}

fn default_cap() -> u64 {
    DEFAULT_JOB_CAP
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ExperimentConfig {
    pub generator: GeneratorSpec,
    #[serde(default)]
    pub perturbations: Vec<PerturbationSpec>,
    pub indicators: Vec<String>,
    #[serde(default)]
    pub model: Option<SchellingSpec>,
    #[serde(default = "one")]
    pub replications: u64,
    #[serde(default)]
    pub base_seed: u64,
    /// Parameter name → values, expanded as a full factorial in key order
    /// (last key varies fastest). Bare names address generator fields;
    /// dotted paths such as `model.tolerance` or `perturbations.0.sigma`
    /// address the rest of the config.
    #[serde(default)]
    pub parameter_grid: IndexMap<String, Vec<Value>>,
    #[serde(default = "default_cap")]
    pub job_cap: u64,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> CliResult<Self> {
        serde_json::from_str(text).map_err(|e| CliError::config(format!("invalid experiment config: {e}")))
    }

    pub fn factorial_size(&self) -> u64 {
        self.parameter_grid.values().map(|v| v.len() as u64).product()
    }

    /// Checks names, compatibility and size, and resolves every factorial
    /// point into a concrete pipeline. Nothing runs before this succeeds.
    pub fn plan(&self) -> CliResult<Vec<Point>> {
        if self.replications == 0 {
            return Err(CliError::config("replications must be at least 1"));
        }
        if self.indicators.is_empty() {
            return Err(CliError::config("at least one indicator is required"));
        }
        for (name, values) in &self.parameter_grid {
            if values.is_empty() {
                return Err(CliError::config(format!("parameter {name} has no values")));
            }
        }
        let jobs = self.factorial_size().checked_mul(self.replications).unwrap_or(u64::MAX);
        if jobs > self.job_cap {
            return Err(CliError::config(format!("{jobs} jobs exceed the cap of {}", self.job_cap)));
        }
        let base = serde_json::to_value(self).map_err(|e| CliError::config(e.to_string()))?;
        for name in self.parameter_grid.keys() {
            if lookup(&base, name).is_none() {
                return Err(CliError::config(format!("unknown parameter: {name}")));
            }
        }
        let mut points = Vec::new();
        for (index, assignment) in factorial(&self.parameter_grid).into_iter().enumerate() {
            let mut doc = base.clone();
            for (name, value) in self.parameter_grid.keys().zip(&assignment) {
                *lookup_mut(&mut doc, name).expect("checked above") = value.clone();
            }
            let cfg: ExperimentConfig = serde_json::from_value(doc)
                .map_err(|e| CliError::config(format!("factorial point {index}: {e}")))?;
            cfg.check_pipeline()?;
            points.push(Point {
                index: index as u64,
                values: assignment,
                generator: cfg.generator,
                perturbations: cfg.perturbations,
                model: cfg.model,
            });
        }
        Ok(points)
    }

    fn check_pipeline(&self) -> CliResult<()> {
        let kind = self.generator.kind();
        for p in &self.perturbations {
            if p.accepts() != kind {
                return Err(CliError::config(format!(
                    "perturbation {p:?} needs a {} but the generator makes a {}",
                    p.accepts().name(),
                    kind.name()
                )));
            }
        }
        if self.model.is_some() && kind != ArtifactKind::Grid {
            return Err(CliError::config("the Schelling model needs a grid generator"));
        }
        for name in &self.indicators {
            match measures::classify(name) {
                None => return Err(CliError::config(format!("unknown indicator: {name}"))),
                Some(Source::Model) if self.model.is_none() => {
                    return Err(CliError::config(format!("indicator {name} needs a model")))
                }
                Some(Source::Artifact(k)) if k != kind => {
                    return Err(CliError::config(format!("indicator {name} does not apply to a {}", kind.name())))
                }
                _ => {}
            }
        }
        Ok(())
    }
}

fn path(name: &str) -> Vec<&str> {
    if name.contains('.') {
        name.split('.').collect()
    } else {
        vec!["generator", name]
    }
}

fn lookup<'a>(doc: &'a Value, name: &str) -> Option<&'a Value> {
    let mut cur = doc;
    for key in path(name) {
        cur = match cur {
            Value::Object(m) => m.get(key)?,
            Value::Array(a) => a.get(key.parse::<usize>().ok()?)?,
            _ => return None,
        };
    }
    (name != "generator.type").then_some(cur)
}

fn lookup_mut<'a>(doc: &'a mut Value, name: &str) -> Option<&'a mut Value> {
    let mut cur = doc;
    for key in path(name) {
        cur = match cur {
            Value::Object(m) => m.get_mut(key)?,
            Value::Array(a) => a.get_mut(key.parse::<usize>().ok()?)?,
            _ => return None,
        };
    }
    Some(cur)
}

fn factorial(grid: &IndexMap<String, Vec<Value>>) -> Vec<Vec<Value>> {
    let mut out: Vec<Vec<Value>> = vec![Vec::new()];
    for values in grid.values() {
        out = out.into_iter().flat_map(|prefix| values.iter().map(move |v| [prefix.clone(), vec![v.clone()]].concat())).collect();
    }
    out
}

/// One resolved factorial point.
#[derive(Debug, Clone)]
pub struct Point {
    pub index: u64,
    pub values: Vec<Value>,
    pub generator: GeneratorSpec,
    pub perturbations: Vec<PerturbationSpec>,
    pub model: Option<SchellingSpec>,
}

/// Substream indices inside one replication.
const GENERATOR_STREAM: u64 = 0;
const PERTURBATION_STREAM: u64 = 1;
const MODEL_STREAM: u64 = 1 << 32;

fn run_job(point: &Point, indicators: &[String], seed: u64) -> spatialgen::Result<Vec<f64>> {
    let root = RngStream::new(seed);
    let mut artifact = point.generator.generate(&mut root.substream(GENERATOR_STREAM))?;
    for (i, p) in point.perturbations.iter().enumerate() {
        artifact = p.apply(artifact, &mut root.substream(PERTURBATION_STREAM + i as u64))?;
    }
    let outcome = match (&point.model, &artifact) {
        (Some(m), Artifact::Grid(g)) => Some(m.run(g, &mut root.substream(MODEL_STREAM))?),
        _ => None,
    };
    let rec = measures::evaluate(indicators, &artifact, outcome.as_ref())?;
    Ok(rec.iter().map(|(_, v)| v).collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub point: u64,
    pub replication: u64,
    pub seed: u64,
    pub params: Vec<Value>,
    pub outcome: Result<Vec<f64>, String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResultsTable {
    pub parameters: Vec<String>,
    pub indicators: Vec<String>,
    pub rows: Vec<ResultRow>,
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn param_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

impl ResultsTable {
    pub fn column(&self, name: &str) -> Option<Vec<Option<f64>>> {
        let k = self.indicators.iter().position(|n| n == name)?;
        Some(self.rows.iter().map(|r| r.outcome.as_ref().ok().map(|v| v[k])).collect())
    }

    /// Wide CSV: parameters, `replication`, `seed`, indicators, `error`.
    pub fn to_csv(&self) -> String {
        let mut header: Vec<String> = self.parameters.iter().map(|p| csv_field(p)).collect();
        header.extend(["replication".to_string(), "seed".to_string()]);
        header.extend(self.indicators.iter().map(|i| csv_field(i)));
        header.push("error".into());
        let mut out = header.join(",");
        out.push('\n');
        for row in &self.rows {
            let mut cells: Vec<String> = row.params.iter().map(|v| csv_field(&param_text(v))).collect();
            cells.push(row.replication.to_string());
            cells.push(row.seed.to_string());
            match &row.outcome {
                Ok(values) => {
                    cells.extend(values.iter().map(|v| format_value(*v)));
                    cells.push(String::new());
                }
                Err(e) => {
                    cells.extend(self.indicators.iter().map(|_| String::new()));
                    cells.push(csv_field(e));
                }
            }
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

/// Worker count: `SPATIALGEN_JOBS` when set to a positive integer, otherwise
/// the available parallelism.
pub fn worker_count() -> usize {
    std::env::var(JOBS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

/// Runs every factorial point × replication. Seeds are
/// `mix(baseSeed, pointIndex, replication)`; rows come back point-major,
/// replication-minor regardless of scheduling.
pub fn run_experiment(config: &ExperimentConfig, workers: usize) -> CliResult<ResultsTable> {
    let points = config.plan()?;
    let jobs: Vec<(&Point, u64)> =
        points.iter().flat_map(|p| (0..config.replications).map(move |r| (p, r))).collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| CliError::config(format!("thread pool: {e}")))?;
    let rows = pool.install(|| {
        jobs.par_iter()
            .map(|&(point, r)| {
                let seed = mix_seed_path(config.base_seed, &[point.index, r]);
                ResultRow {
                    point: point.index,
                    replication: r,
                    seed,
                    params: point.values.clone(),
                    outcome: run_job(point, &config.indicators, seed).map_err(|e| e.to_string()),
                }
            })
            .collect()
    });
    Ok(ResultsTable {
        parameters: config.parameter_grid.keys().cloned().collect(),
        indicators: config.indicators.clone(),
        rows,
    })
}
