//! Replicated simulation experiments.

use std::time::Instant;

use ccd_core::{adjusted_rand_index, success_rate, Method, SimSpec};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{default_delta_roots, derive_seed, AlphaSetting};
use crate::error::{CliError, CliResult};
use crate::runner::{fit, MethodSettings};

fn default_methods() -> Vec<Method> {
    vec![Method::Un]
}

fn default_alpha() -> AlphaSetting {
    AlphaSetting::Schedule
}

fn default_replicates() -> usize {
    50
}

/// Experiment description, as read from `--spec` JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchSpec {
    /// Dataset settings; its `rng_seed` is replaced per replicate.
    pub sim: SimSpec,
    #[serde(default = "default_methods")]
    pub methods: Vec<Method>,
    #[serde(default = "default_alpha")]
    pub alpha: AlphaSetting,
    #[serde(default)]
    pub mc_replicates: Option<usize>,
    /// KS `delta^(1/d)` grid; the default grid when absent.
    #[serde(default)]
    pub delta_roots: Option<Vec<f64>>,
    #[serde(default = "default_replicates")]
    pub replicates: usize,
    /// Master seed. Replicate `r` simulates its dataset from
    /// `derive_seed(seed, r)`; the Monte Carlo tests use `seed` itself.
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub descending: bool,
    #[serde(default)]
    pub flexible: bool,
    /// Record wall-clock time per run. Off by default so that reports are
    /// reproducible byte for byte.
    #[serde(default)]
    pub timing: bool,
}

impl BenchSpec {
    pub fn new(sim: SimSpec, methods: Vec<Method>, replicates: usize, seed: u64) -> Self {
        Self {
            sim,
            methods,
            alpha: AlphaSetting::Schedule,
            mc_replicates: None,
            delta_roots: None,
            replicates,
            seed,
            descending: false,
            flexible: false,
            timing: false,
        }
    }

    fn settings(&self) -> MethodSettings {
        MethodSettings {
            alpha: self.alpha,
            mc_replicates: self.mc_replicates,
            delta_roots: self.delta_roots.clone().unwrap_or_else(default_delta_roots),
            seed: self.seed,
            descending: self.descending,
            flexible: self.flexible,
        }
    }

    pub fn validate(&self) -> CliResult<()> {
        self.sim.validate()?;
        if self.replicates == 0 {
            return Err(CliError::Config("replicates must be at least 1".into()));
        }
        if self.methods.is_empty() {
            return Err(CliError::Config("no methods given".into()));
        }
        Ok(())
    }
}

/// One method on one replicate dataset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRow {
    pub replicate: usize,
    pub dataset_seed: u64,
    pub method: Method,
    pub k_hat: usize,
    pub k_true: usize,
    /// ARI over all points, noise points forming their own class.
    pub ari: f64,
    /// ARI over the cluster points only.
    pub ari_regular: f64,
    pub avg_silhouette: f64,
    pub alpha: Option<f64>,
    pub mc_replicates: Option<usize>,
    pub delta_root: Option<f64>,
    pub runtime_ms: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MethodSummary {
    pub method: Method,
    pub runs: usize,
    pub mean_ari: f64,
    pub mean_ari_regular: f64,
    pub mean_silhouette: f64,
    pub success_rate: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub spec: BenchSpec,
    pub rows: Vec<RunRow>,
    pub summary: Vec<MethodSummary>,
}

impl RunReport {
    pub fn summary_for(&self, method: Method) -> Option<&MethodSummary> {
        self.summary.iter().find(|s| s.method == method)
    }

    /// Human-readable table of the summary.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{} d={} n={} k={} noise={} replicates={}\n{:<6} {:>8} {:>12} {:>8} {:>6}\n",
            match self.spec.sim.family {
                ccd_core::Family::Uniform => "uniform",
                ccd_core::Family::Gaussian => "gaussian",
            },
            self.spec.sim.d,
            self.spec.sim.n,
            self.spec.sim.k,
            self.spec.sim.noise_level,
            self.spec.replicates,
            "method",
            "ARI",
            "ARI(regular)",
            "Sil",
            "SR"
        );
        for s in &self.summary {
            out.push_str(&format!(
                "{:<6} {:>8.3} {:>12.3} {:>8.3} {:>6.3}\n",
                s.method.to_string(),
                s.mean_ari,
                s.mean_ari_regular,
                s.mean_silhouette,
                s.success_rate
            ));
        }
        out
    }

    /// Per-run rows as CSV, for plotting.
    pub fn rows_csv(&self) -> CliResult<Vec<u8>> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for row in &self.rows {
            w.serialize(row)?;
        }
        w.into_inner().map_err(|e| CliError::Input(e.to_string()))
    }
}

fn mean(values: impl Iterator<Item = f64>) -> f64 {
    let (sum, count) = values.fold((0.0, 0usize), |(s, c), v| (s + v, c + 1));
    sum / count as f64
}

/// Aggregates rows per method, in the order methods first appear.
pub fn summarize(rows: &[RunRow]) -> CliResult<Vec<MethodSummary>> {
    let mut methods: Vec<Method> = Vec::new();
    for r in rows {
        if !methods.contains(&r.method) {
            methods.push(r.method);
        }
    }
    methods
        .into_iter()
        .map(|m| {
            let sel: Vec<&RunRow> = rows.iter().filter(|r| r.method == m).collect();
            let ks: Vec<(usize, usize)> = sel.iter().map(|r| (r.k_hat, r.k_true)).collect();
            Ok(MethodSummary {
                method: m,
                runs: sel.len(),
                mean_ari: mean(sel.iter().map(|r| r.ari)),
                mean_ari_regular: mean(sel.iter().map(|r| r.ari_regular)),
                mean_silhouette: mean(sel.iter().map(|r| r.avg_silhouette)),
                success_rate: success_rate(&ks)?,
            })
        })
        .collect()
}

fn run_replicate(
    spec: &BenchSpec,
    settings: &MethodSettings,
    replicate: usize,
) -> CliResult<Vec<RunRow>> {
    let dataset_seed = derive_seed(spec.seed, replicate as u64);
    let sim = SimSpec {
        rng_seed: dataset_seed,
        ..spec.sim.clone()
    };
    let ds = sim.generate()?;
    let n_regular = ds.n_regular;
    let mut rows = Vec::with_capacity(spec.methods.len());
    for &method in &spec.methods {
        let start = Instant::now();
        let f = fit(&ds.points, method, settings).map_err(|e| {
            e.context(format!(
                "replicate {replicate} (dataset seed {dataset_seed})"
            ))
        })?;
        let elapsed = start.elapsed().as_secs_f64() * 1e3;
        let labels = &f.clustering.labels;
        rows.push(RunRow {
            replicate,
            dataset_seed,
            method,
            k_hat: f.clustering.k_hat,
            k_true: ds.k_true,
            ari: adjusted_rand_index(labels, &ds.labels)?,
            ari_regular: adjusted_rand_index(&labels[..n_regular], &ds.labels[..n_regular])?,
            avg_silhouette: f.clustering.avg_silhouette,
            alpha: f.alpha,
            mc_replicates: f.mc_replicates,
            delta_root: f.delta_root,
            runtime_ms: spec.timing.then_some(elapsed),
        });
    }
    Ok(rows)
}

/// Generates `spec.replicates` datasets and runs every configured method on
/// each. Replicates run in parallel; the report does not depend on thread
/// scheduling.
pub fn run_bench(spec: &BenchSpec) -> CliResult<RunReport> {
    spec.validate()?;
    let settings = spec.settings();
    let per_replicate: Vec<Vec<RunRow>> = (0..spec.replicates)
        .into_par_iter()
        .map(|r| run_replicate(spec, &settings, r))
        .collect::<CliResult<_>>()?;
    let rows: Vec<RunRow> = per_replicate.into_iter().flatten().collect();
    let summary = summarize(&rows)?;
    Ok(RunReport {
        spec: spec.clone(),
        rows,
        summary,
    })
}
