//! Implementations of the `ccd` subcommands, independent of argument parsing.

use std::path::Path;

use ccd_core::metrics::ValidationReport;
use ccd_core::{adjusted_rand_index, CoveringBall64, Method, SimSpec};
use serde::{Deserialize, Serialize};

use crate::bench::{run_bench, BenchSpec, RunReport};
use crate::csvio::{dataset_to_csv, read_dataset, read_labels, write_atomic, Dataset};
use crate::error::{CliError, CliResult};
use crate::runner::{fit, MethodSettings};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterResult {
    pub method: Method,
    pub alpha: Option<f64>,
    pub mc_replicates: Option<usize>,
    pub delta_root: Option<f64>,
    pub k_hat: usize,
    pub avg_silhouette: f64,
    /// Against the file's `label` column, when present.
    pub ari: Option<f64>,
    pub dominating_balls: Vec<CoveringBall64>,
    pub labels: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterReport {
    pub input: String,
    pub n: usize,
    pub d: usize,
    pub normalized: bool,
    pub k_true: Option<usize>,
    pub settings: MethodSettings,
    pub results: Vec<ClusterResult>,
}

/// Clusters an already loaded dataset with each method.
pub fn cluster_dataset(
    ds: &Dataset,
    methods: &[Method],
    settings: &MethodSettings,
) -> CliResult<Vec<ClusterResult>> {
    methods
        .iter()
        .map(|&method| {
            let f = fit(&ds.points, method, settings)?;
            let ari = match &ds.labels {
                Some(truth) => Some(adjusted_rand_index(&f.clustering.labels, truth)?),
                None => None,
            };
            Ok(ClusterResult {
                method,
                alpha: f.alpha,
                mc_replicates: f.mc_replicates,
                delta_root: f.delta_root,
                k_hat: f.clustering.k_hat,
                avg_silhouette: f.clustering.avg_silhouette,
                ari,
                dominating_balls: f.clustering.dominating_balls,
                labels: f.clustering.labels,
            })
        })
        .collect()
}

pub fn cluster_file(
    input: &Path,
    normalize: bool,
    methods: &[Method],
    settings: &MethodSettings,
) -> CliResult<ClusterReport> {
    let ds = read_dataset(input, normalize)?;
    let results = cluster_dataset(&ds, methods, settings)?;
    Ok(ClusterReport {
        input: input.display().to_string(),
        n: ds.points.len(),
        d: ds.points.dim(),
        normalized: normalize,
        k_true: ds.k_true(),
        settings: settings.clone(),
        results,
    })
}

/// Generates a dataset and writes it as CSV with a `label` column.
pub fn simulate_to(spec: &SimSpec, out: &Path) -> CliResult<()> {
    let ds = spec.generate()?;
    write_atomic(out, &dataset_to_csv(&ds.points, Some(&ds.labels))?)
}

pub fn bench_file(spec_path: &Path, replicates: Option<usize>) -> CliResult<RunReport> {
    let text = std::fs::read_to_string(spec_path)
        .map_err(|e| CliError::Input(format!("{}: {e}", spec_path.display())))?;
    let mut spec: BenchSpec = serde_json::from_str(&text)
        .map_err(|e| CliError::Config(format!("{}: {e}", spec_path.display())))?;
    if let Some(r) = replicates {
        spec.replicates = r;
    }
    run_bench(&spec)
}

/// Scores predicted labels against true labels on the given data.
pub fn evaluate_files(
    pred: &Path,
    truth: &Path,
    data: &Path,
    normalize: bool,
) -> CliResult<ValidationReport> {
    let pred = read_labels(pred)?;
    let truth = read_labels(truth)?;
    let ds = read_dataset(data, normalize)?;
    if pred.len() != truth.len() || pred.len() != ds.points.len() {
        return Err(CliError::Input(format!(
            "row counts differ: {} predicted, {} true, {} data",
            pred.len(),
            truth.len(),
            ds.points.len()
        )));
    }
    Ok(ValidationReport::compute(&ds.points, &pred, Some(&truth))?)
}

pub fn to_json<T: Serialize>(value: &T) -> CliResult<Vec<u8>> {
    let mut bytes = serde_json::to_vec_pretty(value)?;
    bytes.push(b'\n');
    Ok(bytes)
}
