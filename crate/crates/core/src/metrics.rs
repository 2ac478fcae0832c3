//! Clustering validation: adjusted Rand index, average silhouette and
//! success rate.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{CcdError, Result};
use crate::geometry::{pairwise_distances, DistanceMatrix, PointSet};
use crate::scalar::Scalar;

/// Maps arbitrary labels onto `0..k` in order of first appearance.
pub fn compact_labels(labels: &[usize]) -> (Vec<usize>, usize) {
    let mut ids = HashMap::new();
    let out = labels
        .iter()
        .map(|l| {
            let next = ids.len();
            *ids.entry(*l).or_insert(next)
        })
        .collect();
    (out, ids.len())
}

/// Adjusted Rand index (Hubert and Arabie) between two labelings of the
/// same points.
///
/// When both partitions are trivial in the same way (all in one cluster, or
/// all singletons) the index is 0/0; it is reported as 1 since the
/// partitions then coincide.
pub fn adjusted_rand_index(labels_a: &[usize], labels_b: &[usize]) -> Result<f64> {
    if labels_a.len() != labels_b.len() {
        return Err(CcdError::Input(format!(
            "labelings have different lengths ({} vs {})",
            labels_a.len(),
            labels_b.len()
        )));
    }
    let n = labels_a.len();
    if n < 2 {
        return Err(CcdError::Input(format!(
            "ARI needs at least 2 points, got {n}"
        )));
    }
    let (a, ka) = compact_labels(labels_a);
    let (b, kb) = compact_labels(labels_b);
    let mut table = vec![0usize; ka * kb];
    let mut rows = vec![0usize; ka];
    let mut cols = vec![0usize; kb];
    for (&i, &j) in a.iter().zip(&b) {
        table[i * kb + j] += 1;
        rows[i] += 1;
        cols[j] += 1;
    }
    // exact integer arithmetic up to the final division:
    // ARI = 2 (index C - sA sB) / ((sA + sB) C - 2 sA sB), C = n choose 2
    let pairs = |c: &usize| (*c as i128) * (*c as i128 - 1) / 2;
    let index: i128 = table.iter().map(pairs).sum();
    let sum_a: i128 = rows.iter().map(pairs).sum();
    let sum_b: i128 = cols.iter().map(pairs).sum();
    let total = pairs(&n);
    let num = 2 * (index * total - sum_a * sum_b);
    let den = (sum_a + sum_b) * total - 2 * sum_a * sum_b;
    if den == 0 {
        return Ok(1.0);
    }
    Ok(num as f64 / den as f64)
}

/// Per-point silhouette values from a distance matrix. Points in singleton
/// clusters get 0.
pub fn silhouette_samples<T: Scalar>(dm: &DistanceMatrix<T>, labels: &[usize]) -> Result<Vec<f64>> {
    let n = dm.len();
    if labels.len() != n {
        return Err(CcdError::Input(format!(
            "{} labels given for {n} points",
            labels.len()
        )));
    }
    let (labels, k) = compact_labels(labels);
    if k < 2 {
        return Err(CcdError::UndefinedMetric(format!(
            "silhouette needs at least 2 clusters, got {k}"
        )));
    }
    let mut sizes = vec![0usize; k];
    for &l in &labels {
        sizes[l] += 1;
    }
    let mut sums = vec![0.0f64; k];
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let own = labels[i];
        if sizes[own] == 1 {
            out.push(0.0);
            continue;
        }
        sums.iter_mut().for_each(|s| *s = 0.0);
        for (j, &dist) in dm.row(i).iter().enumerate() {
            sums[labels[j]] += dist.as_f64();
        }
        let a = sums[own] / (sizes[own] - 1) as f64;
        let b = (0..k)
            .filter(|&c| c != own && sizes[c] > 0)
            .map(|c| sums[c] / sizes[c] as f64)
            .fold(f64::INFINITY, f64::min);
        let denom = a.max(b);
        out.push(if denom > 0.0 { (b - a) / denom } else { 0.0 });
    }
    Ok(out)
}

/// Average silhouette over all points, given their distance matrix.
pub fn silhouette_from_distances<T: Scalar>(
    dm: &DistanceMatrix<T>,
    labels: &[usize],
) -> Result<f64> {
    let s = silhouette_samples(dm, labels)?;
    Ok(s.iter().sum::<f64>() / s.len() as f64)
}

/// Average silhouette (Rousseeuw) of a labeling. Needs at least two
/// clusters.
pub fn avg_silhouette<T: Scalar>(ps: &PointSet<T>, labels: &[usize]) -> Result<f64> {
    silhouette_from_distances(&pairwise_distances(ps), labels)
}

/// Fraction of `(k_hat, k_true)` runs that found the right cluster count.
pub fn success_rate(runs: &[(usize, usize)]) -> Result<f64> {
    if runs.is_empty() {
        return Err(CcdError::Input("success rate of zero runs".into()));
    }
    let hits = runs
        .iter()
        .filter(|(k_hat, k_true)| k_hat == k_true)
        .count();
    Ok(hits as f64 / runs.len() as f64)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    /// ARI against the truth; `None` without ground truth.
    pub ari: Option<f64>,
    /// Average silhouette; 0 when fewer than two clusters were predicted.
    pub avg_silhouette: f64,
    /// False when `avg_silhouette` is the single-cluster placeholder.
    pub silhouette_defined: bool,
    pub k_hat: usize,
    pub k_true: Option<usize>,
    pub success: Option<bool>,
}

impl ValidationReport {
    /// Scores `pred` on `ps`, and against `truth` when given. `k_true` is the
    /// number of distinct truth labels.
    pub fn compute<T: Scalar>(
        ps: &PointSet<T>,
        pred: &[usize],
        truth: Option<&[usize]>,
    ) -> Result<Self> {
        Self::compute_with_distances(&pairwise_distances(ps), pred, truth)
    }

    pub fn compute_with_distances<T: Scalar>(
        dm: &DistanceMatrix<T>,
        pred: &[usize],
        truth: Option<&[usize]>,
    ) -> Result<Self> {
        if pred.len() != dm.len() {
            return Err(CcdError::Input(format!(
                "{} predicted labels for {} points",
                pred.len(),
                dm.len()
            )));
        }
        let (_, k_hat) = compact_labels(pred);
        let (avg_silhouette, silhouette_defined) = if k_hat >= 2 {
            (silhouette_from_distances(dm, pred)?, true)
        } else {
            (0.0, false)
        };
        let (ari, k_true) = match truth {
            Some(t) => (
                Some(adjusted_rand_index(pred, t)?),
                Some(compact_labels(t).1),
            ),
            None => (None, None),
        };
        Ok(Self {
            ari,
            avg_silhouette,
            silhouette_defined,
            k_hat,
            k_true,
            success: k_true.map(|k| k == k_hat),
        })
    }
}
