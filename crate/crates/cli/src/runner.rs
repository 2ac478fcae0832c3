//! Runs one method on one point set with resolved defaults.

use ccd_core::{cluster, Clustering64, Method, PointSet64};
use serde::{Deserialize, Serialize};

use crate::config::{default_delta_roots, delta_from_root, srt_config, AlphaSetting};
use crate::error::CliResult;

/// Method settings before resolution against a dataset's dimension.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MethodSettings {
    pub alpha: AlphaSetting,
    /// Monte Carlo replicates `N`; `max(999, ceil(2/alpha))` when absent.
    pub mc_replicates: Option<usize>,
    /// Candidate `delta^(1/d)` values for KS. A single value is used as is;
    /// several are searched for the best average silhouette.
    pub delta_roots: Vec<f64>,
    pub seed: u64,
    pub descending: bool,
    pub flexible: bool,
}

impl Default for MethodSettings {
    fn default() -> Self {
        Self {
            alpha: AlphaSetting::Schedule,
            mc_replicates: None,
            delta_roots: default_delta_roots(),
            seed: 0,
            descending: false,
            flexible: false,
        }
    }
}

/// A clustering with the parameters that produced it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Fit {
    pub method: Method,
    /// Resolved significance level (UN and RK).
    pub alpha: Option<f64>,
    pub mc_replicates: Option<usize>,
    /// Selected `delta^(1/d)` (KS).
    pub delta_root: Option<f64>,
    pub clustering: Clustering64,
}

pub fn fit(ps: &PointSet64, method: Method, settings: &MethodSettings) -> CliResult<Fit> {
    let d = ps.dim();
    let cfg = srt_config(
        settings.alpha,
        method,
        d,
        settings.mc_replicates,
        settings.descending,
        settings.seed,
    )?;
    if method != Method::Ks {
        let clustering = cluster(ps, method, &cfg, None, settings.flexible)?;
        return Ok(Fit {
            method,
            alpha: Some(cfg.alpha),
            mc_replicates: Some(cfg.num_replicates),
            delta_root: None,
            clustering,
        });
    }
    if settings.delta_roots.is_empty() {
        return Err(crate::error::CliError::Config(
            "KS needs at least one delta root".into(),
        ));
    }
    let mut best: Option<(f64, Clustering64)> = None;
    for &root in &settings.delta_roots {
        let delta = delta_from_root(root, d)?;
        let c = cluster(ps, Method::Ks, &cfg, Some(delta), settings.flexible)?;
        if best
            .as_ref()
            .is_none_or(|(_, b)| c.avg_silhouette > b.avg_silhouette)
        {
            best = Some((root, c));
        }
    }
    let (root, clustering) = best.expect("non-empty grid");
    Ok(Fit {
        method,
        alpha: None,
        mc_replicates: None,
        delta_root: Some(root),
        clustering,
    })
}
