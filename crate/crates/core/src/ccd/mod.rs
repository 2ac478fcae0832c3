//! The clustering pipeline: per-point radii, catch digraph, greedy
//! dominating set, intersection-graph pruning and silhouette refinement.

mod mds;
mod refine;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::digraph::{build_catch_digraph, build_intersection_graph};
use crate::error::{CcdError, Result};
use crate::geometry::{pairwise_distances, CoveringBall, DistanceMatrix, PointSet};
use crate::metrics::silhouette_from_distances;
use crate::scalar::Scalar;
use crate::srt::{RadiusSearch, SrtConfig};

pub use mds::{greedy_mds, greedy_mds_scored, DominatingSet};
pub use refine::{assign_by_rho, refine_by_silhouette, rho, Candidate};

/// Radius rule for the covering balls.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Monte Carlo NND test.
    Un,
    /// Monte Carlo Ripley's K envelope test.
    Rk,
    /// KS-type statistic with density parameter `delta`.
    Ks,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Un, Method::Rk, Method::Ks];
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Un => "UN",
            Method::Rk => "RK",
            Method::Ks => "KS",
        })
    }
}

impl FromStr for Method {
    type Err = CcdError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "un" => Ok(Method::Un),
            "rk" => Ok(Method::Rk),
            "ks" => Ok(Method::Ks),
            other => Err(CcdError::Config(format!(
                "unknown method {other:?} (expected un, rk or ks)"
            ))),
        }
    }
}

/// A hard partition of the input points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Clustering<T> {
    /// Cluster id in `0..k_hat` per point.
    pub labels: Vec<usize>,
    pub k_hat: usize,
    /// One ball per cluster, in label order. In flexible mode this is the
    /// largest ball of the cluster's component.
    pub dominating_balls: Vec<CoveringBall<T>>,
    /// All balls making up each cluster (a single ball unless flexible).
    pub cluster_balls: Vec<Vec<CoveringBall<T>>>,
    /// 0 when `k_hat == 1`.
    pub avg_silhouette: f64,
    pub method: Method,
    pub flexible: bool,
}

/// End-to-end clusterer. `delta` is the KS density parameter itself (not
/// its `d`-th root) and is only read by [`Method::Ks`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CcdClusterer<T> {
    pub method: Method,
    pub srt: SrtConfig,
    pub delta: Option<T>,
    pub flexible: bool,
}

impl<T: Scalar> CcdClusterer<T> {
    pub fn new(method: Method, srt: SrtConfig, delta: Option<T>, flexible: bool) -> Self {
        Self {
            method,
            srt,
            delta,
            flexible,
        }
    }

    fn validate(&self) -> Result<()> {
        match self.method {
            Method::Ks => match self.delta {
                Some(delta) if delta > T::zero() && delta.is_finite() => Ok(()),
                Some(delta) => Err(CcdError::Config(format!(
                    "delta must be finite and positive, got {delta}"
                ))),
                None => Err(CcdError::Config("the KS method needs a delta".into())),
            },
            Method::Un | Method::Rk => self.srt.validate(),
        }
    }

    /// Covering ball of every point.
    pub fn covering_balls(
        &self,
        ps: &PointSet<T>,
        dm: &DistanceMatrix<T>,
    ) -> Result<Vec<CoveringBall<T>>> {
        self.validate()?;
        if ps.len() < 2 {
            return Err(CcdError::InsufficientPoints {
                needed: 2,
                got: ps.len(),
            });
        }
        let search = RadiusSearch::new(dm, ps.dim());
        (0..ps.len())
            .into_par_iter()
            .map(|i| match self.method {
                Method::Un => search.un(i, &self.srt),
                Method::Rk => search.rk(i, &self.srt),
                Method::Ks => search.ks(i, self.delta.unwrap_or_else(T::one)),
            })
            .collect()
    }

    pub fn fit(&self, ps: &PointSet<T>) -> Result<Clustering<T>> {
        let dm = pairwise_distances(ps);
        let balls = self.covering_balls(ps, &dm)?;
        let digraph = build_catch_digraph(&dm, &balls)?;
        let mds = greedy_mds(&digraph);
        if !mds.dominates(ps.len()) {
            return Err(CcdError::Invariant(
                "greedy dominating set leaves points uncovered".into(),
            ));
        }
        let graph = build_intersection_graph(&digraph, &mds.members)?;
        if self.flexible {
            return flexible_clustering(&dm, &graph, self.method);
        }
        let candidates: Vec<Candidate<T>> = greedy_mds_scored(&graph)
            .into_iter()
            .map(|v| Candidate {
                ball: graph.ball(v),
                covered: graph.coverage(v).to_vec(),
            })
            .collect();
        refine_by_silhouette(&dm, &candidates, self.method)
    }
}

/// Clusters are the connected components of the intersection graph; each
/// point joins the component of its argmin-`rho` ball.
fn flexible_clustering<T: Scalar>(
    dm: &DistanceMatrix<T>,
    graph: &crate::digraph::IntersectionGraph<T>,
    method: Method,
) -> Result<Clustering<T>> {
    let components = graph.connected_components();
    let mut component_of = vec![0; graph.len()];
    for (c, comp) in components.iter().enumerate() {
        for &v in comp {
            component_of[v] = c;
        }
    }
    let balls: Vec<CoveringBall<T>> = (0..graph.len()).map(|v| graph.ball(v)).collect();
    let raw: Vec<usize> = assign_by_rho(dm, &balls)?
        .into_iter()
        .map(|v| component_of[v])
        .collect();

    // renumber non-empty components in component order
    let mut remap = vec![usize::MAX; components.len()];
    for &c in &raw {
        remap[c] = 0;
    }
    let mut kept = Vec::new();
    for (c, slot) in remap.iter_mut().enumerate() {
        if *slot == 0 {
            *slot = kept.len();
            kept.push(c);
        }
    }
    let labels: Vec<usize> = raw.iter().map(|&c| remap[c]).collect();
    let cluster_balls: Vec<Vec<CoveringBall<T>>> = kept
        .iter()
        .map(|&c| components[c].iter().map(|&v| graph.ball(v)).collect())
        .collect();
    let dominating_balls = kept
        .iter()
        .map(|&c| {
            let mut best = components[c][0];
            for &v in &components[c][1..] {
                if graph.coverage(v).len() > graph.coverage(best).len() {
                    best = v;
                }
            }
            graph.ball(best)
        })
        .collect();
    let avg_silhouette = if kept.len() >= 2 {
        silhouette_from_distances(dm, &labels)?
    } else {
        0.0
    };
    Ok(Clustering {
        labels,
        k_hat: kept.len(),
        dominating_balls,
        cluster_balls,
        avg_silhouette,
        method,
        flexible: true,
    })
}

/// Clusters `ps` with the given radius rule.
///
/// `delta` is required for [`Method::Ks`]; `cfg` is ignored there.
pub fn cluster<T: Scalar>(
    ps: &PointSet<T>,
    method: Method,
    cfg: &SrtConfig,
    delta: Option<T>,
    flexible: bool,
) -> Result<Clustering<T>> {
    CcdClusterer::new(method, *cfg, delta, flexible).fit(ps)
}
