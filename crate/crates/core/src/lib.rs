//! Cluster catch digraph (CCD) clustering.
//!
//! Three ways of sizing the per-point covering balls are provided:
//!
//! * **UN**: a Monte Carlo spatial randomness test on nearest-neighbor
//!   distances (mean and median, Holm corrected, lower-tailed).
//! * **RK**: a Monte Carlo envelope test on Ripley's K estimate.
//! * **KS**: maximization of a KS-type statistic with a density parameter.
//!
//! Whatever the radius rule, the pipeline is the same: build the catch
//! digraph, extract a greedy dominating set, prune it on the intersection
//! graph and keep the prefix of balls that maximizes the average silhouette.
//!
//! The numeric core is generic over [`Scalar`] (`f32` / `f64`); the aliases
//! at the bottom of this file fix it to `f64`, which is what the CLI uses.

pub mod ccd;
pub mod digraph;
pub mod error;
pub mod geometry;
pub mod metrics;
mod sampling;
pub mod scalar;
pub mod srt;
pub mod synth;

pub use crate::ccd::{
    assign_by_rho, cluster, greedy_mds, greedy_mds_scored, refine_by_silhouette, rho, Candidate,
    CcdClusterer, Clustering, DominatingSet, Method,
};
pub use crate::digraph::{
    build_catch_digraph, build_intersection_graph, CatchDigraph, IntersectionGraph,
};
pub use crate::error::{CcdError, Result};
pub use crate::geometry::{pairwise_distances, CoveringBall, DistanceMatrix, PointSet};
pub use crate::metrics::{adjusted_rand_index, avg_silhouette, success_rate, ValidationReport};
pub use crate::scalar::Scalar;
pub use crate::srt::{
    holm_step_down, mc_srt_nnd, mc_srt_ripley, nnd_statistics, radius_ks, radius_rk, radius_un,
    ripley_k_hat, KsStatistic, RipleyEstimate, SrtConfig, SrtOutcome,
};
pub use crate::synth::{CenterLayout, Family, LabeledDataset, SimSpec};

pub type PointSet64 = PointSet<f64>;
pub type PointSet32 = PointSet<f32>;
pub type DistanceMatrix64 = DistanceMatrix<f64>;
pub type DistanceMatrix32 = DistanceMatrix<f32>;
pub type CoveringBall64 = CoveringBall<f64>;
pub type CatchDigraph64 = CatchDigraph<f64>;
pub type Clustering64 = Clustering<f64>;
pub type Clustering32 = Clustering<f32>;
pub type SrtOutcome64 = SrtOutcome<f64>;
pub type LabeledDataset64 = LabeledDataset<f64>;
