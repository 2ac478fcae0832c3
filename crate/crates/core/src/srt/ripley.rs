use crate::error::{CcdError, Result};
use crate::geometry::{CoveringBall, PointSet};
use crate::scalar::Scalar;

use super::null::{ripley_null, NullKey};
use super::SrtConfig;

/// Number of equally spaced thresholds in `(0, r]` at which K is compared
/// against its CSR envelope.
pub const RIPLEY_GRID_SIZE: usize = 10;

/// Volume of the unit ball in `R^d`.
pub fn unit_ball_volume(d: usize) -> f64 {
    let even = d.is_multiple_of(2);
    let mut v = if even { 1.0 } else { 2.0 };
    let mut k = if even { 2 } else { 3 };
    while k <= d {
        v *= 2.0 * std::f64::consts::PI / k as f64;
        k += 2;
    }
    v
}

/// Ripley's K estimate without edge correction:
/// `volume / (n (n - 1)) * #{ordered pairs i != j with d(i, j) <= t}`.
pub fn ripley_k_hat<T: Scalar>(local: &PointSet<T>, t: T, volume: T) -> Result<T> {
    if !(volume > T::zero()) {
        return Err(CcdError::Input(format!(
            "window volume must be positive, got {volume}"
        )));
    }
    let n = local.len();
    if n < 2 {
        return Err(CcdError::InsufficientPoints { needed: 2, got: n });
    }
    let mut pairs = 0usize;
    for i in 0..n {
        for j in (i + 1)..n {
            if local.distance(i, j) <= t {
                pairs += 2;
            }
        }
    }
    Ok(volume * T::of_usize(pairs) / T::of_usize(n * (n - 1)))
}

/// K estimate on the test grid with its pointwise CSR envelope.
#[derive(Debug, Clone, PartialEq)]
pub struct RipleyEstimate<T> {
    pub t_grid: Vec<T>,
    pub k_hat: Vec<T>,
    /// Lower `alpha` quantile of the replicate K estimates.
    pub envelope_low: Vec<T>,
    /// Upper `1 - alpha` quantile; infinite when `N` is too small to place it.
    pub envelope_high: Vec<T>,
    pub reject: bool,
}

pub(crate) fn grid<T: Scalar>(radius: T) -> [T; RIPLEY_GRID_SIZE] {
    let g = T::of_usize(RIPLEY_GRID_SIZE);
    std::array::from_fn(|k| radius * T::of_usize(k + 1) / g)
}

/// Ordered pair counts within each grid threshold, given the pairwise
/// distances of the local points.
pub(crate) fn grid_counts<T: Scalar>(
    radius: T,
    pair_distances: impl Iterator<Item = T>,
) -> [u32; RIPLEY_GRID_SIZE] {
    let thresholds = grid(radius);
    let mut hist = [0u32; RIPLEY_GRID_SIZE];
    for dist in pair_distances {
        let bucket = thresholds.partition_point(|&t| t < dist);
        if bucket < RIPLEY_GRID_SIZE {
            hist[bucket] += 2;
        }
    }
    let mut acc = 0;
    for h in hist.iter_mut() {
        acc += *h;
        *h = acc;
    }
    hist
}

fn upper_rank(alpha: f64, n: usize) -> usize {
    ((1.0 - alpha) * (n + 1) as f64 - 1e-9).ceil() as usize
}

fn lower_rank(alpha: f64, n: usize) -> usize {
    ((alpha * (n + 1) as f64 + 1e-9).floor() as usize).max(1)
}

/// One-sided envelope decision: reject CSR when the observed count exceeds
/// the upper `(1 - alpha)` replicate quantile at any grid point.
pub(crate) fn ripley_decision(
    m: usize,
    dim: usize,
    counts: &[u32; RIPLEY_GRID_SIZE],
    cfg: &SrtConfig,
) -> bool {
    let null = ripley_null(NullKey {
        points: m,
        dim,
        replicates: cfg.num_replicates,
        seed: cfg.rng_seed,
    });
    let rank = upper_rank(cfg.alpha, cfg.num_replicates);
    if rank > cfg.num_replicates {
        return false;
    }
    counts
        .iter()
        .zip(&null.counts)
        .any(|(&obs, reps)| obs > reps[rank - 1])
}

/// Full envelope test, returning the estimate on the grid.
pub fn ripley_envelope_test<T: Scalar>(
    local: &PointSet<T>,
    ball: &CoveringBall<T>,
    cfg: &SrtConfig,
) -> Result<RipleyEstimate<T>> {
    cfg.validate()?;
    let m = local.len();
    let radius = ball.radius;
    if m < 2 || radius <= T::zero() {
        return Ok(RipleyEstimate {
            t_grid: Vec::new(),
            k_hat: Vec::new(),
            envelope_low: Vec::new(),
            envelope_high: Vec::new(),
            reject: false,
        });
    }
    let dim = local.dim();
    let pairs = (0..m).flat_map(|i| ((i + 1)..m).map(move |j| (i, j)));
    let counts = grid_counts(radius, pairs.map(|(i, j)| local.distance(i, j)));
    let reject = ripley_decision(m, dim, &counts, cfg);

    let null = ripley_null(NullKey {
        points: m,
        dim,
        replicates: cfg.num_replicates,
        seed: cfg.rng_seed,
    });
    let volume = T::of(unit_ball_volume(dim)) * radius.powi(dim as i32);
    let per_pair = volume / T::of_usize(m * (m - 1));
    let n = cfg.num_replicates;
    let hi = upper_rank(cfg.alpha, n);
    let lo = lower_rank(cfg.alpha, n).min(n);
    Ok(RipleyEstimate {
        t_grid: grid(radius).to_vec(),
        k_hat: counts
            .iter()
            .map(|&c| per_pair * T::of_usize(c as usize))
            .collect(),
        envelope_low: null
            .counts
            .iter()
            .map(|reps| per_pair * T::of_usize(reps[lo - 1] as usize))
            .collect(),
        envelope_high: null
            .counts
            .iter()
            .map(|reps| {
                if hi > n {
                    T::infinity()
                } else {
                    per_pair * T::of_usize(reps[hi - 1] as usize)
                }
            })
            .collect(),
        reject,
    })
}

/// Monte Carlo CSR test with Ripley's K inside `ball`, on `local` as given.
/// The RK radius walk passes the ball's center along with the points inside.
/// Fewer than two points never reject.
pub fn mc_srt_ripley<T: Scalar>(
    local: &PointSet<T>,
    ball: &CoveringBall<T>,
    cfg: &SrtConfig,
) -> Result<bool> {
    Ok(ripley_envelope_test(local, ball, cfg)?.reject)
}
