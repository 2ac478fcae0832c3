//! Radius determination for covering balls.
//!
//! Two Monte Carlo spatial randomness tests (nearest-neighbor distances and
//! Ripley's K) decide how far a ball may grow before the points inside stop
//! looking like complete spatial randomness; the KS-type statistic is the
//! parametric alternative.
//!
//! Both Monte Carlo tests simulate uniform points in a `d`-ball. Their test
//! statistics scale linearly (NND) or not at all (pair counts at a grid that
//! is a fixed fraction of the radius) with the ball radius, so the null
//! distributions only depend on the point count `m`, the dimension `d`, the
//! replicate count and the seed. They are simulated once in the unit ball
//! and cached for the lifetime of the process; see [`null`].

mod ks;
pub(crate) mod nnd;
pub mod null;
mod ripley;
mod walk;

use serde::{Deserialize, Serialize};

use crate::error::{CcdError, Result};

pub use ks::{ks_statistic, radius_ks, KsStatistic};
pub use nnd::{mc_srt_nnd, nnd_statistics};
pub use ripley::{
    mc_srt_ripley, ripley_envelope_test, ripley_k_hat, unit_ball_volume, RipleyEstimate,
    RIPLEY_GRID_SIZE,
};
pub use walk::{radius_rk, radius_un, RadiusSearch};

/// Settings shared by the Monte Carlo spatial randomness tests.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SrtConfig {
    /// Significance level of the test, in `(0, 1)`.
    pub alpha: f64,
    /// Number of simulated CSR replicates `N`.
    pub num_replicates: usize,
    /// Walk candidate radii largest-first and stop at the first
    /// non-rejection.
    pub descending: bool,
    pub rng_seed: u64,
}

impl SrtConfig {
    pub const DEFAULT_REPLICATES: usize = 999;

    pub fn new(alpha: f64, num_replicates: usize, descending: bool, rng_seed: u64) -> Result<Self> {
        let cfg = Self {
            alpha,
            num_replicates,
            descending,
            rng_seed,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Ascending walk with `max(999, ceil(2/alpha))` replicates.
    pub fn with_alpha(alpha: f64, rng_seed: u64) -> Result<Self> {
        check_alpha(alpha)?;
        let n = Self::DEFAULT_REPLICATES.max(Self::min_replicates(alpha));
        Self::new(alpha, n, false, rng_seed)
    }

    /// Replicate floor `ceil(2/alpha)`: the most extreme empirical p-value,
    /// `1/(N+1)`, then survives the first Holm step at `alpha/2`.
    pub fn min_replicates(alpha: f64) -> usize {
        // The epsilon keeps 2/0.001 from rounding up to 2001.
        (2.0 / alpha - 1e-9).ceil().max(1.0) as usize
    }

    pub fn validate(&self) -> Result<()> {
        check_alpha(self.alpha)?;
        let min = Self::min_replicates(self.alpha);
        if self.num_replicates < min {
            return Err(CcdError::Config(format!(
                "{} Monte Carlo replicates cannot resolve alpha = {} (need at least {min})",
                self.num_replicates, self.alpha
            )));
        }
        Ok(())
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(CcdError::Config(format!(
            "alpha must lie in (0, 1), got {alpha}"
        )));
    }
    Ok(())
}

/// Result of one Monte Carlo NND test.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SrtOutcome<T> {
    pub mean_nnd: T,
    pub median_nnd: T,
    pub p_mean: f64,
    pub p_median: f64,
    pub reject: bool,
    /// Fewer than two points inside the ball: no test was run.
    pub vacuous: bool,
}

impl<T: num_traits::Zero> SrtOutcome<T> {
    pub(crate) fn vacuous() -> Self {
        Self {
            mean_nnd: T::zero(),
            median_nnd: T::zero(),
            p_mean: 1.0,
            p_median: 1.0,
            reject: false,
            vacuous: true,
        }
    }
}

/// Holm's step-down procedure. Returns, for each p-value in input order,
/// whether its hypothesis is rejected at family-wise level `alpha`.
pub fn holm_step_down(p_values: &[f64], alpha: f64) -> Vec<bool> {
    let m = p_values.len();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| p_values[a].total_cmp(&p_values[b]));
    let mut rejected = vec![false; m];
    for (rank, &idx) in order.iter().enumerate() {
        if p_values[idx] <= alpha / (m - rank) as f64 {
            rejected[idx] = true;
        } else {
            break;
        }
    }
    rejected
}

/// Empirical lower-tail p-value `(1 + #{replicates <= observed}) / (N + 1)`
/// against a sorted replicate sample.
pub(crate) fn lower_tail_p(sorted: &[f64], observed: f64) -> f64 {
    let count = sorted.partition_point(|&v| v <= observed);
    (1 + count) as f64 / (sorted.len() + 1) as f64
}
