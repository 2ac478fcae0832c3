use crate::error::{CcdError, Result};
use crate::geometry::{CoveringBall, DistanceMatrix, PointSet};
use crate::scalar::Scalar;

use super::null::{nnd_null, NullKey};
use super::{holm_step_down, lower_tail_p, SrtConfig, SrtOutcome};

/// Mean and median nearest-neighbor distance of `local`.
///
/// For an even number of points the lower median is returned.
pub fn nnd_statistics<T: Scalar>(local: &PointSet<T>) -> Result<(T, T)> {
    let m = local.len();
    if m < 2 {
        return Err(CcdError::InsufficientPoints { needed: 2, got: m });
    }
    let mut nnd = vec![T::infinity(); m];
    for i in 0..m {
        for j in (i + 1)..m {
            let dist = local.distance(i, j);
            if dist < nnd[i] {
                nnd[i] = dist;
            }
            if dist < nnd[j] {
                nnd[j] = dist;
            }
        }
    }
    Ok(summarize(&mut nnd))
}

fn summarize<T: Scalar>(nnd: &mut [T]) -> (T, T) {
    let m = nnd.len();
    let mean = nnd.iter().copied().sum::<T>() / T::of_usize(m);
    let (_, median, _) = nnd.select_nth_unstable_by((m - 1) / 2, |a, b| a.partial_cmp(b).unwrap());
    (mean, *median)
}

/// Lower-tailed Monte Carlo test of CSR inside `ball` using the mean and
/// median NND, Holm-corrected at `cfg.alpha`.
///
/// `local` holds the points inside the ball with the ball's center removed.
/// With fewer than two points the outcome is a vacuous non-rejection.
pub fn mc_srt_nnd<T: Scalar>(
    local: &PointSet<T>,
    ball: &CoveringBall<T>,
    cfg: &SrtConfig,
) -> Result<SrtOutcome<T>> {
    cfg.validate()?;
    if local.len() < 2 {
        return Ok(SrtOutcome::vacuous());
    }
    let (mean, median) = nnd_statistics(local)?;
    Ok(nnd_decision(
        local.len(),
        local.dim(),
        mean,
        median,
        ball.radius,
        cfg,
    ))
}

pub(crate) fn nnd_decision<T: Scalar>(
    m: usize,
    dim: usize,
    mean: T,
    median: T,
    radius: T,
    cfg: &SrtConfig,
) -> SrtOutcome<T> {
    if radius <= T::zero() {
        // every point coincides with the center: nothing to compare against
        return SrtOutcome {
            mean_nnd: mean,
            median_nnd: median,
            p_mean: 1.0,
            p_median: 1.0,
            reject: false,
            vacuous: false,
        };
    }
    let null = nnd_null(NullKey {
        points: m,
        dim,
        replicates: cfg.num_replicates,
        seed: cfg.rng_seed,
    });
    let r = radius.as_f64();
    let p_mean = lower_tail_p(&null.means, mean.as_f64() / r);
    let p_median = lower_tail_p(&null.medians, median.as_f64() / r);
    let reject = holm_step_down(&[p_mean, p_median], cfg.alpha).contains(&true);
    SrtOutcome {
        mean_nnd: mean,
        median_nnd: median,
        p_mean,
        p_median,
        reject,
        vacuous: false,
    }
}

/// Nearest-neighbor bookkeeping for a growing or shrinking subset of the
/// points behind a distance matrix.
pub(crate) struct NndTracker<'a, T> {
    dm: &'a DistanceMatrix<T>,
    members: Vec<usize>,
    nn_dist: Vec<T>,
    nn_idx: Vec<usize>,
    scratch: Vec<T>,
}

impl<'a, T: Scalar> NndTracker<'a, T> {
    pub(crate) fn new(dm: &'a DistanceMatrix<T>) -> Self {
        Self {
            dm,
            members: Vec::new(),
            nn_dist: Vec::new(),
            nn_idx: Vec::new(),
            scratch: Vec::new(),
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.members.len()
    }

    pub(crate) fn insert(&mut self, p: usize) {
        let row = self.dm.row(p);
        let mut best = T::infinity();
        let mut best_idx = usize::MAX;
        for (slot, &q) in self.members.iter().enumerate() {
            let dist = row[q];
            if dist < best {
                best = dist;
                best_idx = q;
            }
            if dist < self.nn_dist[slot] {
                self.nn_dist[slot] = dist;
                self.nn_idx[slot] = p;
            }
        }
        self.members.push(p);
        self.nn_dist.push(best);
        self.nn_idx.push(best_idx);
    }

    pub(crate) fn remove(&mut self, p: usize) {
        let Some(slot) = self.members.iter().position(|&q| q == p) else {
            return;
        };
        self.members.swap_remove(slot);
        self.nn_dist.swap_remove(slot);
        self.nn_idx.swap_remove(slot);
        for s in 0..self.members.len() {
            if self.nn_idx[s] != p {
                continue;
            }
            let q = self.members[s];
            let row = self.dm.row(q);
            let mut best = T::infinity();
            let mut best_idx = usize::MAX;
            for &o in &self.members {
                if o != q && row[o] < best {
                    best = row[o];
                    best_idx = o;
                }
            }
            self.nn_dist[s] = best;
            self.nn_idx[s] = best_idx;
        }
    }

    /// `(mean, lower median)` of the current NNDs; needs two members.
    pub(crate) fn summary(&mut self) -> (T, T) {
        self.scratch.clear();
        self.scratch.extend_from_slice(&self.nn_dist);
        summarize(&mut self.scratch)
    }
}
