//! Point assignment by relative dissimilarity and silhouette refinement.

use serde::{Deserialize, Serialize};

use crate::error::{CcdError, Result};
use crate::geometry::{CoveringBall, DistanceMatrix};
use crate::metrics::silhouette_from_distances;
use crate::scalar::Scalar;

use super::{Clustering, Method};

/// Relative dissimilarity `d(point, center) / radius`.
///
/// A zero-radius ball only attracts its own center (`rho = 0`); every other
/// point is infinitely far from it.
pub fn rho<T: Scalar>(point: usize, ball: &CoveringBall<T>, dm: &DistanceMatrix<T>) -> T {
    let dist = dm.get(point, ball.center);
    if ball.radius > T::zero() {
        dist / ball.radius
    } else if point == ball.center || dist == T::zero() {
        T::zero()
    } else {
        T::infinity()
    }
}

/// Labels each point with the index of its argmin-`rho` ball (earlier ball
/// on ties).
pub fn assign_by_rho<T: Scalar>(
    dm: &DistanceMatrix<T>,
    balls: &[CoveringBall<T>],
) -> Result<Vec<usize>> {
    if balls.is_empty() {
        return Err(CcdError::Input(
            "cannot assign points to an empty ball list".into(),
        ));
    }
    if let Some(b) = balls.iter().find(|b| b.center >= dm.len()) {
        return Err(CcdError::Input(format!(
            "ball center {} out of range (n = {})",
            b.center,
            dm.len()
        )));
    }
    Ok((0..dm.len())
        .map(|p| {
            let mut best = 0;
            let mut best_rho = rho(p, &balls[0], dm);
            for (j, ball) in balls.iter().enumerate().skip(1) {
                let r = rho(p, ball, dm);
                if r < best_rho {
                    best = j;
                    best_rho = r;
                }
            }
            best
        })
        .collect())
}

/// A ball offered to the refinement step together with the points it covers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Candidate<T> {
    pub ball: CoveringBall<T>,
    pub covered: Vec<usize>,
}

/// Drops balls that attracted no points and renumbers the rest in ball order.
pub(crate) fn compact_by_ball<T: Scalar>(
    raw: &[usize],
    balls: &[CoveringBall<T>],
) -> (Vec<usize>, Vec<CoveringBall<T>>) {
    let mut remap = vec![usize::MAX; balls.len()];
    for &l in raw {
        remap[l] = 0;
    }
    let mut kept = Vec::new();
    for (j, slot) in remap.iter_mut().enumerate() {
        if *slot == 0 {
            *slot = kept.len();
            kept.push(balls[j]);
        }
    }
    (raw.iter().map(|&l| remap[l]).collect(), kept)
}

/// Keeps the prefix of candidates (largest coverage first) whose
/// re-partition of all points has the highest average silhouette.
///
/// Prefixes of length 2, 3, ... are tried; ties go to the shorter prefix.
/// With a single candidate, or when no prefix yields two non-empty
/// clusters, everything is one cluster with silhouette 0.
pub fn refine_by_silhouette<T: Scalar>(
    dm: &DistanceMatrix<T>,
    candidates: &[Candidate<T>],
    method: Method,
) -> Result<Clustering<T>> {
    if candidates.is_empty() {
        return Err(CcdError::Input("no candidate balls to refine".into()));
    }
    let mut ranked: Vec<&Candidate<T>> = candidates.iter().collect();
    ranked.sort_by_key(|c| std::cmp::Reverse(c.covered.len()));
    let balls: Vec<CoveringBall<T>> = ranked.iter().map(|c| c.ball).collect();

    let mut best: Option<(f64, Vec<usize>, Vec<CoveringBall<T>>)> = None;
    for k in 2..=balls.len() {
        let raw = assign_by_rho(dm, &balls[..k])?;
        let (labels, kept) = compact_by_ball(&raw, &balls[..k]);
        if kept.len() < 2 {
            continue;
        }
        let sil = silhouette_from_distances(dm, &labels)?;
        if best.as_ref().is_none_or(|(s, _, _)| sil > *s) {
            best = Some((sil, labels, kept));
        }
    }
    let (avg_silhouette, labels, kept) = match best {
        Some(b) => b,
        None => (0.0, vec![0; dm.len()], vec![balls[0]]),
    };
    Ok(Clustering {
        k_hat: kept.len(),
        cluster_balls: kept.iter().map(|&b| vec![b]).collect(),
        dominating_balls: kept,
        labels,
        avg_silhouette,
        method,
        flexible: false,
    })
}
