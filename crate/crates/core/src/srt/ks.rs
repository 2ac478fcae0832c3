use crate::error::{CcdError, Result};
use crate::geometry::{pairwise_distances, CoveringBall, DistanceMatrix, PointSet};
use crate::scalar::Scalar;

/// KS-type statistic `T(r) = #{points within r of the center} - delta r^d`
/// evaluated at `r = 0` and at every distinct distance from the center.
#[derive(Debug, Clone, PartialEq)]
pub struct KsStatistic<T> {
    pub center: usize,
    pub radius_candidates: Vec<T>,
    pub t_values: Vec<T>,
    pub delta: T,
}

impl<T: Scalar> KsStatistic<T> {
    /// Candidate with the largest statistic; the smaller radius wins ties.
    pub fn argmax(&self) -> T {
        let mut best = 0;
        for (i, &t) in self.t_values.iter().enumerate() {
            if t > self.t_values[best] {
                best = i;
            }
        }
        self.radius_candidates[best]
    }
}

pub fn ks_statistic<T: Scalar>(
    center: usize,
    dm: &DistanceMatrix<T>,
    dim: usize,
    delta: T,
) -> Result<KsStatistic<T>> {
    if !(delta > T::zero()) || !delta.is_finite() {
        return Err(CcdError::Config(format!(
            "delta must be finite and positive, got {delta}"
        )));
    }
    if center >= dm.len() {
        return Err(CcdError::Input(format!(
            "center {center} out of range (n = {})",
            dm.len()
        )));
    }
    let mut dists: Vec<T> = dm
        .row(center)
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != center)
        .map(|(_, &d)| d)
        .collect();
    dists.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());

    let d = dim as i32;
    let mut radius_candidates = vec![T::zero()];
    let mut t_values = vec![T::zero()];
    let mut i = 0;
    while i < dists.len() {
        let r = dists[i];
        let mut j = i;
        while j < dists.len() && dists[j] == r {
            j += 1;
        }
        let t = T::of_usize(j) - delta * r.powi(d);
        if r == T::zero() {
            t_values[0] = t;
        } else {
            radius_candidates.push(r);
            t_values.push(t);
        }
        i = j;
    }
    Ok(KsStatistic {
        center,
        radius_candidates,
        t_values,
        delta,
    })
}

/// Radius maximizing the KS-type statistic around `center`.
pub fn radius_ks<T: Scalar>(center: usize, ps: &PointSet<T>, delta: T) -> Result<CoveringBall<T>> {
    let dm = pairwise_distances(ps);
    let stat = ks_statistic(center, &dm, ps.dim(), delta)?;
    CoveringBall::new(center, stat.argmax())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn hand_evaluated_statistic() {
        let ps = PointSet::new(vec![0.0, 1.0, 2.0, 3.0], 1).unwrap();
        let dm = pairwise_distances(&ps);
        let stat = ks_statistic(0, &dm, 1, 0.5).unwrap();
        assert_eq!(stat.radius_candidates, vec![0.0, 1.0, 2.0, 3.0]);
        assert_eq!(stat.t_values, vec![0.0, 0.5, 1.0, 1.5]);
        assert_eq!(radius_ks(0, &ps, 0.5).unwrap().radius, 3.0);
    }

    #[test]
    fn large_delta_gives_empty_ball() {
        let ps = PointSet::new(vec![0.0, 1.0, 2.0, 3.0], 1).unwrap();
        assert_eq!(radius_ks(0, &ps, 2.0).unwrap().radius, 0.0);
    }

    #[test]
    fn ties_prefer_smaller_radius() {
        // T(1) = 1 - 1 = 0 ties with T(0) = 0
        let ps = PointSet::new(vec![0.0, 1.0], 1).unwrap();
        assert_eq!(radius_ks(0, &ps, 1.0).unwrap().radius, 0.0);
    }

    #[test]
    fn invalid_delta() {
        let ps = PointSet::new(vec![0.0, 1.0], 1).unwrap();
        assert!(radius_ks(0, &ps, 0.0).is_err());
        assert!(radius_ks(0, &ps, -1.0).is_err());
    }

    #[test]
    fn argmax_matches_exhaustive_evaluation() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let rows: Vec<[f64; 3]> = (0..50)
            .map(|_| [rng.random(), rng.random(), rng.random()])
            .collect();
        let ps = PointSet::from_rows(&rows).unwrap();
        let delta = 40.0;
        for center in [0, 17, 49] {
            let mut best_r = 0.0;
            let mut best_t = 0.0;
            let mut radii: Vec<f64> = (0..50)
                .filter(|&j| j != center)
                .map(|j| ps.distance(center, j))
                .collect();
            radii.sort_by(f64::total_cmp);
            for &r in &radii {
                let count = (0..50)
                    .filter(|&j| j != center && ps.distance(center, j) <= r)
                    .count();
                let t = count as f64 - delta * r.powi(3);
                if t > best_t {
                    best_t = t;
                    best_r = r;
                }
            }
            assert_eq!(radius_ks(center, &ps, delta).unwrap().radius, best_r);
        }
    }
}
