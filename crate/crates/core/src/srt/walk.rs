//! Candidate-radius walks for the Monte Carlo tests.

use std::ops::Range;

use crate::error::{CcdError, Result};
use crate::geometry::{pairwise_distances, CoveringBall, DistanceMatrix, PointSet};
use crate::scalar::Scalar;

use super::ks::ks_statistic;
use super::nnd::{nnd_decision, NndTracker};
use super::ripley::{grid_counts, ripley_decision};
use super::SrtConfig;

/// Points inside the current candidate ball (center excluded) and the test
/// run on them. `len` counts those points only.
trait LocalTest<T> {
    fn insert(&mut self, p: usize);
    fn remove(&mut self, p: usize);
    fn len(&self) -> usize;
    fn rejects(&mut self, radius: T, cfg: &SrtConfig) -> bool;
}

struct NndTest<'a, T> {
    tracker: NndTracker<'a, T>,
    dim: usize,
}

impl<T: Scalar> LocalTest<T> for NndTest<'_, T> {
    fn insert(&mut self, p: usize) {
        self.tracker.insert(p);
    }

    fn remove(&mut self, p: usize) {
        self.tracker.remove(p);
    }

    fn len(&self) -> usize {
        self.tracker.len()
    }

    fn rejects(&mut self, radius: T, cfg: &SrtConfig) -> bool {
        let (mean, median) = self.tracker.summary();
        nnd_decision(self.tracker.len(), self.dim, mean, median, radius, cfg).reject
    }
}

/// Unlike the NND test, the center takes part in the pattern: the K envelope
/// is computed for `members + 1` points, the center among them.
struct RipleyTest<'a, T> {
    dm: &'a DistanceMatrix<T>,
    center: usize,
    members: Vec<usize>,
    dim: usize,
}

impl<T: Scalar> LocalTest<T> for RipleyTest<'_, T> {
    fn insert(&mut self, p: usize) {
        self.members.push(p);
    }

    fn remove(&mut self, p: usize) {
        if let Some(pos) = self.members.iter().position(|&q| q == p) {
            self.members.swap_remove(pos);
        }
    }

    fn len(&self) -> usize {
        self.members.len()
    }

    fn rejects(&mut self, radius: T, cfg: &SrtConfig) -> bool {
        if radius <= T::zero() {
            return false;
        }
        let members = &self.members;
        let dm = self.dm;
        let pairs = members
            .iter()
            .enumerate()
            .flat_map(|(a, &i)| members[a + 1..].iter().map(move |&j| dm.get(i, j)));
        let c = self.center;
        let counts = grid_counts(
            radius,
            pairs.chain(members.iter().map(move |&j| dm.get(c, j))),
        );
        ripley_decision(members.len() + 1, self.dim, &counts, cfg)
    }
}

/// Per-center radius searches over a shared distance matrix.
#[derive(Debug, Clone, Copy)]
pub struct RadiusSearch<'a, T> {
    dm: &'a DistanceMatrix<T>,
    dim: usize,
}

impl<'a, T: Scalar> RadiusSearch<'a, T> {
    pub fn new(dm: &'a DistanceMatrix<T>, dim: usize) -> Self {
        Self { dm, dim }
    }

    /// Other points sorted by distance from `center`, grouped by equal
    /// distance. Each group is one candidate radius.
    fn candidates(&self, center: usize) -> (Vec<usize>, Vec<(T, Range<usize>)>) {
        let row = self.dm.row(center);
        let mut order: Vec<usize> = (0..self.dm.len()).filter(|&j| j != center).collect();
        order.sort_by(|&a, &b| row[a].partial_cmp(&row[b]).unwrap().then(a.cmp(&b)));
        let mut groups = Vec::new();
        let mut start = 0;
        while start < order.len() {
            let r = row[order[start]];
            let mut end = start + 1;
            while end < order.len() && row[order[end]] == r {
                end += 1;
            }
            groups.push((r, start..end));
            start = end;
        }
        (order, groups)
    }

    fn check(&self, center: usize, cfg: &SrtConfig) -> Result<()> {
        cfg.validate()?;
        if self.dm.len() < 2 {
            return Err(CcdError::InsufficientPoints {
                needed: 2,
                got: self.dm.len(),
            });
        }
        if center >= self.dm.len() {
            return Err(CcdError::Input(format!(
                "center {center} out of range (n = {})",
                self.dm.len()
            )));
        }
        Ok(())
    }

    fn walk<S: LocalTest<T>>(&self, center: usize, cfg: &SrtConfig, mut test: S) -> T {
        let (order, groups) = self.candidates(center);
        if cfg.descending {
            for &p in &order {
                test.insert(p);
            }
            for (r, range) in groups.iter().rev() {
                if test.len() < 2 || !test.rejects(*r, cfg) {
                    return *r;
                }
                for &p in &order[range.clone()] {
                    test.remove(p);
                }
            }
            T::zero()
        } else {
            let mut previous = T::zero();
            for (r, range) in &groups {
                for &p in &order[range.clone()] {
                    test.insert(p);
                }
                if test.len() >= 2 && test.rejects(*r, cfg) {
                    return previous;
                }
                previous = *r;
            }
            previous
        }
    }

    /// Radius from the NND test walk.
    pub fn un(&self, center: usize, cfg: &SrtConfig) -> Result<CoveringBall<T>> {
        self.check(center, cfg)?;
        let test = NndTest {
            tracker: NndTracker::new(self.dm),
            dim: self.dim,
        };
        CoveringBall::new(center, self.walk(center, cfg, test))
    }

    /// Radius from the Ripley's K test walk.
    pub fn rk(&self, center: usize, cfg: &SrtConfig) -> Result<CoveringBall<T>> {
        self.check(center, cfg)?;
        let test = RipleyTest {
            dm: self.dm,
            center,
            members: Vec::new(),
            dim: self.dim,
        };
        CoveringBall::new(center, self.walk(center, cfg, test))
    }

    pub fn ks(&self, center: usize, delta: T) -> Result<CoveringBall<T>> {
        let stat = ks_statistic(center, self.dm, self.dim, delta)?;
        CoveringBall::new(center, stat.argmax())
    }
}

/// Covering ball of `center` from the Monte Carlo NND test walk.
///
/// Ascending: the radius just below the first candidate whose interior is
/// rejected (0 if the very first one is), or the largest candidate.
/// Descending: the largest candidate that is not rejected.
pub fn radius_un<T: Scalar>(
    center: usize,
    ps: &PointSet<T>,
    cfg: &SrtConfig,
) -> Result<CoveringBall<T>> {
    let dm = pairwise_distances(ps);
    RadiusSearch::new(&dm, ps.dim()).un(center, cfg)
}

/// Same walk as [`radius_un`] with the Ripley's K envelope test.
pub fn radius_rk<T: Scalar>(
    center: usize,
    ps: &PointSet<T>,
    cfg: &SrtConfig,
) -> Result<CoveringBall<T>> {
    let dm = pairwise_distances(ps);
    RadiusSearch::new(&dm, ps.dim()).rk(center, cfg)
}
