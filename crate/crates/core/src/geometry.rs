//! Point sets, distance matrices and covering balls.

use serde::{Deserialize, Serialize};

use crate::error::{CcdError, Result};
use crate::scalar::Scalar;

/// `n` points in `R^d`, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet<T> {
    coords: Vec<T>,
    n: usize,
    d: usize,
}

impl<T: Scalar> PointSet<T> {
    /// Builds a point set from a flat row-major buffer.
    pub fn new(coords: Vec<T>, d: usize) -> Result<Self> {
        if d == 0 {
            return Err(CcdError::Input("dimension must be at least 1".into()));
        }
        if coords.is_empty() {
            return Err(CcdError::Input("point set is empty".into()));
        }
        if !coords.len().is_multiple_of(d) {
            return Err(CcdError::Input(format!(
                "{} coordinates do not split into rows of {d}",
                coords.len()
            )));
        }
        if let Some(pos) = coords.iter().position(|c| !c.is_finite()) {
            return Err(CcdError::Input(format!(
                "non-finite coordinate in point {} (dimension {})",
                pos / d,
                pos % d
            )));
        }
        let n = coords.len() / d;
        Ok(Self { coords, n, d })
    }

    pub fn from_rows<R: AsRef<[T]>>(rows: &[R]) -> Result<Self> {
        let d = rows.first().map(|r| r.as_ref().len()).unwrap_or(0);
        let mut coords = Vec::with_capacity(rows.len() * d);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != d {
                return Err(CcdError::Input(format!(
                    "row {i} has {} coordinates, expected {d}",
                    row.len()
                )));
            }
            coords.extend_from_slice(row);
        }
        Self::new(coords, d)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn point(&self, i: usize) -> &[T] {
        &self.coords[i * self.d..(i + 1) * self.d]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[T]> + '_ {
        self.coords.chunks_exact(self.d)
    }

    pub fn as_flat(&self) -> &[T] {
        &self.coords
    }

    pub fn distance(&self, i: usize, j: usize) -> T {
        euclidean(self.point(i), self.point(j))
    }

    /// Copies the listed points, in order, into a new set.
    pub fn subset(&self, indices: &[usize]) -> Result<Self> {
        let mut coords = Vec::with_capacity(indices.len() * self.d);
        for &i in indices {
            if i >= self.n {
                return Err(CcdError::Input(format!(
                    "point index {i} out of range (n = {})",
                    self.n
                )));
            }
            coords.extend_from_slice(self.point(i));
        }
        Self::new(coords, self.d)
    }

    /// Applies `f` to every point, producing a set of the same dimension.
    pub fn map_points<F>(&self, mut f: F) -> Result<Self>
    where
        F: FnMut(&[T]) -> Vec<T>,
    {
        let rows: Vec<Vec<T>> = self.rows().map(&mut f).collect();
        Self::from_rows(&rows)
    }
}

pub(crate) fn euclidean<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| {
            let diff = x - y;
            diff * diff
        })
        .sum::<T>()
        .sqrt()
}

/// Dissimilarity used to fill a [`DistanceMatrix`]. Only Euclidean distance
/// is implemented.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    #[default]
    Euclidean,
}

/// Dense symmetric `n x n` distance matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix<T> {
    n: usize,
    entries: Vec<T>,
    metric: Metric,
}

impl<T: Scalar> DistanceMatrix<T> {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn metric(&self) -> Metric {
        self.metric
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }
}

/// Materializes all pairwise Euclidean distances.
pub fn pairwise_distances<T: Scalar>(ps: &PointSet<T>) -> DistanceMatrix<T> {
    let n = ps.len();
    let mut entries = vec![T::zero(); n * n];
    for i in 0..n {
        for j in (i + 1)..n {
            let dist = ps.distance(i, j);
            entries[i * n + j] = dist;
            entries[j * n + i] = dist;
        }
    }
    DistanceMatrix {
        n,
        entries,
        metric: Metric::Euclidean,
    }
}

/// Closed ball `B(x_center, radius)` around one of the data points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoveringBall<T> {
    pub center: usize,
    pub radius: T,
}

impl<T: Scalar> CoveringBall<T> {
    pub fn new(center: usize, radius: T) -> Result<Self> {
        if !(radius >= T::zero()) || !radius.is_finite() {
            return Err(CcdError::Input(format!(
                "ball radius must be finite and >= 0, got {radius}"
            )));
        }
        Ok(Self { center, radius })
    }

    /// Closed-ball membership: points on the boundary are covered.
    #[inline]
    pub fn covers(&self, dm: &DistanceMatrix<T>, point: usize) -> bool {
        dm.get(self.center, point) <= self.radius
    }
}
