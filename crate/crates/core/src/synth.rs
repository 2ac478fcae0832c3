//! Synthetic benchmark data: uniform-ball and Gaussian clusters around fixed
//! centers, optionally mixed with uniform background noise.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{CcdError, Result};
use crate::geometry::PointSet;
use crate::sampling::{mix_seed, stream_rng, uniform_in_ball};

const CLUSTER_SALT: u64 = 0x636c_7573_7465_7273;
const NOISE_SALT: u64 = 0x6e6f_6973_655f_7074;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// Points uniform in a ball of radius `R ~ U[0.8, 1.2]` per cluster.
    Uniform,
    /// `N(mu, s^2 Delta I)` with `Delta ~ U[0.8, 1.2]` per cluster and
    /// `s = gaussian_scale`.
    Gaussian,
}

/// Which fixed set of cluster centers to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CenterLayout {
    /// `(3,..)`, `(6,3,..)`, `(6,6,3,..)`, `(3,5.5,3,..)`, `(8.5,3,..)`;
    /// the first `k` are used.
    #[default]
    Standard,
    /// `(3,..)`, `(9,3,..)`, `(3,9,3,..)`, for the noise experiments.
    NoiseStudy,
}

impl CenterLayout {
    /// Gaussian standard-deviation multiplier used when a spec leaves it
    /// unset. These reproduce the silhouette levels published for each
    /// benchmark: about 0.5 per coordinate for the standard centers, and
    /// covariance `Delta I` exactly for the noise experiments.
    pub fn default_gaussian_scale(self) -> f64 {
        match self {
            CenterLayout::Standard => 0.5,
            CenterLayout::NoiseStudy => 1.0,
        }
    }
}

fn default_layout() -> CenterLayout {
    CenterLayout::Standard
}

/// One simulated dataset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimSpec {
    pub d: usize,
    /// Number of regular (cluster) points; noise comes on top.
    pub n: usize,
    pub k: usize,
    pub family: Family,
    /// Noise points as a fraction of `n`, in `[0, 1]`.
    #[serde(default)]
    pub noise_level: f64,
    #[serde(default = "default_layout")]
    pub layout: CenterLayout,
    /// Standard-deviation multiplier for Gaussian clusters; the layout's
    /// default when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gaussian_scale: Option<f64>,
    #[serde(default)]
    pub rng_seed: u64,
}

impl SimSpec {
    pub fn new(family: Family, d: usize, n: usize, k: usize, rng_seed: u64) -> Self {
        Self {
            d,
            n,
            k,
            family,
            noise_level: 0.0,
            layout: CenterLayout::Standard,
            gaussian_scale: None,
            rng_seed,
        }
    }

    pub fn with_gaussian_scale(mut self, scale: f64) -> Self {
        self.gaussian_scale = Some(scale);
        self
    }

    pub fn effective_gaussian_scale(&self) -> f64 {
        self.gaussian_scale
            .unwrap_or_else(|| self.layout.default_gaussian_scale())
    }

    pub fn with_noise(mut self, level: f64) -> Self {
        self.noise_level = level;
        self
    }

    pub fn with_layout(mut self, layout: CenterLayout) -> Self {
        self.layout = layout;
        self
    }

    pub fn validate(&self) -> Result<()> {
        centers(self.d, self.k, self.layout)?;
        if self.n < self.k {
            return Err(CcdError::Config(format!(
                "{} points cannot fill {} clusters",
                self.n, self.k
            )));
        }
        let scale = self.effective_gaussian_scale();
        if !(scale.is_finite() && scale > 0.0) {
            return Err(CcdError::Config(format!(
                "gaussian_scale must be positive, got {scale}"
            )));
        }
        check_level(self.noise_level)
    }

    /// Cluster sizes: `n / k` each, the remainder going to the first clusters.
    pub fn cluster_sizes(&self) -> Vec<usize> {
        let base = self.n / self.k;
        let extra = self.n % self.k;
        (0..self.k).map(|c| base + usize::from(c < extra)).collect()
    }

    /// Generates the dataset: clusters of the configured family, then noise.
    pub fn generate(&self) -> Result<LabeledDataset<f64>> {
        let regular = match self.family {
            Family::Uniform => gen_uniform_clusters(self)?,
            Family::Gaussian => gen_gaussian_clusters(self)?,
        };
        add_noise(&regular, self.noise_level, self.rng_seed)
    }
}

fn check_level(level: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&level) {
        return Err(CcdError::Config(format!(
            "noise level must lie in [0, 1], got {level}"
        )));
    }
    Ok(())
}

/// Points with ground-truth labels. Noise points carry label `k_true`.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledDataset<T> {
    pub points: PointSet<T>,
    pub labels: Vec<usize>,
    /// Number of real clusters (the noise class is not counted).
    pub k_true: usize,
    /// The first `n_regular` points are cluster points, the rest noise.
    pub n_regular: usize,
}

impl<T> LabeledDataset<T> {
    pub fn n_noise(&self) -> usize {
        self.labels.len() - self.n_regular
    }
}

/// Cluster centers in `R^d`.
pub fn centers(d: usize, k: usize, layout: CenterLayout) -> Result<Vec<Vec<f64>>> {
    if d < 2 {
        return Err(CcdError::Config(format!(
            "simulated data needs d >= 2, got {d}"
        )));
    }
    let base = vec![3.0; d];
    let with = |coords: &[(usize, f64)]| {
        let mut c = base.clone();
        for &(i, v) in coords {
            c[i] = v;
        }
        c
    };
    match layout {
        CenterLayout::Standard => {
            if ![2, 3, 5].contains(&k) {
                return Err(CcdError::Config(format!("k must be 2, 3 or 5, got {k}")));
            }
            let all = [
                with(&[]),
                with(&[(0, 6.0)]),
                with(&[(0, 6.0), (1, 6.0)]),
                with(&[(1, 5.5)]),
                with(&[(0, 8.5)]),
            ];
            Ok(all[..k].to_vec())
        }
        CenterLayout::NoiseStudy => {
            if k != 3 {
                return Err(CcdError::Config(format!(
                    "the noise-study layout has 3 clusters, got k = {k}"
                )));
            }
            Ok(vec![with(&[]), with(&[(0, 9.0)]), with(&[(1, 9.0)])])
        }
    }
}

fn cluster_rng(spec: &SimSpec, cluster: usize) -> ChaCha8Rng {
    stream_rng(mix_seed(spec.rng_seed, CLUSTER_SALT), cluster as u64)
}

fn generate_clusters<F>(spec: &SimSpec, mut draw: F) -> Result<LabeledDataset<f64>>
where
    F: FnMut(&mut ChaCha8Rng, &[f64], f64, &mut [f64]),
{
    spec.validate()?;
    let centers = centers(spec.d, spec.k, spec.layout)?;
    let mut coords = Vec::with_capacity(spec.n * spec.d);
    let mut labels = Vec::with_capacity(spec.n);
    let mut point = vec![0.0; spec.d];
    for (c, size) in spec.cluster_sizes().into_iter().enumerate() {
        let mut rng = cluster_rng(spec, c);
        let scale = rng.random_range(0.8..=1.2);
        for _ in 0..size {
            draw(&mut rng, &centers[c], scale, &mut point);
            coords.extend_from_slice(&point);
            labels.push(c);
        }
    }
    Ok(LabeledDataset {
        points: PointSet::new(coords, spec.d)?,
        labels,
        k_true: spec.k,
        n_regular: spec.n,
    })
}

/// Clusters uniform in balls of radius `R ~ U[0.8, 1.2]` (one `R` per
/// cluster).
pub fn gen_uniform_clusters(spec: &SimSpec) -> Result<LabeledDataset<f64>> {
    generate_clusters(spec, |rng, center, radius, out| {
        uniform_in_ball(rng, radius, out);
        for (x, m) in out.iter_mut().zip(center) {
            *x += m;
        }
    })
}

/// Clusters drawn from `N(mu, s^2 Delta I)`, `Delta ~ U[0.8, 1.2]` per
/// cluster, `s = spec.gaussian_scale`.
pub fn gen_gaussian_clusters(spec: &SimSpec) -> Result<LabeledDataset<f64>> {
    let s = spec.effective_gaussian_scale();
    generate_clusters(spec, |rng, center, variance, out| {
        let normal = Normal::new(0.0, s * variance.sqrt()).expect("positive variance");
        for (x, m) in out.iter_mut().zip(center) {
            *x = m + normal.sample(rng);
        }
    })
}

/// Appends `round(level * n_regular)` points uniform over the bounding box of
/// the regular points, labeled `k_true`.
pub fn add_noise(
    ds: &LabeledDataset<f64>,
    level: f64,
    rng_seed: u64,
) -> Result<LabeledDataset<f64>> {
    check_level(level)?;
    let regular = ds.points.subset(&(0..ds.n_regular).collect::<Vec<_>>())?;
    let count = (level * ds.n_regular as f64).round() as usize;
    if count == 0 {
        return Ok(ds.clone());
    }
    let d = regular.dim();
    let mut lo = vec![f64::INFINITY; d];
    let mut hi = vec![f64::NEG_INFINITY; d];
    for row in regular.rows() {
        for j in 0..d {
            lo[j] = lo[j].min(row[j]);
            hi[j] = hi[j].max(row[j]);
        }
    }
    let mut rng = stream_rng(mix_seed(rng_seed, NOISE_SALT), 0);
    let mut coords = regular.as_flat().to_vec();
    for _ in 0..count {
        for j in 0..d {
            coords.push(if hi[j] > lo[j] {
                rng.random_range(lo[j]..=hi[j])
            } else {
                lo[j]
            });
        }
    }
    let mut labels = ds.labels[..ds.n_regular].to_vec();
    labels.extend(std::iter::repeat_n(ds.k_true, count));
    Ok(LabeledDataset {
        points: PointSet::new(coords, d)?,
        labels,
        k_true: ds.k_true,
        n_regular: ds.n_regular,
    })
}
