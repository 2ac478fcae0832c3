//! Method defaults: significance schedules and the KS density grid.

use std::fmt;
use std::str::FromStr;

use ccd_core::{Method, SrtConfig};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

/// UN significance level per dimension, from the simulation study.
const UN_SCHEDULE: [(usize, f64); 5] = [(2, 0.15), (3, 0.10), (5, 0.05), (10, 0.01), (20, 0.001)];

/// Significance level used on real data files.
pub const REAL_DATA_ALPHA: f64 = 0.01;

/// Default significance level for `method` in dimension `d`.
///
/// UN uses the nearest tabulated dimension (the smaller one on ties). RK
/// uses 1% below ten dimensions and 0.1% from ten on. KS has no test; the
/// UN value is returned so that reports always carry a number.
pub fn scheduled_alpha(method: Method, d: usize) -> f64 {
    match method {
        Method::Rk => {
            if d < 10 {
                0.01
            } else {
                0.001
            }
        }
        Method::Un | Method::Ks => {
            let mut best = UN_SCHEDULE[0];
            for &(dim, alpha) in &UN_SCHEDULE[1..] {
                if dim.abs_diff(d) < best.0.abs_diff(d) {
                    best = (dim, alpha);
                }
            }
            best.1
        }
    }
}

/// Either a fixed level or the per-dimension schedule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AlphaSetting {
    Fixed(f64),
    Schedule,
}

impl AlphaSetting {
    pub fn resolve(self, method: Method, d: usize) -> f64 {
        match self {
            AlphaSetting::Fixed(a) => a,
            AlphaSetting::Schedule => scheduled_alpha(method, d),
        }
    }
}

impl FromStr for AlphaSetting {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        if s.eq_ignore_ascii_case("schedule") || s.eq_ignore_ascii_case("paper") {
            return Ok(AlphaSetting::Schedule);
        }
        let a: f64 = s.parse().map_err(|_| {
            CliError::Config(format!("alpha must be a number or `schedule`, got {s:?}"))
        })?;
        if !(a > 0.0 && a < 1.0) {
            return Err(CliError::Config(format!(
                "alpha must lie in (0, 1), got {a}"
            )));
        }
        Ok(AlphaSetting::Fixed(a))
    }
}

impl fmt::Display for AlphaSetting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlphaSetting::Fixed(a) => write!(f, "{a}"),
            AlphaSetting::Schedule => f.write_str("schedule"),
        }
    }
}

impl Serialize for AlphaSetting {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            AlphaSetting::Fixed(a) => s.serialize_f64(*a),
            AlphaSetting::Schedule => s.serialize_str("schedule"),
        }
    }
}

impl<'de> Deserialize<'de> for AlphaSetting {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Text(String),
        }
        let parsed = match Raw::deserialize(d)? {
            Raw::Num(a) => AlphaSetting::from_str(&a.to_string()),
            Raw::Text(t) => AlphaSetting::from_str(&t),
        };
        parsed.map_err(serde::de::Error::custom)
    }
}

/// Monte Carlo settings for a method in dimension `d`: the resolved level
/// and `max(999, ceil(2/alpha))` replicates unless overridden.
pub fn srt_config(
    alpha: AlphaSetting,
    method: Method,
    d: usize,
    replicates: Option<usize>,
    descending: bool,
    seed: u64,
) -> CliResult<SrtConfig> {
    let a = alpha.resolve(method, d);
    let n = replicates
        .unwrap_or_else(|| SrtConfig::DEFAULT_REPLICATES.max(SrtConfig::min_replicates(a)));
    Ok(SrtConfig::new(a, n, descending, seed)?)
}

/// Default grid of `delta^(1/d)` values for KS: 48 points log-spaced over
/// `[0.05, 20]`.
pub fn default_delta_roots() -> Vec<f64> {
    let (lo, hi, count) = (0.05f64, 20.0f64, 48);
    let step = (hi / lo).ln() / (count - 1) as f64;
    (0..count).map(|i| lo * (step * i as f64).exp()).collect()
}

/// `delta` from its `d`-th root.
pub fn delta_from_root(root: f64, d: usize) -> CliResult<f64> {
    if !(root > 0.0 && root.is_finite()) {
        return Err(CliError::Config(format!(
            "delta root must be finite and positive, got {root}"
        )));
    }
    let delta = root.powi(d as i32);
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(CliError::Config(format!(
            "delta root {root} overflows or underflows in {d} dimensions"
        )));
    }
    Ok(delta)
}

/// Seed for replicate `index` of a run seeded with `seed` (SplitMix64).
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
