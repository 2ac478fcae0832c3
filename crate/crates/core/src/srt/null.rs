//! Simulated CSR null distributions in the unit `d`-ball.
//!
//! Tables are keyed by `(m, d, N, seed)` and built lazily. Replicate `r` of a
//! table draws from sub-stream `r` of a seed derived from the key, so a table
//! is a pure function of its key and caching it is unobservable.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::sampling::{mix_seed, stream_rng, uniform_in_ball};

use super::ripley::RIPLEY_GRID_SIZE;

const NND_SALT: u64 = 0x4e4e_445f_6e75_6c6c;
const RIPLEY_SALT: u64 = 0x5249_504c_4559_4b5f;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NullKey {
    pub points: usize,
    pub dim: usize,
    pub replicates: usize,
    pub seed: u64,
}

impl NullKey {
    fn base_seed(&self, salt: u64) -> u64 {
        let s = mix_seed(self.seed, salt);
        let s = mix_seed(s, self.points as u64);
        mix_seed(s, self.dim as u64)
    }
}

/// Sorted replicate means and (lower) medians of the NND in the unit ball.
#[derive(Debug, Clone)]
pub struct NndNull {
    pub means: Vec<f64>,
    pub medians: Vec<f64>,
}

/// Per grid point `t_k = k / G`, the sorted replicate counts of ordered
/// pairs within `t_k` in the unit ball.
#[derive(Debug, Clone)]
pub struct RipleyNull {
    pub counts: Vec<Vec<u32>>,
}

fn simulate_points(key: &NullKey, salt: u64, replicate: usize, buf: &mut [f64]) {
    let mut rng = stream_rng(key.base_seed(salt), replicate as u64);
    for p in buf.chunks_exact_mut(key.dim) {
        uniform_in_ball(&mut rng, 1.0, p);
    }
}

fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Mean and lower-median nearest-neighbor distance of a flat point buffer.
pub(crate) fn nnd_summary(buf: &[f64], dim: usize, scratch: &mut Vec<f64>) -> (f64, f64) {
    let m = buf.len() / dim;
    scratch.clear();
    scratch.resize(m, f64::INFINITY);
    for i in 0..m {
        let pi = &buf[i * dim..(i + 1) * dim];
        for j in (i + 1)..m {
            let d2 = squared_distance(pi, &buf[j * dim..(j + 1) * dim]);
            if d2 < scratch[i] {
                scratch[i] = d2;
            }
            if d2 < scratch[j] {
                scratch[j] = d2;
            }
        }
    }
    for v in scratch.iter_mut() {
        *v = v.sqrt();
    }
    let mean = scratch.iter().sum::<f64>() / m as f64;
    let mid = (m - 1) / 2;
    let (_, median, _) = scratch.select_nth_unstable_by(mid, f64::total_cmp);
    (mean, *median)
}

impl NndNull {
    pub fn simulate(key: &NullKey) -> Self {
        let mut buf = vec![0.0; key.points * key.dim];
        let mut scratch = Vec::with_capacity(key.points);
        let mut means = Vec::with_capacity(key.replicates);
        let mut medians = Vec::with_capacity(key.replicates);
        for r in 0..key.replicates {
            simulate_points(key, NND_SALT, r, &mut buf);
            let (mean, median) = nnd_summary(&buf, key.dim, &mut scratch);
            means.push(mean);
            medians.push(median);
        }
        means.sort_by(f64::total_cmp);
        medians.sort_by(f64::total_cmp);
        Self { means, medians }
    }
}

impl RipleyNull {
    pub fn simulate(key: &NullKey) -> Self {
        let g = RIPLEY_GRID_SIZE;
        let thresholds: Vec<f64> = (1..=g).map(|k| k as f64 / g as f64).collect();
        let mut buf = vec![0.0; key.points * key.dim];
        let mut counts: Vec<Vec<u32>> =
            (0..g).map(|_| Vec::with_capacity(key.replicates)).collect();
        let mut hist = vec![0u32; g];
        for r in 0..key.replicates {
            simulate_points(key, RIPLEY_SALT, r, &mut buf);
            hist.iter_mut().for_each(|h| *h = 0);
            let m = key.points;
            for i in 0..m {
                let pi = &buf[i * key.dim..(i + 1) * key.dim];
                for j in (i + 1)..m {
                    let dist = squared_distance(pi, &buf[j * key.dim..(j + 1) * key.dim]).sqrt();
                    let bucket = thresholds.partition_point(|&t| t < dist);
                    if bucket < g {
                        hist[bucket] += 2;
                    }
                }
            }
            let mut acc = 0;
            for (k, h) in hist.iter().enumerate() {
                acc += h;
                counts[k].push(acc);
            }
        }
        for c in &mut counts {
            c.sort_unstable();
        }
        Self { counts }
    }
}

type Slot<V> = Arc<OnceLock<Arc<V>>>;

struct Tables<V> {
    slots: Mutex<HashMap<NullKey, Slot<V>>>,
}

impl<V> Tables<V> {
    fn new() -> Self {
        Self {
            slots: Mutex::new(HashMap::new()),
        }
    }

    fn get_or_build(&self, key: NullKey, build: impl FnOnce(&NullKey) -> V) -> Arc<V> {
        let slot = {
            let mut slots = self.slots.lock().unwrap_or_else(|e| e.into_inner());
            slots.entry(key).or_default().clone()
        };
        slot.get_or_init(|| Arc::new(build(&key))).clone()
    }

    fn len(&self) -> usize {
        self.slots.lock().unwrap_or_else(|e| e.into_inner()).len()
    }
}

fn nnd_tables() -> &'static Tables<NndNull> {
    static TABLES: OnceLock<Tables<NndNull>> = OnceLock::new();
    TABLES.get_or_init(Tables::new)
}

fn ripley_tables() -> &'static Tables<RipleyNull> {
    static TABLES: OnceLock<Tables<RipleyNull>> = OnceLock::new();
    TABLES.get_or_init(Tables::new)
}

pub fn nnd_null(key: NullKey) -> Arc<NndNull> {
    nnd_tables().get_or_build(key, NndNull::simulate)
}

pub fn ripley_null(key: NullKey) -> Arc<RipleyNull> {
    ripley_tables().get_or_build(key, RipleyNull::simulate)
}

/// Number of cached (NND, Ripley) tables.
pub fn cached_table_counts() -> (usize, usize) {
    (nnd_tables().len(), ripley_tables().len())
}
