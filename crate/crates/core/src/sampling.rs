//! Seeded sampling shared by the Monte Carlo estimators.
//!
//! Stream splitting: a run of `n` samples over `w` workers gives worker `i`
//! the contiguous block `[i·n/w, (i+1)·n/w)` and a ChaCha8 generator seeded
//! with `seed` on stream `i`. Per-worker partial results are combined in
//! worker order, so output is bit-identical for a fixed `(seed, w)`.

use std::f64::consts::TAU;
use std::ops::Range;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::distribution::PhaseDensity;

/// Nodes of the tabulated CDF used for inverse-transform sampling.
pub const CDF_NODES: usize = 4096;

pub fn substream(seed: u64, worker: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(worker as u64);
    rng
}

pub fn split_work(total: usize, workers: usize) -> Vec<Range<usize>> {
    let w = workers.max(1);
    (0..w).map(|i| (i * total / w)..((i + 1) * total / w)).collect()
}

/// Runs `job(worker, block)` on `workers` threads and returns results in
/// worker order.
pub fn run_workers<T, F>(total: usize, workers: usize, job: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize, Range<usize>) -> T + Sync,
{
    let blocks = split_work(total, workers);
    if blocks.len() == 1 {
        return vec![job(0, blocks[0].clone())];
    }
    std::thread::scope(|scope| {
        let handles: Vec<_> = blocks
            .into_iter()
            .enumerate()
            .map(|(i, block)| {
                let job = &job;
                scope.spawn(move || job(i, block))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("sampling worker panicked"))
            .collect()
    })
}

/// Default worker count: `QORW_THREADS` if set, else available parallelism.
pub fn default_workers() -> usize {
    std::env::var("QORW_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

/// Draws angles `φ ~ ρ(φ, φ)/2π` by inverting a piecewise-linear CDF tabulated
/// at [`CDF_NODES`] equally spaced angles.
#[derive(Debug, Clone)]
pub struct PhaseSampler {
    cdf: Vec<f64>,
    uniform: bool,
}

impl PhaseSampler {
    pub fn new(density: &PhaseDensity) -> Self {
        let step = TAU / CDF_NODES as f64;
        let mut cdf: Vec<f64> = (0..=CDF_NODES).map(|j| density.cdf(j as f64 * step)).collect();
        // monotone and pinned to [0, 1] against rounding
        cdf[0] = 0.0;
        for j in 1..cdf.len() {
            cdf[j] = cdf[j].max(cdf[j - 1]);
        }
        let last = cdf[CDF_NODES];
        cdf.iter_mut().for_each(|c| *c /= last);
        Self {
            cdf,
            uniform: density.is_uniform(),
        }
    }

    /// Maps `u ∈ [0, 1)` to an angle in `[0, 2π)`.
    pub fn invert(&self, u: f64) -> f64 {
        if self.uniform {
            return TAU * u;
        }
        let j = self.cdf.partition_point(|&c| c <= u).clamp(1, CDF_NODES);
        let (lo, hi) = (self.cdf[j - 1], self.cdf[j]);
        let frac = if hi > lo { (u - lo) / (hi - lo) } else { 0.5 };
        (j as f64 - 1.0 + frac) * TAU / CDF_NODES as f64
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        self.invert(rng.random::<f64>())
    }
}
