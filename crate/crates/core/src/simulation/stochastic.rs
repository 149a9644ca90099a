//! Classical stochastic estimate of `ε̄^s`: draw `φ ~ ρ(φ, φ)/2π`, draw each
//! slot's power `ν_i` uniformly from `{0, …, k−1}`, and average
//! `⊗_i V(φ)^{ν_i} ρ_c V(φ)^{†ν_i}`.

use rand::Rng;

use crate::algebra::matrix::{C64, ZERO};
use crate::algebra::{ComplexMatrix, DensityMatrix};
use crate::error::{QorwError, Result};
use crate::sampling::{run_workers, substream, PhaseSampler};

use super::{eps_bar_s, SimulatorSpec};

#[derive(Debug, Clone, PartialEq)]
pub struct StochasticEstimate {
    pub mean: DensityMatrix,
    /// Per-entry standard error `√((Var Re + Var Im)/N)`, row-major.
    pub std_err: Vec<f64>,
    pub samples: usize,
    pub seed: u64,
    pub workers: usize,
}

impl StochasticEstimate {
    pub fn max_std_err(&self) -> f64 {
        self.std_err.iter().copied().fold(0.0, f64::max)
    }

    /// Largest `|estimate − reference| / std_err` over entries with nonzero error.
    pub fn max_z_score(&self, reference: &ComplexMatrix) -> f64 {
        let dim = reference.dim();
        (0..dim * dim)
            .map(|e| {
                let diff = (self.mean.matrix()[(e / dim, e % dim)] - reference[(e / dim, e % dim)]).norm();
                if self.std_err[e] > 0.0 {
                    diff / self.std_err[e]
                } else if diff == 0.0 {
                    0.0
                } else {
                    f64::INFINITY
                }
            })
            .fold(0.0, f64::max)
    }
}

/// Running mean and squared-deviation sums per entry, mergeable in order.
#[derive(Debug, Clone)]
struct Moments {
    count: usize,
    mean: Vec<C64>,
    m2_re: Vec<f64>,
    m2_im: Vec<f64>,
}

impl Moments {
    fn new(len: usize) -> Self {
        Self {
            count: 0,
            mean: vec![ZERO; len],
            m2_re: vec![0.0; len],
            m2_im: vec![0.0; len],
        }
    }

    fn push(&mut self, x: &[C64]) {
        self.count += 1;
        let n = self.count as f64;
        for (i, &v) in x.iter().enumerate() {
            let delta = v - self.mean[i];
            self.mean[i] += delta / n;
            let after = v - self.mean[i];
            self.m2_re[i] += delta.re * after.re;
            self.m2_im[i] += delta.im * after.im;
        }
    }

    fn merge(&mut self, other: &Moments) {
        if other.count == 0 {
            return;
        }
        let (na, nb) = (self.count as f64, other.count as f64);
        let total = na + nb;
        for i in 0..self.mean.len() {
            let delta = other.mean[i] - self.mean[i];
            self.mean[i] += delta * (nb / total);
            self.m2_re[i] += other.m2_re[i] + delta.re * delta.re * na * nb / total;
            self.m2_im[i] += other.m2_im[i] + delta.im * delta.im * na * nb / total;
        }
        self.count += other.count;
    }
}

/// Seeded estimate of `ε̄^s` from `samples` draws split over `workers`
/// substreams; bit-identical for fixed `(seed, workers)`.
pub fn stochastic_estimate(
    spec: &SimulatorSpec,
    samples: usize,
    seed: u64,
    workers: usize,
) -> Result<StochasticEstimate> {
    if samples == 0 {
        return Err(QorwError::Parameter("need at least one sample".into()));
    }
    let workers = workers.max(1);
    let dim = 1usize << spec.s();
    let sampler = PhaseSampler::new(spec.density());
    let parts = run_workers(samples, workers, |worker, block| {
        let mut rng = substream(seed, worker);
        let mut acc = Moments::new(dim * dim);
        for _ in block {
            let phi = sampler.sample(&mut rng);
            let powers = spec.v_powers(phi);
            let mut prod: Option<ComplexMatrix> = None;
            for _ in 0..spec.s() {
                let nu = rng.random_range(0..spec.k());
                let slot = spec.coin().matrix().conjugate_by(&powers[nu]);
                prod = Some(match prod {
                    None => slot,
                    Some(p) => p.kron(&slot),
                });
            }
            acc.push(prod.expect("s ≥ 1").as_slice());
        }
        acc
    });
    let mut total = Moments::new(dim * dim);
    for part in &parts {
        total.merge(part);
    }
    let n = samples as f64;
    let std_err = total
        .m2_re
        .iter()
        .zip(&total.m2_im)
        .map(|(r, i)| ((r + i) / (n - 1.0).max(1.0) / n).sqrt())
        .collect();
    Ok(StochasticEstimate {
        mean: DensityMatrix::new_unchecked(ComplexMatrix::from_vec(dim, total.mean)?),
        std_err,
        samples,
        seed,
        workers,
    })
}

/// One row of an estimator convergence study.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow {
    pub samples: usize,
    /// `max_e |estimate − ε̄^s|`, averaged over replicates.
    pub max_entry_error: f64,
    /// Largest per-entry standard error, averaged over replicates.
    pub predicted_sigma: f64,
}

/// Errors of the estimator at each sample size, each averaged over
/// `replicates` runs seeded `seed, seed + 1, …`.
pub fn convergence_table(
    spec: &SimulatorSpec,
    sizes: &[usize],
    seed: u64,
    workers: usize,
    replicates: usize,
) -> Result<Vec<ConvergenceRow>> {
    let reference = eps_bar_s(spec)?;
    let reps = replicates.max(1);
    sizes
        .iter()
        .map(|&samples| {
            let mut err = 0.0;
            let mut sigma = 0.0;
            for r in 0..reps {
                let est = stochastic_estimate(spec, samples, seed.wrapping_add(r as u64), workers)?;
                err += est.mean.matrix().max_abs_diff(reference.matrix());
                sigma += est.max_std_err();
            }
            Ok(ConvergenceRow {
                samples,
                max_entry_error: err / reps as f64,
                predicted_sigma: sigma / reps as f64,
            })
        })
        .collect()
}
