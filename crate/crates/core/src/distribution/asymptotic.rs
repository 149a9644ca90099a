//! Long-time statistics: the scaled position `L/n` converges in law to
//! `Y = h(φ)` with `φ` drawn from `ρ(φ, φ)/2π`.

use std::f64::consts::TAU;

use crate::error::{QorwError, Result};
use crate::sampling::{run_workers, substream, PhaseSampler};
use crate::walk::kernel::acf_from_derivative;
use crate::walk::{CoinKernel, WalkModel};

use super::init::WalkerInit;

/// `(1/2π) ∫ ρ(φ, φ) h(φ)^s dφ`, by a uniform rule exact for the integrand's
/// degree `2ks + deg ρ`.
pub fn asymptotic_moment(model: &WalkModel, init: &WalkerInit, s: u32) -> Result<f64> {
    if s == 0 {
        return Err(QorwError::Parameter("moment order must be ≥ 1".into()));
    }
    let density = init.phase_density();
    let degree = 2 * model.k() * s as usize + density.degree();
    let nodes = (2 * degree + 2).next_power_of_two();
    let kernel = CoinKernel::new(model);
    let mut total = 0.0;
    for a in 0..nodes {
        let phi = TAU * a as f64 / nodes as f64;
        let h = acf_from_derivative(kernel.value_and_derivative(phi, phi).1)?;
        total += density.eval(phi) * h.powi(s as i32);
    }
    Ok(total / nodes as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PdfMode {
    /// Deterministic weighted uniform grid of angles.
    Quadrature,
    /// Inverse-transform sampling of `φ`, split over `workers` substreams.
    MonteCarlo { seed: u64, workers: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PdfOptions {
    pub bins: usize,
    /// Grid nodes (quadrature) or samples (Monte Carlo).
    pub nodes: usize,
    pub mode: PdfMode,
}

impl PdfOptions {
    pub fn quadrature(bins: usize, nodes: usize) -> Self {
        Self {
            bins,
            nodes,
            mode: PdfMode::Quadrature,
        }
    }
}

/// Half-width of the single bin reported for a point mass.
pub const DEGENERATE_HALF_WIDTH: f64 = 1e-9;

/// Binned probability masses of the limiting scaled position.
#[derive(Debug, Clone, PartialEq)]
pub struct Histogram {
    pub edges: Vec<f64>,
    pub masses: Vec<f64>,
    /// Quadrature nodes or Monte Carlo samples behind the estimate.
    pub count: usize,
    pub seed: Option<u64>,
    /// The law is a point mass; `edges` bracket it with one tiny bin.
    pub degenerate: bool,
}

impl Histogram {
    pub fn bins(&self) -> usize {
        self.masses.len()
    }

    pub fn width(&self, i: usize) -> f64 {
        self.edges[i + 1] - self.edges[i]
    }

    pub fn center(&self, i: usize) -> f64 {
        0.5 * (self.edges[i] + self.edges[i + 1])
    }

    /// Mass divided by bin width.
    pub fn density(&self, i: usize) -> f64 {
        self.masses[i] / self.width(i)
    }

    pub fn total_mass(&self) -> f64 {
        self.masses.iter().sum()
    }

    /// Midpoint estimate of `E[Y^s]`.
    pub fn moment(&self, s: u32) -> f64 {
        (0..self.bins())
            .map(|i| self.center(i).powi(s as i32) * self.masses[i])
            .sum()
    }

    /// Smallest and largest edge of the bins that carry mass.
    pub fn occupied_range(&self) -> Option<(f64, f64)> {
        let first = self.masses.iter().position(|&m| m > 0.0)?;
        let last = self.masses.iter().rposition(|&m| m > 0.0)?;
        Some((self.edges[first], self.edges[last + 1]))
    }

    fn from_weighted(values: &[(f64, f64)], bins: usize, count: usize, seed: Option<u64>) -> Self {
        let lo = values.iter().map(|v| v.0).fold(f64::INFINITY, f64::min);
        let hi = values.iter().map(|v| v.0).fold(f64::NEG_INFINITY, f64::max);
        let total: f64 = values.iter().map(|v| v.1).sum();
        if hi - lo < 1e-12 {
            let y = 0.5 * (lo + hi);
            return Histogram {
                edges: vec![y - DEGENERATE_HALF_WIDTH, y + DEGENERATE_HALF_WIDTH],
                masses: vec![1.0],
                count,
                seed,
                degenerate: true,
            };
        }
        let width = (hi - lo) / bins as f64;
        let edges: Vec<f64> = (0..=bins).map(|i| lo + width * i as f64).collect();
        let mut masses = vec![0.0; bins];
        for &(y, w) in values {
            let idx = (((y - lo) / width).floor() as usize).min(bins - 1);
            masses[idx] += w / total;
        }
        Histogram {
            edges,
            masses,
            count,
            seed,
            degenerate: false,
        }
    }
}

/// Histogram of `Y = h(φ)`, `φ ~ ρ(φ, φ)/2π`, on `bins` equal bins spanning
/// the observed range of `Y`.
pub fn asymptotic_pdf(model: &WalkModel, init: &WalkerInit, opts: &PdfOptions) -> Result<Histogram> {
    if opts.bins == 0 {
        return Err(QorwError::Parameter("histogram needs at least one bin".into()));
    }
    if opts.nodes < 10 * opts.bins {
        return Err(QorwError::Parameter(format!(
            "{} nodes are too few for {} bins (need ≥ 10 per bin)",
            opts.nodes, opts.bins
        )));
    }
    let kernel = CoinKernel::new(model);
    let density = init.phase_density();
    let acf = |phi: f64| acf_from_derivative(kernel.value_and_derivative(phi, phi).1);

    match opts.mode {
        PdfMode::Quadrature => {
            let mut values = Vec::with_capacity(opts.nodes);
            for j in 0..opts.nodes {
                let phi = TAU * j as f64 / opts.nodes as f64;
                let w = density.eval(phi).max(0.0);
                values.push((acf(phi)?, w));
            }
            Ok(Histogram::from_weighted(&values, opts.bins, opts.nodes, None))
        }
        PdfMode::MonteCarlo { seed, workers } => {
            let sampler = PhaseSampler::new(&density);
            let parts = run_workers(opts.nodes, workers, |worker, block| {
                let mut rng = substream(seed, worker);
                block
                    .map(|_| acf(sampler.sample(&mut rng)).map(|y| (y, 1.0)))
                    .collect::<Result<Vec<_>>>()
            });
            let mut values = Vec::with_capacity(opts.nodes);
            for part in parts {
                values.extend(part?);
            }
            Ok(Histogram::from_weighted(&values, opts.bins, opts.nodes, Some(seed)))
        }
    }
}
