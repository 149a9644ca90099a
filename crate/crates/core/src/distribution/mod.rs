//! Occupation probabilities, moments and the limiting density of the scaled
//! walker position.

pub mod asymptotic;
pub mod init;
pub mod spectral;

pub use asymptotic::{asymptotic_moment, asymptotic_pdf, Histogram, PdfMode, PdfOptions};
pub use init::{init_kernel, PhaseDensity, WalkerInit};
pub use spectral::{
    classical_probabilities, moment, moment_spectral, probabilities, probabilities_on_grid,
    spectral_grid_size,
};

/// Occupation probabilities `P_m^{(n)}` on a contiguous site window.
#[derive(Debug, Clone, PartialEq)]
pub struct PositionDistribution {
    n: usize,
    first_site: i64,
    probs: Vec<f64>,
}

impl PositionDistribution {
    pub fn new(n: usize, first_site: i64, probs: Vec<f64>) -> Self {
        Self {
            n,
            first_site,
            probs,
        }
    }

    /// Step index.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn first_site(&self) -> i64 {
        self.first_site
    }

    pub fn last_site(&self) -> i64 {
        self.first_site + self.probs.len() as i64 - 1
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn sites(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        self.probs
            .iter()
            .enumerate()
            .map(|(i, &p)| (self.first_site + i as i64, p))
    }

    /// `P_m`, zero outside the window.
    pub fn prob(&self, m: i64) -> f64 {
        let idx = m - self.first_site;
        if idx < 0 {
            return 0.0;
        }
        self.probs.get(idx as usize).copied().unwrap_or(0.0)
    }

    pub fn total(&self) -> f64 {
        self.probs.iter().sum()
    }

    /// `Σ m^s P_m`
    pub fn moment(&self, s: u32) -> f64 {
        self.sites().map(|(m, p)| (m as f64).powi(s as i32) * p).sum()
    }

    /// Largest `|P_m − Q_m|` over the union of both windows.
    pub fn max_abs_diff(&self, other: &PositionDistribution) -> f64 {
        let lo = self.first_site.min(other.first_site);
        let hi = self.last_site().max(other.last_site());
        (lo..=hi)
            .map(|m| (self.prob(m) - other.prob(m)).abs())
            .fold(0.0, f64::max)
    }

    /// Sites with probability above `floor`, in order.
    pub fn support(&self, floor: f64) -> Vec<(i64, f64)> {
        self.sites().filter(|&(_, p)| p > floor).collect()
    }
}
