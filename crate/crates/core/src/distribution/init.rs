use std::f64::consts::TAU;

use crate::algebra::matrix::{ComplexMatrix, C64, I, ONE, ZERO};
use crate::algebra::DensityMatrix;
use crate::error::{QorwError, Result};
use crate::tolerance::TOL;

use super::PositionDistribution;

/// A finitely supported initial walker state.
#[derive(Debug, Clone, PartialEq)]
pub enum WalkerInit {
    /// Pure state `Σ a_m |m⟩`.
    Pure(Vec<(i64, C64)>),
    /// Density matrix over the window `first_site ..= first_site + dim − 1`.
    Mixed {
        first_site: i64,
        density: DensityMatrix,
    },
}

impl WalkerInit {
    /// `|0⟩⟨0|`
    pub fn origin() -> Self {
        WalkerInit::Pure(vec![(0, ONE)])
    }

    /// `|m⟩⟨m|`
    pub fn site(m: i64) -> Self {
        WalkerInit::Pure(vec![(m, ONE)])
    }

    pub fn pure(amplitudes: Vec<(i64, C64)>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(QorwError::Parameter("pure walker state needs an amplitude".into()));
        }
        let mut sites: Vec<i64> = amplitudes.iter().map(|&(m, _)| m).collect();
        sites.sort_unstable();
        if sites.windows(2).any(|w| w[0] == w[1]) {
            return Err(QorwError::Parameter("walker amplitudes list a site twice".into()));
        }
        let norm: f64 = amplitudes.iter().map(|(_, a)| a.norm_sqr()).sum();
        if (norm - 1.0).abs() > TOL.trace {
            return Err(QorwError::Parameter(format!("walker state has norm² {norm}, not 1")));
        }
        Ok(WalkerInit::Pure(amplitudes))
    }

    pub fn mixed(first_site: i64, density: ComplexMatrix) -> Result<Self> {
        Ok(WalkerInit::Mixed {
            first_site,
            density: DensityMatrix::new(density)?,
        })
    }

    /// Nonzero matrix elements `(m, m′, ⟨m|ρ_w|m′⟩)`.
    pub fn entries(&self) -> Vec<(i64, i64, C64)> {
        match self {
            WalkerInit::Pure(amps) => amps
                .iter()
                .flat_map(|&(m, a)| amps.iter().map(move |&(mp, b)| (m, mp, a * b.conj())))
                .filter(|e| e.2 != ZERO)
                .collect(),
            WalkerInit::Mixed {
                first_site,
                density,
            } => {
                let d = density.matrix();
                let mut out = Vec::new();
                for i in 0..d.dim() {
                    for j in 0..d.dim() {
                        if d[(i, j)] != ZERO {
                            out.push((first_site + i as i64, first_site + j as i64, d[(i, j)]));
                        }
                    }
                }
                out
            }
        }
    }

    pub fn min_site(&self) -> i64 {
        self.entries().iter().map(|e| e.0.min(e.1)).min().unwrap_or(0)
    }

    pub fn max_site(&self) -> i64 {
        self.entries().iter().map(|e| e.0.max(e.1)).max().unwrap_or(0)
    }

    /// `max |m|` over the support.
    pub fn max_abs_site(&self) -> usize {
        self.min_site().unsigned_abs().max(self.max_site().unsigned_abs()) as usize
    }

    /// True when `ρ_w` is diagonal in the site basis.
    pub fn is_diagonal(&self) -> bool {
        self.entries().iter().all(|e| e.0 == e.1)
    }

    /// Site occupation probabilities before any step.
    pub fn distribution(&self) -> PositionDistribution {
        let (lo, hi) = (self.min_site(), self.max_site());
        let mut probs = vec![0.0; (hi - lo + 1) as usize];
        for (m, mp, z) in self.entries() {
            if m == mp {
                probs[(m - lo) as usize] += z.re;
            }
        }
        PositionDistribution::new(0, lo, probs)
    }

    /// Diagonal of the Fourier kernel, `ρ(φ, φ)`.
    pub fn phase_density(&self) -> PhaseDensity {
        let mut coeffs: Vec<(i64, C64)> = Vec::new();
        for (m, mp, z) in self.entries() {
            let d = m - mp;
            match coeffs.iter_mut().find(|c| c.0 == d) {
                Some(c) => c.1 += z,
                None => coeffs.push((d, z)),
            }
        }
        coeffs.sort_by_key(|c| c.0);
        PhaseDensity { coeffs }
    }
}

/// Fourier kernel of the walker state on an `M × M` grid:
/// `ρ(φ_a, φ′_b) = Σ ⟨m|ρ_w|m′⟩ e^{i m φ_a − i m′ φ′_b}`, row-major in `a`.
///
/// With this sign convention `|0⟩⟨0|` maps to the constant 1 and the
/// occupation probability `P_m = M⁻² Σ ρ(φ_a, φ′_b) e^{−im(φ_a − φ′_b)}`
/// recovers `⟨m|ρ_w|m⟩`.
pub fn init_kernel(init: &WalkerInit, grid_size: usize) -> Result<Vec<C64>> {
    let need = 2 * init.max_abs_site() + 2;
    if grid_size < need {
        return Err(QorwError::Parameter(format!(
            "walker kernel grid needs ≥ {need} nodes, got {grid_size}"
        )));
    }
    let entries = init.entries();
    let phase = |m: i64, a: usize| C64::from_polar(1.0, TAU * (m as f64) * (a as f64) / grid_size as f64);
    let mut out = vec![ZERO; grid_size * grid_size];
    for a in 0..grid_size {
        for b in 0..grid_size {
            out[a * grid_size + b] = entries
                .iter()
                .map(|&(m, mp, z)| z * phase(m, a) * phase(mp, b).conj())
                .sum();
        }
    }
    Ok(out)
}

/// `ρ(φ, φ) = Σ_d c_d e^{idφ}`, a nonnegative trigonometric polynomial with
/// `c_0 = 1`; `ρ(φ, φ)/2π` is a probability density on the circle.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseDensity {
    coeffs: Vec<(i64, C64)>,
}

impl PhaseDensity {
    /// The uniform density of `|0⟩⟨0|`.
    pub fn uniform() -> Self {
        PhaseDensity {
            coeffs: vec![(0, ONE)],
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.iter().map(|c| c.0.unsigned_abs() as usize).max().unwrap_or(0)
    }

    pub fn is_uniform(&self) -> bool {
        self.coeffs.iter().all(|&(d, z)| d == 0 || z.norm() == 0.0)
    }

    pub fn eval(&self, phi: f64) -> f64 {
        self.coeffs
            .iter()
            .map(|&(d, z)| (z * C64::from_polar(1.0, d as f64 * phi)).re)
            .sum()
    }

    /// `(1/2π) ∫_0^φ ρ(x, x) dx`, exactly.
    pub fn cdf(&self, phi: f64) -> f64 {
        let total: f64 = self
            .coeffs
            .iter()
            .map(|&(d, z)| {
                if d == 0 {
                    (z * phi).re
                } else {
                    (z * (C64::from_polar(1.0, d as f64 * phi) - ONE) / (I * d as f64)).re
                }
            })
            .sum();
        total / TAU
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn node(a: usize, m: usize) -> f64 {
        TAU * a as f64 / m as f64
    }

    #[test]
    fn origin_kernel_is_constant_one() {
        let k = init_kernel(&WalkerInit::origin(), 8).unwrap();
        assert!(k.iter().all(|z| (z - ONE).norm() < 1e-15));
    }

    #[test]
    fn single_site_kernel() {
        let m = 8;
        let k = init_kernel(&WalkerInit::site(1), m).unwrap();
        for a in 0..m {
            for b in 0..m {
                let expected = C64::from_polar(1.0, node(a, m) - node(b, m));
                assert!((k[a * m + b] - expected).norm() < 1e-14);
            }
            assert!((k[a * m + a] - ONE).norm() < 1e-14);
        }
    }

    #[test]
    fn superposition_kernel_matches_double_sum() {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let init = WalkerInit::pure(vec![(0, C64::new(r, 0.0)), (1, C64::new(r, 0.0))]).unwrap();
        let m = 6;
        let k = init_kernel(&init, m).unwrap();
        for a in 0..m {
            for b in 0..m {
                let (p, q) = (node(a, m), node(b, m));
                let expected = 0.5 * (ONE + C64::from_polar(1.0, p)) * (ONE + C64::from_polar(1.0, -q));
                assert!((k[a * m + b] - expected).norm() < 1e-14);
            }
        }
        assert!(init_kernel(&WalkerInit::site(3), 7).is_err());
    }

    #[test]
    fn init_validation() {
        assert!(WalkerInit::pure(vec![(0, C64::new(0.5, 0.0))]).is_err());
        assert!(WalkerInit::pure(vec![(0, ONE), (0, ZERO)]).is_err());
        assert!(WalkerInit::mixed(-1, ComplexMatrix::identity(2)).is_err());
        let mixed = WalkerInit::mixed(-1, ComplexMatrix::identity(2).scale_real(0.5)).unwrap();
        assert!(mixed.is_diagonal());
        assert_eq!(mixed.max_abs_site(), 1);
        let d = mixed.distribution();
        assert_eq!(d.first_site(), -1);
        assert_eq!(d.probs(), &[0.5, 0.5]);
    }

    #[test]
    fn phase_density_cdf_is_exact() {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let init = WalkerInit::pure(vec![(0, C64::new(r, 0.0)), (2, C64::new(0.0, r))]).unwrap();
        let dens = init.phase_density();
        assert_eq!(dens.degree(), 2);
        assert!((dens.cdf(TAU) - 1.0).abs() < 1e-15);
        // trapezoid with many points as an independent check
        let n = 20000;
        let phi_end = 2.3;
        let h = phi_end / n as f64;
        let trap: f64 = (0..=n)
            .map(|j| {
                let w = if j == 0 || j == n { 0.5 } else { 1.0 };
                w * dens.eval(j as f64 * h)
            })
            .sum::<f64>()
            * h
            / TAU;
        assert!((dens.cdf(phi_end) - trap).abs() < 1e-8);
        assert!((0..100).all(|j| dens.eval(j as f64 * 0.0628) >= -1e-14));
    }
}
