//! Exact finite-n statistics from the Fourier kernel.
//!
//! After `n` steps the walker kernel is `ρ(φ, φ′) A(φ, φ′)^n`, a trigonometric
//! polynomial of degree at most `kn + m_max` in each angle. A uniform grid of
//! more than twice that many nodes integrates it exactly, so the probabilities
//! below carry only rounding error.

use std::f64::consts::TAU;

use crate::algebra::matrix::{C64, I, ONE, ZERO};
use crate::error::{QorwError, Result};
use crate::tolerance::TOL;
use crate::walk::{classicality_test, CoinKernel, WalkModel};

use super::init::{init_kernel, WalkerInit};
use super::PositionDistribution;

/// Smallest power of two above `2(kn + m_max) + 1`.
pub fn spectral_grid_size(model: &WalkModel, init: &WalkerInit, n: usize) -> usize {
    let degree = model.k() * n + init.max_abs_site();
    (2 * degree + 2).next_power_of_two()
}

/// `P_m^{(n)}` on the automatically sized exact grid.
pub fn probabilities(model: &WalkModel, init: &WalkerInit, n: usize) -> Result<PositionDistribution> {
    probabilities_on_grid(model, init, n, spectral_grid_size(model, init, n))
}

/// `P_m^{(n)} = M⁻² Σ_{a,b} ρ(φ_a, φ′_b) A(φ_a, φ′_b)^n e^{−im(φ_a − φ′_b)}`.
pub fn probabilities_on_grid(
    model: &WalkModel,
    init: &WalkerInit,
    n: usize,
    grid_size: usize,
) -> Result<PositionDistribution> {
    let degree = model.k() * n + init.max_abs_site();
    if grid_size < 2 * degree + 2 {
        return Err(QorwError::Parameter(format!(
            "grid of {grid_size} nodes is too coarse for degree {degree}"
        )));
    }
    let rho = init_kernel(init, grid_size)?;
    let kernel = CoinKernel::new(model);
    let node = |a: usize| TAU * a as f64 / grid_size as f64;

    // Only φ_a − φ′_b matters for the site phase, so collapse the grid onto
    // its wrapped diagonals first: g_d = Σ_a G(a, a − d).
    let mut diagonals = vec![ZERO; grid_size];
    for a in 0..grid_size {
        for b in 0..grid_size {
            let g = rho[a * grid_size + b] * kernel.value(node(a), node(b)).powu(n as u32);
            diagonals[(a + grid_size - b) % grid_size] += g;
        }
    }

    let step = (model.k() * n) as i64;
    let first = init.min_site() - step;
    let last = init.max_site() + step;
    let norm = 1.0 / (grid_size * grid_size) as f64;
    let probs = (first..=last)
        .map(|m| {
            let sum: C64 = diagonals
                .iter()
                .enumerate()
                .map(|(d, &g)| g * C64::from_polar(1.0, -(m as f64) * node(d)))
                .sum();
            sum.re * norm
        })
        .collect();
    Ok(PositionDistribution::new(n, first, probs))
}

/// One-dimensional route for classical models and diagonal initial states:
/// `P_m = M⁻¹ Σ_b ρ(φ_b) A(φ_b)^n e^{−imφ_b}` with `φ_b` standing for `φ − φ′`.
pub fn classical_probabilities(
    model: &WalkModel,
    init: &WalkerInit,
    n: usize,
) -> Result<PositionDistribution> {
    if !init.is_diagonal() {
        return Err(QorwError::Usage(
            "1D quadrature needs a walker state diagonal in the site basis".into(),
        ));
    }
    let check = classicality_test(model, (4 * model.k() + 2).next_power_of_two().max(32), 1e-10)?;
    if !check.classical {
        return Err(QorwError::Usage(format!(
            "model is not classical (φ₊ variation {:.3e})",
            check.max_variation
        )));
    }
    let grid_size = spectral_grid_size(model, init, n);
    let kernel = CoinKernel::new(model);
    let start = init.distribution();
    let node = |b: usize| TAU * b as f64 / grid_size as f64;
    // ρ(φ, φ′) = Σ p_m e^{im(φ − φ′)} for a diagonal state
    let rho_minus = |x: f64| -> C64 {
        start
            .sites()
            .map(|(m, p)| p * C64::from_polar(1.0, m as f64 * x))
            .sum()
    };
    let weighted: Vec<C64> = (0..grid_size)
        .map(|b| rho_minus(node(b)) * kernel.value(node(b), 0.0).powu(n as u32))
        .collect();
    let step = (model.k() * n) as i64;
    let first = init.min_site() - step;
    let probs = (first..=init.max_site() + step)
        .map(|m| {
            let s: C64 = weighted
                .iter()
                .enumerate()
                .map(|(b, &w)| w * C64::from_polar(1.0, -(m as f64) * node(b)))
                .sum();
            s.re / grid_size as f64
        })
        .collect();
    Ok(PositionDistribution::new(n, first, probs))
}

/// Truncated product of two Taylor series.
fn jet_mul(a: &[C64], b: &[C64]) -> Vec<C64> {
    let order = a.len().min(b.len());
    (0..order)
        .map(|r| (0..=r).map(|t| a[t] * b[r - t]).sum())
        .collect()
}

/// `⟨L^s⟩_n` from the derivative form
/// `(1/2π iˢ) ∫ dφ [∂_φˢ (ρ(φ, φ′) A(φ, φ′)^n)]_{φ′=φ}`.
pub fn moment_spectral(model: &WalkModel, init: &WalkerInit, n: usize, s: u32) -> Result<f64> {
    let order = s as usize;
    let degree = model.k() * n + init.max_abs_site();
    // the diagonal restriction has degree ≤ 2·degree
    let nodes = (4 * degree + 4).next_power_of_two();
    let kernel = CoinKernel::new(model);
    let entries = init.entries();
    let factorial: f64 = (1..=order).map(|t| t as f64).product();

    let mut total = ZERO;
    for a in 0..nodes {
        let phi = TAU * a as f64 / nodes as f64;
        let a_jet = kernel.jet(phi, phi, order);
        let mut power = vec![ZERO; order + 1];
        power[0] = ONE;
        for _ in 0..n {
            power = jet_mul(&power, &a_jet);
        }
        // ρ(φ+δ, φ) = Σ ρ_{mm′} e^{i(m−m′)φ} e^{imδ}
        let mut rho_jet = vec![ZERO; order + 1];
        for &(m, mp, z) in &entries {
            let base = z * C64::from_polar(1.0, (m - mp) as f64 * phi);
            let mut coeff = base;
            for (r, slot) in rho_jet.iter_mut().enumerate() {
                if r > 0 {
                    coeff *= I * m as f64 / r as f64;
                }
                *slot += coeff;
            }
        }
        total += jet_mul(&rho_jet, &power)[order];
    }
    let value = total * factorial / (nodes as f64) / I.powu(s);
    Ok(value.re)
}

/// `⟨L^s⟩_n`, computed from the site probabilities and cross-checked against
/// the derivative form.
pub fn moment(model: &WalkModel, init: &WalkerInit, n: usize, s: u32) -> Result<f64> {
    if s == 0 {
        return Err(QorwError::Parameter("moment order must be ≥ 1".into()));
    }
    let direct = probabilities(model, init, n)?.moment(s);
    let spectral = moment_spectral(model, init, n, s)?;
    let gap = (direct - spectral).abs();
    if gap > TOL.moment_agreement * direct.abs().max(1.0) {
        return Err(QorwError::Numeric(format!(
            "moment routes disagree: Σ m^s P_m = {direct}, derivative form = {spectral}"
        )));
    }
    Ok(direct)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walk::Builtin;

    #[test]
    fn example_ii_first_step() {
        let model = Builtin::ExampleII.build().unwrap();
        let p = probabilities(&model, &WalkerInit::origin(), 1).unwrap();
        assert_eq!(p.first_site(), -2);
        let expected = [0.25, 0.0, 0.5, 0.0, 0.25];
        for (got, want) in p.probs().iter().zip(expected) {
            assert!((got - want).abs() < 1e-14);
        }
    }

    #[test]
    fn zero_steps_reproduce_the_initial_state() {
        let model = Builtin::ExampleIV { q: 0.3 }.build().unwrap();
        let init = WalkerInit::pure(vec![
            (-1, C64::new(0.6, 0.0)),
            (2, C64::new(0.0, 0.8)),
        ])
        .unwrap();
        let p = probabilities(&model, &init, 0).unwrap();
        assert!((p.prob(-1) - 0.36).abs() < 1e-14);
        assert!((p.prob(2) - 0.64).abs() < 1e-14);
        assert!(p.prob(0).abs() < 1e-14);
    }

    #[test]
    fn too_coarse_grid_rejected() {
        let model = Builtin::ExampleII.build().unwrap();
        assert!(probabilities_on_grid(&model, &WalkerInit::origin(), 3, 8).is_err());
    }

    #[test]
    fn moments_of_example_ii() {
        let model = Builtin::ExampleII.build().unwrap();
        let o = WalkerInit::origin();
        assert!(moment(&model, &o, 1, 1).unwrap().abs() < 1e-14);
        assert!((moment(&model, &o, 1, 2).unwrap() - 2.0).abs() < 1e-13);
        for s in 1..=4 {
            assert!(moment(&model, &o, 0, s).unwrap().abs() < 1e-15);
        }
        assert!(moment(&model, &o, 1, 0).is_err());
    }

    #[test]
    fn derivative_moment_on_shifted_start() {
        let model = Builtin::ExampleI { q: 0.8 }.build().unwrap();
        let init = WalkerInit::site(3);
        // right with 0.8, left with 0.2: mean 3 + 0.6n
        let m1 = moment_spectral(&model, &init, 4, 1).unwrap();
        assert!((m1 - (3.0 + 0.6 * 4.0)).abs() < 1e-12);
    }

    #[test]
    fn classical_route_rejects_quantum_models() {
        let model = Builtin::ExampleII.build().unwrap();
        assert!(matches!(
            classical_probabilities(&model, &WalkerInit::origin(), 2),
            Err(QorwError::Usage(_))
        ));
    }
}
