//! The scalar Fourier kernel `A(φ, φ′)` of a walk step and its derivatives.
//!
//! In the walker's Fourier basis one step multiplies the density kernel
//! `ρ(φ, φ′)` by `A(φ, φ′) = Tr M_k`, where
//!
//! ```text
//! M_0 = ε_entry(ρ_c)
//! M_j = V_cl(φ) · ε_j(M_{j−1}) · V_cl(φ′)†,   V_cl(φ) = diag(e^{iφ}, e^{−iφ})
//! ```
//!
//! Derivatives in `φ` are propagated exactly through the same recursion using
//! `∂_φ V_cl(φ) = iσ₃ V_cl(φ)`.

use std::f64::consts::TAU;

use crate::algebra::matrix::{Mat2, C64, I, ONE, ZERO};
use crate::algebra::pauli;
use crate::error::{QorwError, Result};
use crate::tolerance::TOL;

use super::model::{shared_reshuffle, WalkModel};

/// A walk model lowered to fixed-size coin matrices for repeated evaluation.
#[derive(Debug, Clone)]
pub struct CoinKernel {
    entering: Mat2,
    quantizers: Vec<Vec<Mat2>>,
}

#[inline]
fn phase_pair(phi: f64) -> (C64, C64) {
    let e = C64::from_polar(1.0, phi);
    (e, e.conj())
}

impl CoinKernel {
    pub fn new(model: &WalkModel) -> Self {
        let to2 = |m| Mat2::try_from(m).expect("walk model channels are 2×2");
        Self {
            entering: to2(model.entering_coin().matrix()),
            quantizers: model
                .quantizers()
                .iter()
                .map(|ch| ch.kraus().iter().map(to2).collect())
                .collect(),
        }
    }

    pub fn k(&self) -> usize {
        self.quantizers.len()
    }

    #[inline]
    fn channel(&self, j: usize, x: &Mat2) -> Mat2 {
        self.quantizers[j]
            .iter()
            .fold(Mat2::ZERO, |acc, kr| acc + *kr * *x * kr.adjoint())
    }

    /// `A(φ, φ′)`.
    pub fn value(&self, phi: f64, phi_prime: f64) -> C64 {
        let l = phase_pair(phi);
        let r = phase_pair(-phi_prime);
        let mut m = self.entering;
        for j in 0..self.k() {
            m = self.channel(j, &m).diag_sandwich(l, r);
        }
        m.trace()
    }

    /// `(A, ∂_φ A)` at `(φ, φ′)` by forward-mode differentiation.
    pub fn value_and_derivative(&self, phi: f64, phi_prime: f64) -> (C64, C64) {
        let l = phase_pair(phi);
        let r = phase_pair(-phi_prime);
        let mut m = self.entering;
        let mut d = Mat2::ZERO;
        for j in 0..self.k() {
            m = self.channel(j, &m).diag_sandwich(l, r);
            // D_j = iσ₃·M_j + V_cl(φ) ε_j(D_{j−1}) V_cl(φ′)†
            d = m.diag_sandwich((I, -I), (ONE, ONE)) + self.channel(j, &d).diag_sandwich(l, r);
        }
        (m.trace(), d.trace())
    }

    /// Taylor coefficients `c_r`, `r = 0..=order`, of `δ ↦ A(φ + δ, φ′)`.
    pub fn jet(&self, phi: f64, phi_prime: f64, order: usize) -> Vec<C64> {
        let (lp, lm) = phase_pair(phi);
        let r = phase_pair(-phi_prime);
        // coefficients of e^{±i(φ+δ)} in δ
        let mut shift_plus = Vec::with_capacity(order + 1);
        let mut shift_minus = Vec::with_capacity(order + 1);
        let (mut ip, mut im, mut fact) = (ONE, ONE, 1.0);
        for t in 0..=order {
            if t > 0 {
                ip *= I;
                im *= -I;
                fact *= t as f64;
            }
            shift_plus.push(lp * ip / fact);
            shift_minus.push(lm * im / fact);
        }

        let mut coeffs = vec![Mat2::ZERO; order + 1];
        coeffs[0] = self.entering;
        for j in 0..self.k() {
            let mapped: Vec<Mat2> = coeffs.iter().map(|c| self.channel(j, c)).collect();
            for (rr, slot) in coeffs.iter_mut().enumerate() {
                let mut acc = Mat2::ZERO;
                for t in 0..=rr {
                    acc = acc + mapped[rr - t].diag_sandwich((shift_plus[t], shift_minus[t]), r);
                }
                *slot = acc;
            }
        }
        coeffs.iter().map(Mat2::trace).collect()
    }
}

/// `A(φ, φ′)` for a model.
pub fn kernel_at(model: &WalkModel, phi: f64, phi_prime: f64) -> C64 {
    CoinKernel::new(model).value(phi, phi_prime)
}

/// Kernel values on the uniform `M × M` grid `φ_a = 2πa/M`, `φ′_b = 2πb/M`,
/// plus `∂_φ A` on the diagonal.
#[derive(Debug, Clone)]
pub struct KernelSample {
    pub grid_size: usize,
    /// Row-major: `values[a * grid_size + b] = A(φ_a, φ′_b)`.
    pub values: Vec<C64>,
    pub diag_derivative: Vec<C64>,
}

impl KernelSample {
    pub fn at(&self, a: usize, b: usize) -> C64 {
        self.values[a * self.grid_size + b]
    }

    pub fn node(&self, a: usize) -> f64 {
        TAU * a as f64 / self.grid_size as f64
    }
}

pub fn kernel_grid(model: &WalkModel, grid_size: usize) -> Result<KernelSample> {
    let k = model.k();
    if grid_size < 2 * k + 1 {
        return Err(QorwError::Parameter(format!(
            "grid of {grid_size} nodes cannot resolve a degree-{k} kernel (need ≥ {})",
            2 * k + 1
        )));
    }
    let kernel = CoinKernel::new(model);
    let node = |a: usize| TAU * a as f64 / grid_size as f64;
    let mut values = Vec::with_capacity(grid_size * grid_size);
    for a in 0..grid_size {
        for b in 0..grid_size {
            values.push(kernel.value(node(a), node(b)));
        }
    }
    let diag_derivative = (0..grid_size)
        .map(|a| kernel.value_and_derivative(node(a), node(a)).1)
        .collect();
    Ok(KernelSample {
        grid_size,
        values,
        diag_derivative,
    })
}

pub(crate) fn acf_from_derivative(derivative: C64) -> Result<f64> {
    let h = -I * derivative;
    if h.im.abs() > TOL.acf_imaginary {
        return Err(QorwError::Numeric(format!(
            "asymptotic characteristic function has imaginary part {:.3e}",
            h.im
        )));
    }
    Ok(h.re)
}

/// The asymptotic characteristic function `h(φ) = −i [∂_φ A(φ, φ′)]_{φ′=φ}`.
pub fn acf_h(model: &WalkModel, phi: f64) -> Result<f64> {
    acf_from_derivative(CoinKernel::new(model).value_and_derivative(phi, phi).1)
}

/// `h(φ)` at many angles, sharing one lowered kernel.
pub fn acf_h_many(model: &WalkModel, phis: &[f64]) -> Result<Vec<f64>> {
    let kernel = CoinKernel::new(model);
    phis.iter()
        .map(|&p| acf_from_derivative(kernel.value_and_derivative(p, p).1))
        .collect()
}

/// `h(φ)` for U-quantized models via the rotated Pauli sum
/// `Tr[(σ + V†σV + … + V^{†(k−1)}σV^{k−1}) ρ_c]`, `σ = U†σ₃U`, `V = V_cl(φ)U`.
pub fn acf_h_unitary(model: &WalkModel, phi: f64) -> Result<f64> {
    let u = shared_reshuffle(model).ok_or_else(|| {
        QorwError::Usage("rotated-σ₃ formula needs one shared unitary reshuffle".into())
    })?;
    let u2 = Mat2::try_from(u)?;
    let sigma = u2.adjoint() * Mat2::try_from(&pauli::sigma_3())? * u2;
    let (e, ec) = phase_pair(phi);
    let v = Mat2::diag(e, ec) * u2;
    let vd = v.adjoint();
    let mut term = sigma;
    let mut sum = Mat2::ZERO;
    for _ in 0..model.k() {
        sum = sum + term;
        term = vd * term * v;
    }
    let rho = Mat2::try_from(model.entering_coin().matrix())?;
    let h = (sum * rho).trace();
    if h.im.abs() > TOL.acf_imaginary {
        return Err(QorwError::Numeric(format!("acf has imaginary part {:.3e}", h.im)));
    }
    Ok(h.re)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassicalityReport {
    pub classical: bool,
    /// Largest spread of `A` along `φ₊` at fixed `φ₋`.
    pub max_variation: f64,
}

/// Checks whether `A` depends on `φ₋ = φ − φ′` only.
///
/// `A` is sampled on an `M × M` grid in `(φ₊, φ₋)` and the spread (largest
/// pairwise distance) of the values along each `φ₊` row is compared to `tol`.
pub fn classicality_test(model: &WalkModel, grid_size: usize, tol: f64) -> Result<ClassicalityReport> {
    let k = model.k();
    if grid_size < 4 * k + 2 {
        return Err(QorwError::Parameter(format!(
            "classicality grid needs ≥ {} nodes, got {grid_size}",
            4 * k + 2
        )));
    }
    let kernel = CoinKernel::new(model);
    let node = |a: usize| TAU * a as f64 / grid_size as f64;
    let mut max_variation: f64 = 0.0;
    let mut row = vec![ZERO; grid_size];
    for b in 0..grid_size {
        let minus = node(b);
        for (a, slot) in row.iter_mut().enumerate() {
            let plus = node(a);
            *slot = kernel.value(0.5 * (plus + minus), 0.5 * (plus - minus));
        }
        for (i, x) in row.iter().enumerate() {
            for y in &row[i + 1..] {
                max_variation = max_variation.max((x - y).norm());
            }
        }
    }
    Ok(ClassicalityReport {
        classical: max_variation <= tol,
        max_variation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{DensityMatrix, KrausChannel};
    use crate::walk::Builtin;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    fn ii() -> WalkModel {
        Builtin::ExampleII.build().unwrap()
    }

    #[test]
    fn diagonal_is_one_for_every_builtin() {
        for b in Builtin::catalogue() {
            let model = b.build().unwrap();
            for a in 0..17 {
                let phi = 0.37 * a as f64;
                assert!((kernel_at(&model, phi, phi) - ONE).norm() < 1e-12, "{b}");
            }
        }
    }

    #[test]
    fn example_ii_closed_form_zero() {
        // φ₋ = π/2, φ₊ = π/2 → φ = π/2, φ′ = 0
        assert!(kernel_at(&ii(), FRAC_PI_2, 0.0).norm() < 1e-15);
    }

    #[test]
    fn example_ii_acf_is_minus_cos_two_phi() {
        let model = ii();
        for a in 0..32 {
            let phi = TAU * a as f64 / 32.0;
            assert!((acf_h(&model, phi).unwrap() + (2.0 * phi).cos()).abs() < 1e-12);
            assert!((acf_h_unitary(&model, phi).unwrap() + (2.0 * phi).cos()).abs() < 1e-12);
        }
    }

    #[test]
    fn pure_right_mover() {
        let model = WalkModel::u_quantized("right", 1, KrausChannel::identity(2), DensityMatrix::plus())
            .unwrap();
        for phi in [0.0, 0.4, 2.2] {
            assert!((acf_h_unitary(&model, phi).unwrap() - 1.0).abs() < 1e-15);
            assert!((acf_h(&model, phi).unwrap() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn unitary_formula_refuses_noisy_models() {
        let iv = Builtin::ExampleIV { q: 0.2 }.build().unwrap();
        assert!(matches!(acf_h_unitary(&iv, 0.3), Err(QorwError::Usage(_))));
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let step = 1e-5;
        for b in Builtin::catalogue() {
            let model = b.build().unwrap();
            let kernel = CoinKernel::new(&model);
            for a in 0..12 {
                let phi = 0.51 * a as f64;
                let fd = (kernel.value(phi + step, phi) - kernel.value(phi - step, phi)) / (2.0 * step);
                let (_, d) = kernel.value_and_derivative(phi, phi);
                assert!((fd - d).norm() < 1e-8, "{b}: fd {fd} vs {d}");
            }
        }
    }

    #[test]
    fn jet_agrees_with_value_and_derivative() {
        let model = Builtin::ExampleIII { decay_t: 0.2, decay_tau: 0.7, q: 0.6 }.build().unwrap();
        let kernel = CoinKernel::new(&model);
        let (phi, phi_p) = (0.8, -0.3);
        let jet = kernel.jet(phi, phi_p, 3);
        let (v, d) = kernel.value_and_derivative(phi, phi_p);
        assert!((jet[0] - v).norm() < 1e-15);
        assert!((jet[1] - d).norm() < 1e-14);
        // second coefficient vs central second difference
        let h = 1e-4;
        let fd2 = (kernel.value(phi + h, phi_p) - 2.0 * v + kernel.value(phi - h, phi_p)) / (h * h);
        assert!((2.0 * jet[2] - fd2).norm() < 1e-6);
    }

    #[test]
    fn grid_checks() {
        let sample = kernel_grid(&ii(), 8).unwrap();
        for a in 0..8 {
            assert!((sample.at(a, a) - ONE).norm() < 1e-12);
            let phi = sample.node(a);
            assert!((-I * sample.diag_derivative[a] - C64::new(-(2.0 * phi).cos(), 0.0)).norm() < 1e-12);
        }
        assert!(matches!(kernel_grid(&ii(), 4), Err(QorwError::Parameter(_))));
    }

    #[test]
    fn classicality_verdicts() {
        let tol = 1e-10;
        let check = |b: Builtin| classicality_test(&b.build().unwrap(), 64, tol).unwrap().classical;
        assert!(check(Builtin::ExampleI { q: 0.3 }));
        assert!(!check(Builtin::ExampleII));
        assert!(check(Builtin::ExampleIII { decay_t: 0.3, decay_tau: 0.5, q: 0.7 }));
        assert!(!check(Builtin::ExampleIV { q: 0.3 }));
        assert!(!check(Builtin::ExampleIV { q: 0.0 }));
        // fully mixed coin: the φ₊ term cancels
        assert!(check(Builtin::ExampleIV { q: 0.5 }));
        assert!(classicality_test(&ii(), 9, tol).is_err());
    }

    #[test]
    fn rotation_dependence_breaks_only_with_offdiagonal_kraus() {
        // Y channel (anti-diagonal Kraus) stays classical for any coin
        let y = KrausChannel::new(
            vec![
                crate::algebra::pauli::sigma_2().scale_real(0.6f64.sqrt()),
                crate::algebra::ComplexMatrix::identity(2).scale_real(0.4f64.sqrt()),
            ],
            "y-flip",
        )
        .unwrap();
        let coin = DensityMatrix::pure(&[C64::new(0.6, 0.0), C64::new(0.0, 0.8)]).unwrap();
        let model = WalkModel::new("y", vec![y.clone(), y], None, coin).unwrap();
        assert!(classicality_test(&model, 32, 1e-10).unwrap().classical);
        let rot = WalkModel::u_quantized("r", 2, KrausChannel::rotation(FRAC_PI_4), DensityMatrix::plus())
            .unwrap();
        assert!(!classicality_test(&rot, 32, 1e-10).unwrap().classical);
    }
}
