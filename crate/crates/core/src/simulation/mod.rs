//! Quantum simulation of the long-time statistics of U-quantized walks.
//!
//! With `V(φ) = V_cl(φ) U` the map `ε_φ(ρ) = (1/k) Σ_{j<k} V^j ρ V^{†j}` and
//! `σ = U†σ₃U` give `h(φ) = k Tr[ε_φ(ρ_c) σ]`. Averaging `ε_φ(ρ_c)^{⊗s}` over
//! `φ ~ ρ(φ, φ)/2π` yields `ε̄^s`, and `Tr[σ^{⊗s} ε̄^s]` is the `s`-th limiting
//! moment of `L/(kn)`.

pub mod dilation;
pub mod stochastic;

use std::f64::consts::TAU;

use crate::algebra::matrix::C64;
use crate::algebra::{pauli, tensor_power, ComplexMatrix, DensityMatrix};
use crate::distribution::{PhaseDensity, WalkerInit};
use crate::error::{QorwError, Result};
use crate::tolerance::LIMITS;
use crate::walk::{shared_reshuffle, WalkModel};

pub use dilation::{build_delta_h, build_h, build_w, dilated_eps_phi};
pub use stochastic::{convergence_table, stochastic_estimate, ConvergenceRow, StochasticEstimate};

/// A U-quantized walk prepared for the tensor-power moment formulas.
#[derive(Debug, Clone)]
pub struct SimulatorSpec {
    k: usize,
    s: usize,
    reshuffle: ComplexMatrix,
    coin: DensityMatrix,
    density: PhaseDensity,
}

impl SimulatorSpec {
    pub fn new(model: &WalkModel, s: usize, init: &WalkerInit) -> Result<Self> {
        let reshuffle = shared_reshuffle(model)
            .ok_or_else(|| {
                QorwError::Usage(format!(
                    "model `{}` is not U-quantized; the simulation needs one shared unitary",
                    model.label()
                ))
            })?
            .clone();
        if s == 0 {
            return Err(QorwError::Parameter("moment order must be ≥ 1".into()));
        }
        let dim = 4u128.checked_pow(s as u32);
        if dim.is_none_or(|d| d > LIMITS.max_dim as u128) {
            return Err(QorwError::Resource(format!(
                "4^{s} exceeds the dimension cap {}",
                LIMITS.max_dim
            )));
        }
        Ok(Self {
            k: model.k(),
            s,
            reshuffle,
            coin: model.entering_coin(),
            density: init.phase_density(),
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn reshuffle(&self) -> &ComplexMatrix {
        &self.reshuffle
    }

    pub fn coin(&self) -> &DensityMatrix {
        &self.coin
    }

    pub fn density(&self) -> &PhaseDensity {
        &self.density
    }

    /// The same walk at another moment order.
    pub fn with_order(&self, s: usize) -> Result<Self> {
        if s == 0 || 4u128.pow(s as u32) > LIMITS.max_dim as u128 {
            return Err(QorwError::Resource(format!("moment order {s} is outside the cap")));
        }
        Ok(Self { s, ..self.clone() })
    }

    /// `V(φ) = V_cl(φ) U`
    pub fn v(&self, phi: f64) -> ComplexMatrix {
        let e = C64::from_polar(1.0, phi);
        &ComplexMatrix::diagonal(&[e, e.conj()]) * &self.reshuffle
    }

    /// `V(φ)^j` for `j = 0 .. k`.
    pub fn v_powers(&self, phi: f64) -> Vec<ComplexMatrix> {
        let v = self.v(phi);
        let mut out = Vec::with_capacity(self.k);
        out.push(ComplexMatrix::identity(2));
        for j in 1..self.k {
            out.push(&out[j - 1] * &v);
        }
        out
    }

    /// `σ = U†σ₃U`
    pub fn sigma(&self) -> ComplexMatrix {
        pauli::sigma_3().conjugate_by(&self.reshuffle.adjoint())
    }

    /// Exact quadrature size for integrands of `ε_φ(ρ_c)^{⊗s}` weighted by `ρ(φ, φ)`.
    fn quadrature_nodes(&self) -> usize {
        let degree = 2 * self.s * (self.k - 1) + self.density.degree();
        (2 * degree + 2).next_power_of_two()
    }
}

/// `(1/k) Σ_{j<k} V(φ)^j ρ V(φ)^{†j}`
pub fn eps_phi(spec: &SimulatorSpec, rho: &DensityMatrix, phi: f64) -> DensityMatrix {
    let mut out = ComplexMatrix::zeros(2);
    for vj in spec.v_powers(phi) {
        out.add_scaled(&rho.matrix().conjugate_by(&vj), C64::new(1.0 / spec.k as f64, 0.0));
    }
    DensityMatrix::new_unchecked(out)
}

/// `h(φ) = k Tr[ε_φ(ρ_c) σ]`
pub fn acf_via_sim(spec: &SimulatorSpec, phi: f64) -> f64 {
    let e = eps_phi(spec, &spec.coin, phi);
    (e.matrix() * &spec.sigma()).trace().re * spec.k as f64
}

/// `ε̄^s = (1/2π) ∫ ρ(φ, φ) ε_φ(ρ_c)^{⊗s} dφ`, by exact quadrature.
pub fn eps_bar_s(spec: &SimulatorSpec) -> Result<DensityMatrix> {
    let nodes = spec.quadrature_nodes();
    let mut out = ComplexMatrix::zeros(1 << spec.s);
    for a in 0..nodes {
        let phi = TAU * a as f64 / nodes as f64;
        let w = spec.density.eval(phi) / nodes as f64;
        let e = eps_phi(spec, &spec.coin, phi);
        out.add_scaled(&tensor_power(e.matrix(), spec.s)?, C64::new(w, 0.0));
    }
    Ok(DensityMatrix::new_unchecked(out))
}

/// `Tr[σ^{⊗s} ε̄^s]`
pub fn simulated_moment(spec: &SimulatorSpec) -> Result<f64> {
    let sigma = tensor_power(&spec.sigma(), spec.s)?;
    let value = (&sigma * eps_bar_s(spec)?.matrix()).trace();
    Ok(value.re)
}

/// `ε̄^s` with the averages taken in the other order: each string
/// `(ν_1, …, ν_s)` of powers is averaged over `φ` first, then the strings
/// are averaged uniformly.
pub fn eps_bar_s_nu_outer(spec: &SimulatorSpec) -> Result<DensityMatrix> {
    let nodes = spec.quadrature_nodes();
    let dim = 1usize << spec.s;
    let strings = spec.k.pow(spec.s as u32);
    let mut out = ComplexMatrix::zeros(dim);
    for code in 0..strings {
        let nu: Vec<usize> = (0..spec.s).map(|i| code / spec.k.pow(i as u32) % spec.k).collect();
        let mut inner = ComplexMatrix::zeros(dim);
        for a in 0..nodes {
            let phi = TAU * a as f64 / nodes as f64;
            let w = spec.density.eval(phi) / nodes as f64;
            let powers = spec.v_powers(phi);
            let slot = |j: usize| spec.coin.matrix().conjugate_by(&powers[j]);
            let mut prod = slot(nu[0]);
            for &j in &nu[1..] {
                prod = prod.kron(&slot(j));
            }
            inner.add_scaled(&prod, C64::new(w, 0.0));
        }
        out.add_scaled(&inner, C64::new(1.0 / strings as f64, 0.0));
    }
    Ok(DensityMatrix::new_unchecked(out))
}
