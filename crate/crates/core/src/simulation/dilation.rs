//! Unitary dilation of `ε_φ` for `k = 2` on ancilla ⊗ coin (ancilla first),
//! with the ancilla prepared in `|+⟩⟨+|`.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};

use crate::algebra::matrix::C64;
use crate::algebra::{partial_trace, pauli, tensor_power, ComplexMatrix, DensityMatrix};
use crate::error::{QorwError, Result};
use crate::tolerance::LIMITS;

use super::SimulatorSpec;

fn require_two(spec: &SimulatorSpec) -> Result<()> {
    if spec.k() != 2 {
        return Err(QorwError::Usage(format!(
            "the dilation is defined for k = 2, model has k = {}",
            spec.k()
        )));
    }
    Ok(())
}

fn blocks(upper_right: &ComplexMatrix, lower_left: &ComplexMatrix, diag: C64) -> ComplexMatrix {
    let mut w = ComplexMatrix::zeros(4);
    for i in 0..2 {
        w[(i, i)] = diag;
        w[(2 + i, 2 + i)] = diag;
        for j in 0..2 {
            w[(i, 2 + j)] = upper_right[(i, j)];
            w[(2 + i, j)] = lower_left[(i, j)];
        }
    }
    w
}

/// `W(φ) = (1/√2) [[1, V†], [−V, 1]]`
pub fn build_w(spec: &SimulatorSpec, phi: f64) -> Result<ComplexMatrix> {
    require_two(spec)?;
    let v = spec.v(phi);
    let r = C64::new(FRAC_1_SQRT_2, 0.0);
    Ok(blocks(&v.adjoint().scale(r), &v.scale(-r), r))
}

/// `H(φ) = (π/4) [σ₊ ⊗ V† − σ₋ ⊗ V]`, anti-Hermitian with `exp H = W`.
pub fn build_h(spec: &SimulatorSpec, phi: f64) -> Result<ComplexMatrix> {
    require_two(spec)?;
    let v = spec.v(phi);
    let up = pauli::sigma_plus().kron(&v.adjoint());
    let down = pauli::sigma_minus().kron(&v);
    Ok((&up - &down).scale_real(FRAC_PI_4))
}

/// `ΔH = Σ_j 1 ⊗ … ⊗ H ⊗ … ⊗ 1` over `s` ancilla ⊗ coin slots.
pub fn build_delta_h(spec: &SimulatorSpec, phi: f64, s: usize) -> Result<ComplexMatrix> {
    if s == 0 || 4u128.pow(s.min(64) as u32) > LIMITS.max_dim as u128 {
        return Err(QorwError::Resource(format!("4^{s} exceeds the dimension cap {}", LIMITS.max_dim)));
    }
    let h = build_h(spec, phi)?;
    let mut total = ComplexMatrix::zeros(4usize.pow(s as u32));
    for j in 0..s {
        let left = ComplexMatrix::identity(4usize.pow(j as u32));
        let right = ComplexMatrix::identity(4usize.pow((s - 1 - j) as u32));
        total = &total + &left.kron(&h).kron(&right);
    }
    Ok(total)
}

/// `Tr_{a_1…a_s} W^{⊗s} (⊗_i |+⟩⟨+| ⊗ ρ_i) W^{†⊗s}` for coin states `ρ_i`,
/// tracing every ancilla slot.
pub fn dilated_eps_phi(spec: &SimulatorSpec, coins: &[DensityMatrix], phi: f64) -> Result<ComplexMatrix> {
    let s = coins.len();
    if s == 0 {
        return Err(QorwError::Parameter("need at least one coin slot".into()));
    }
    let w = tensor_power(&build_w(spec, phi)?, s)?;
    let ancilla = pauli::proj_plus();
    let mut input = ancilla.kron(coins[0].matrix());
    for c in &coins[1..] {
        input = input.kron(&ancilla.kron(c.matrix()));
    }
    let out = input.conjugate_by(&w);
    let dims = vec![2; 2 * s];
    let traced: Vec<usize> = (0..s).map(|i| 2 * i).collect();
    partial_trace(&out, &dims, &traced)
}
