use nalgebra::{Cholesky, SymmetricEigen};

use super::matrix::{ComplexMatrix, C64, ONE, ZERO};
use crate::error::{QorwError, Result};
use crate::tolerance::TOL;

/// Largest dimension for which positivity is decided by a full eigen-solve;
/// above it a shifted Cholesky probe is used.
const EIGEN_SOLVE_MAX_DIM: usize = 16;

/// A validated density matrix: Hermitian, unit trace, positive semidefinite.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix(ComplexMatrix);

impl DensityMatrix {
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        check_density(&m)?;
        Ok(Self(m))
    }

    /// Wraps a matrix the caller has already established to be a state.
    pub(crate) fn new_unchecked(m: ComplexMatrix) -> Self {
        Self(m)
    }

    /// Normalized pure state `|ψ⟩⟨ψ| / ⟨ψ|ψ⟩`.
    pub fn pure(psi: &[C64]) -> Result<Self> {
        let norm2: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
        if psi.is_empty() || norm2 <= 0.0 || !norm2.is_finite() {
            return Err(QorwError::Parameter("state vector must be nonzero".into()));
        }
        Self::new(ComplexMatrix::outer(psi).scale_real(1.0 / norm2))
    }

    /// `diag(q, 1 − q)` on the coin.
    pub fn coin_diagonal(q: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&q) {
            return Err(QorwError::Parameter(format!("coin population q = {q} outside [0, 1]")));
        }
        Ok(Self(ComplexMatrix::diagonal(&[C64::new(q, 0.0), C64::new(1.0 - q, 0.0)])))
    }

    /// `|+⟩⟨+|`
    pub fn plus() -> Self {
        Self(ComplexMatrix::diagonal(&[ONE, ZERO]))
    }

    /// `|−⟩⟨−|`
    pub fn minus() -> Self {
        Self(ComplexMatrix::diagonal(&[ZERO, ONE]))
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self(ComplexMatrix::identity(dim).scale_real(1.0 / dim as f64))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn kron(&self, other: &DensityMatrix) -> DensityMatrix {
        Self(self.0.kron(&other.0))
    }
}

impl AsRef<ComplexMatrix> for DensityMatrix {
    fn as_ref(&self) -> &ComplexMatrix {
        &self.0
    }
}

impl TryFrom<ComplexMatrix> for DensityMatrix {
    type Error = QorwError;
    fn try_from(m: ComplexMatrix) -> Result<Self> {
        Self::new(m)
    }
}

/// Checks the three density-matrix invariants at the default tolerances.
pub fn check_density(m: &ComplexMatrix) -> Result<()> {
    if !m.is_finite() {
        return Err(QorwError::Numeric("density matrix has non-finite entries".into()));
    }
    let herm = m.hermiticity_deviation();
    if herm > TOL.hermitian {
        return Err(QorwError::Parameter(format!(
            "not Hermitian (max deviation {herm:.3e})"
        )));
    }
    let tr = m.trace();
    if (tr - ONE).norm() > TOL.trace {
        return Err(QorwError::Parameter(format!("trace {tr} differs from 1")));
    }
    if !is_positive_semidefinite(m, TOL.psd) {
        return Err(QorwError::Parameter("not positive semidefinite".into()));
    }
    Ok(())
}

/// Eigenvalues of the Hermitian part of `m`, ascending.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Vec<f64> {
    let a = m.to_nalgebra();
    let h = (&a + a.adjoint()) * C64::new(0.5, 0.0);
    let mut ev: Vec<f64> = SymmetricEigen::new(h).eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// True when the smallest eigenvalue of the Hermitian part is ≥ `-tol`.
pub fn is_positive_semidefinite(m: &ComplexMatrix, tol: f64) -> bool {
    if m.dim() <= EIGEN_SOLVE_MAX_DIM {
        return hermitian_eigenvalues(m)[0] >= -tol;
    }
    // ρ + tol·1 is positive definite iff λ_min(ρ) > −tol; the real embedding
    // [[Re, −Im], [Im, Re]] has the same spectrum (doubled), and real Cholesky
    // fails on a non-positive pivot
    let n = m.dim();
    let real = nalgebra::DMatrix::<f64>::from_fn(2 * n, 2 * n, |i, j| {
        let (a, b) = (i % n, j % n);
        let z = 0.5 * (m[(a, b)] + m[(b, a)].conj());
        let v = match (i < n, j < n) {
            (true, true) | (false, false) => z.re,
            (true, false) => -z.im,
            (false, true) => z.im,
        };
        if i == j {
            v + tol
        } else {
            v
        }
    });
    Cholesky::new(real).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_standard_states() {
        for rho in [
            DensityMatrix::plus(),
            DensityMatrix::minus(),
            DensityMatrix::maximally_mixed(4),
            DensityMatrix::coin_diagonal(0.3).unwrap(),
            DensityMatrix::pure(&[ONE, C64::new(0.0, 1.0)]).unwrap(),
        ] {
            assert!(check_density(rho.matrix()).is_ok());
        }
    }

    #[test]
    fn rejects_each_broken_invariant() {
        let non_herm = ComplexMatrix::from_real_rows(&[[0.5, 0.1], [0.0, 0.5]]);
        assert!(DensityMatrix::new(non_herm).is_err());
        let bad_trace = ComplexMatrix::from_real_rows(&[[0.6, 0.0], [0.0, 0.6]]);
        assert!(DensityMatrix::new(bad_trace).is_err());
        let negative = ComplexMatrix::from_real_rows(&[[1.2, 0.0], [0.0, -0.2]]);
        assert!(DensityMatrix::new(negative).is_err());
        assert!(DensityMatrix::coin_diagonal(1.5).is_err());
    }

    #[test]
    fn cholesky_probe_agrees_with_eigen_solve() {
        // 32-dimensional: diag with one slightly negative entry
        let n = 32;
        let mut d = vec![C64::new(1.0 / n as f64, 0.0); n];
        d[5] = C64::new(-1e-9, 0.0);
        let m = ComplexMatrix::diagonal(&d);
        assert!(!is_positive_semidefinite(&m, 1e-10));
        assert!(is_positive_semidefinite(&m, 1e-8));
        let mixed = DensityMatrix::maximally_mixed(n);
        assert!(is_positive_semidefinite(mixed.matrix(), 1e-10));
    }
}
