//! Numerical tolerances and size caps shared by every module.

/// Tolerances used by validation and consistency checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Max entry deviation from Hermiticity for a density matrix.
    pub hermitian: f64,
    /// Max deviation of a density matrix trace from 1.
    pub trace: f64,
    /// Smallest admissible eigenvalue is `-psd`.
    pub psd: f64,
    /// Max entry deviation of `Σ K†K` from the identity.
    pub completeness: f64,
    /// Max entry deviation of `U U†` from the identity.
    pub unitary: f64,
    /// Largest imaginary residue tolerated in the acf before the model is rejected.
    pub acf_imaginary: f64,
    /// Agreement required between the two finite-n moment routes.
    pub moment_agreement: f64,
    /// Residual above which a CLI run is declared numerically broken.
    pub run_residual: f64,
}

impl Tolerances {
    pub const DEFAULT: Tolerances = Tolerances {
        hermitian: 1e-12,
        trace: 1e-12,
        psd: 1e-10,
        completeness: 1e-12,
        unitary: 1e-12,
        acf_imaginary: 1e-9,
        moment_agreement: 1e-9,
        run_residual: 1e-9,
    };
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::DEFAULT
    }
}

/// The process-wide tolerance record.
pub const TOL: Tolerances = Tolerances::DEFAULT;

/// Size caps for dense linear algebra and the lattice oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest dense matrix dimension any tensor construction may produce.
    pub max_dim: usize,
    /// Largest half-width of the truncated lattice used by the position oracle.
    pub max_half_width: usize,
    /// Taylor terms allowed per scaled exponential before giving up.
    pub expm_max_terms: usize,
}

impl Limits {
    pub const DEFAULT: Limits = Limits {
        max_dim: 4096,
        max_half_width: 512,
        expm_max_terms: 64,
    };
}

impl Default for Limits {
    fn default() -> Self {
        Self::DEFAULT
    }
}

pub const LIMITS: Limits = Limits::DEFAULT;
