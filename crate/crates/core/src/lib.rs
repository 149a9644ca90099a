//! Quantum optical random walks on the integer line.
//!
//! A walk step couples a two-level coin to the walker through `k` rounds of a
//! coin channel followed by a conditional shift, then discards the coin. In
//! the walker's Fourier basis a step multiplies the density kernel by a scalar
//! function `A(φ, φ′)`, which makes exact finite-n statistics a matter of
//! trigonometric-polynomial quadrature.
//!
//! * [`algebra`]: dense complex matrices, density matrices, Kraus channels.
//! * [`walk`]: walk models, the kernel `A`, the asymptotic characteristic
//!   function `h` and the classicality criterion.
//! * [`distribution`]: occupation probabilities, moments, limiting densities.
//! * [`oracle`]: brute-force joint coin ⊗ walker evolution on a finite lattice.
//! * [`simulation`]: tensor-power moment formulas, the unitary dilation and a
//!   stochastic estimator for U-quantized walks.
//! * [`cli`], [`csv`]: command-line front end and CSV output.
//!
//! ```
//! use qorw::distribution::{probabilities, WalkerInit};
//! use qorw::walk::Builtin;
//!
//! let model = Builtin::ExampleII.build().unwrap();
//! let p = probabilities(&model, &WalkerInit::origin(), 1).unwrap();
//! assert!((p.prob(0) - 0.5).abs() < 1e-14);
//! ```

pub mod algebra;
pub mod cli;
pub mod csv;
pub mod distribution;
pub mod error;
pub mod oracle;
pub mod sampling;
pub mod simulation;
pub mod tolerance;
pub mod walk;

pub use error::{QorwError, Result};
