//! Walk models, the one-step Fourier kernel and the classicality criterion.

pub mod kernel;
pub mod model;

pub use kernel::{
    acf_h, acf_h_many, acf_h_unitary, classicality_test, kernel_at, kernel_grid, ClassicalityReport,
    CoinKernel, KernelSample,
};
pub use model::{completeness_residual, shared_reshuffle, Builtin, ModelDocument, WalkModel};
