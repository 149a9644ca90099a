//! Coin-space linear algebra: dense matrices, density matrices, Kraus channels.

pub mod channel;
pub mod density;
pub mod matrix;

pub use channel::{validate_cptp, ChannelSpec, CptpReport, KrausChannel};
pub use density::DensityMatrix;
pub use matrix::{
    matrix_exponential, partial_trace, partial_trace_first, pauli, rotation_unitary, tensor_power,
    ComplexMatrix, Mat2, C64,
};
