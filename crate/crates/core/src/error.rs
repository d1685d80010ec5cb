use thiserror::Error;

use crate::linalg::DensityReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix has non-finite entries")]
    NonFinite,

    #[error("empty operator (dimension 0)")]
    EmptyOperator,

    #[error("not a valid density matrix: {0}")]
    InvalidDensity(DensityReport),

    #[error("operator is not Hermitian at t = {time} (violation {violation:.3e})")]
    NotHermitian { time: f64, violation: f64 },

    #[error("expansion order {0} is not supported (maximum 3)")]
    UnsupportedOrder(usize),

    #[error("Hamiltonian term has polynomial degree {0}; only trigonometric time dependence is accepted")]
    SecularHamiltonian(u32),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("index {index} out of range for {len} harmonic terms")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("non-oscillatory regime: |Omega|^2 = {omega_sq:.6e} <= gamma^2 = {gamma_sq:.6e}")]
    NonOscillatory { omega_sq: f64, gamma_sq: f64 },

    #[error("too few samples: {found} (need at least {required})")]
    TooFewSamples { found: usize, required: usize },
}
