//! Time-averaged dynamics of periodically driven quantum systems.
//!
//! `linalg` holds operators, density matrices and superoperators,
//! `averaging` the perturbative averaged expansion, `harmonic` the closed-form
//! effective generator for harmonic drives and `dynamics` the propagators.

pub mod averaging;
pub mod dynamics;
pub mod error;
pub mod harmonic;
pub mod linalg;
pub mod random;

pub use error::{Error, Result};
