//! Dense operator and superoperator algebra.

mod density;
mod gellmann;
mod operator;
mod superop;

pub use density::{
    purity, validate_density, DensityMatrix, DensityReport, TOL_HERMITIAN, TOL_POSITIVE, TOL_TRACE,
};
pub use gellmann::{
    bloch_compose, bloch_decompose, gellmann_basis, pauli_decompose, GellMannBasis, GELLMANN_LABELS,
};
pub use operator::{anticommutator, commutator, Operator};
pub use superop::{
    anticommutator_superop, commutator_superop, sandwich_superop, unvectorize, vectorize,
    Superoperator,
};
pub(crate) use superop::sandwich_unchecked;
