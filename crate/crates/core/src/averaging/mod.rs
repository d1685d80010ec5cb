//! Ideal low-pass averaging of operator-valued Fourier sums, Dyson terms, and
//! the E/F/L superoperator series of the averaged density matrix.

mod dyson;
mod filter;
mod fourier;
mod series;
mod validity;

pub use dyson::{dyson_terms, MAX_ORDER};
pub use filter::{windowed_average, AveragingFilter};
pub use fourier::{
    sandwich_series, Coefficient, FourierOperator, FourierSeries, FourierSuperoperator,
    FourierTerm, FREQ_MERGE_TOL,
};
pub use series::{
    build_e, build_f, build_l, decoherence_d2, operator_a, AveragedExpansion, SuperoperatorSeries,
};
pub use validity::validity_ratio;

/// Ideal low-pass average of an operator series.
pub fn lowpass_average(f: &FourierOperator, filter: &AveragingFilter) -> FourierOperator {
    f.lowpass(filter)
}
