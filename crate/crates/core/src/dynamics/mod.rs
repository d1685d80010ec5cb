mod integrator;
mod propagate;
mod raman;
mod spectrum;

pub use integrator::{integrate, rk4_step, OdeState, TimeGrid, MAX_STEPS};
pub use propagate::{
    propagate_effective, propagate_exact, PropagationDiagnostics, Trajectory,
    TOL_HAMILTONIAN_HERMITIAN,
};
pub use raman::{
    bloch_rhs, corotate, oscillation_frequency, purity_rate, raman_analytic, raman_coefficients, BlochState,
    RamanCoefficients, RamanModel, RamanParams, RotatingSolution,
};
pub use spectrum::{dominant_frequency, frequency_resolution, lowpass_samples, MIN_SPECTRUM_SAMPLES};
