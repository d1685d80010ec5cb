//! Harmonic Hamiltonians and their closed-form averaged generator.

mod generator;
mod hamiltonian;

pub use generator::EffectiveGenerator;
pub use hamiltonian::{inv_omega_pm, HarmonicHamiltonian, HarmonicTerm};

use crate::error::Result;
use crate::linalg::Operator;

/// Two-level atom driven off resonance: h_1 = (Ω/2)|2⟩⟨1| at detuning Δ.
pub fn ac_stark_hamiltonian(rabi: f64, detuning: f64) -> Result<HarmonicHamiltonian> {
    HarmonicHamiltonian::new(
        Operator::zeros(2),
        vec![HarmonicTerm {
            h: Operator::ket_bra(2, 1, 0).scale_real(0.5 * rabi),
            omega: detuning,
        }],
    )
}

/// Λ system: h_1 = (Ω1/2)|3⟩⟨1| at ω1 and h_2 = (Ω2/2)|3⟩⟨2| at ω2.
pub fn raman_hamiltonian(
    rabi_1: f64,
    rabi_2: f64,
    omega_1: f64,
    omega_2: f64,
) -> Result<HarmonicHamiltonian> {
    HarmonicHamiltonian::new(
        Operator::zeros(3),
        vec![
            HarmonicTerm {
                h: Operator::ket_bra(3, 2, 0).scale_real(0.5 * rabi_1),
                omega: omega_1,
            },
            HarmonicTerm {
                h: Operator::ket_bra(3, 2, 1).scale_real(0.5 * rabi_2),
                omega: omega_2,
            },
        ],
    )
}
