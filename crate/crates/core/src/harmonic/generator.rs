//! Closed-form generator of the averaged dynamics for harmonic Hamiltonians.
//!
//! i dρ̄/dt = [H_eff, ρ̄] + Σ_{nm} (1/ω⁻_nm) ( {L_m†L_n, ρ̄} − 2 L_n ρ̄ L_m†
//!                                          + {L_n L_m†, ρ̄} − 2 L_m† ρ̄ L_n )
//! with L_m = h_m e^{−iω_m t} and
//! H_eff = H_0 + Σ_{nm} (1/ω⁺_nm) [h_m†, h_n] e^{i(ω_m − ω_n)t}.
//!
//! The closed form assumes every ω_n lies above the averaging cutoff and every
//! beat ω_n − ω_m below it.

use num_complex::Complex64 as C64;

use super::hamiltonian::{inv_omega_pm, HarmonicHamiltonian};
use crate::error::{Error, Result};
use crate::linalg::{
    anticommutator, anticommutator_superop, commutator, commutator_superop, sandwich_superop,
    DensityMatrix, Operator, Superoperator,
};

#[derive(Clone, Debug)]
struct PairTerm {
    /// ω_m − ω_n
    beat: f64,
    inv_plus: f64,
    inv_minus: f64,
    /// [h_m†, h_n]
    comm: Operator,
    /// {h_m†, h_n}
    anti: Operator,
    h_n: Operator,
    h_m_dag: Operator,
    /// static part of the dissipator: {anti, ·} − 2 h_n · h_m† − 2 h_m† · h_n
    dissipator: Option<Superoperator>,
}

/// Effective Hamiltonian and decoherence map of a [`HarmonicHamiltonian`].
#[derive(Clone, Debug)]
pub struct EffectiveGenerator {
    source: HarmonicHamiltonian,
    pairs: Vec<PairTerm>,
}

impl EffectiveGenerator {
    pub fn new(source: HarmonicHamiltonian) -> Self {
        let terms = source.terms();
        let mut pairs = Vec::with_capacity(terms.len() * terms.len());
        for tn in terms {
            for tm in terms {
                let (inv_plus, inv_minus) = inv_omega_pm(tn.omega, tm.omega);
                let h_m_dag = tm.h.adjoint();
                let comm = commutator(&h_m_dag, &tn.h).expect("dimensions checked");
                let anti = anticommutator(&h_m_dag, &tn.h).expect("dimensions checked");
                let dissipator = (inv_minus != 0.0).then(|| {
                    let two = C64::new(2.0, 0.0);
                    &(&anticommutator_superop(&anti)
                        - &sandwich_superop(&tn.h, &h_m_dag).unwrap().scale(two))
                        - &sandwich_superop(&h_m_dag, &tn.h).unwrap().scale(two)
                });
                pairs.push(PairTerm {
                    beat: tm.omega - tn.omega,
                    inv_plus,
                    inv_minus,
                    comm,
                    anti,
                    h_n: tn.h.clone(),
                    h_m_dag,
                    dissipator,
                });
            }
        }
        Self { source, pairs }
    }

    pub fn source(&self) -> &HarmonicHamiltonian {
        &self.source
    }

    pub fn dim(&self) -> usize {
        self.source.dim()
    }

    /// True when no pair carries a nonzero 1/ω⁻, i.e. the evolution is unitary.
    pub fn is_unitary(&self) -> bool {
        self.pairs.iter().all(|p| p.inv_minus == 0.0)
    }

    /// L_m(t) = h_m e^{−iω_m t}.
    pub fn jump_operator(&self, m: usize, t: f64) -> Result<Operator> {
        let len = self.source.terms().len();
        let term = self
            .source
            .terms()
            .get(m)
            .ok_or(Error::IndexOutOfRange { index: m, len })?;
        Ok(term.h.scale(C64::from_polar(1.0, -term.omega * t)))
    }

    pub fn effective_hamiltonian(&self, t: f64) -> Operator {
        let mut m = self.source.h0().matrix().clone();
        for p in &self.pairs {
            m += p.comm.matrix() * (C64::from_polar(1.0, p.beat * t) * p.inv_plus);
        }
        Operator::from_matrix_unchecked(m)
    }

    /// Decoherence contribution to dρ̄/dt, i.e. −i times the 1/ω⁻ sum.
    /// Trace-annihilating and Hermiticity-preserving; exactly zero when all
    /// drive frequencies coincide.
    pub fn decoherence_superop(&self, t: f64) -> Superoperator {
        let mut acc = Superoperator::zeros(self.dim());
        for p in &self.pairs {
            if let Some(d) = &p.dissipator {
                let w = C64::new(0.0, -p.inv_minus) * C64::from_polar(1.0, p.beat * t);
                acc = &acc + &d.scale(w);
            }
        }
        acc
    }

    /// Decoherence contribution applied directly to an operator.
    pub fn apply_decoherence(&self, rho: &Operator, t: f64) -> Operator {
        let r = rho.matrix();
        let mut acc = nalgebra::DMatrix::<C64>::zeros(r.nrows(), r.ncols());
        for p in self.pairs.iter().filter(|p| p.inv_minus != 0.0) {
            let a = p.anti.matrix();
            let hn = p.h_n.matrix();
            let hmd = p.h_m_dag.matrix();
            let block = a * r + r * a - (hn * r * hmd) * C64::new(2.0, 0.0)
                - (hmd * r * hn) * C64::new(2.0, 0.0);
            acc += block * (C64::new(0.0, -p.inv_minus) * C64::from_polar(1.0, p.beat * t));
        }
        Operator::from_matrix_unchecked(acc)
    }

    /// dρ̄/dt for an arbitrary operator (the map is linear).
    pub fn apply(&self, rho: &Operator, t: f64) -> Operator {
        let h = self.effective_hamiltonian(t);
        let comm = (&(&h * rho) - &(rho * &h)).scale(C64::new(0.0, -1.0));
        &comm + &self.apply_decoherence(rho, t)
    }

    /// dρ̄/dt = −i[H_eff, ρ̄] + D(t)[ρ̄].
    pub fn master_rhs(&self, rho: &DensityMatrix, t: f64) -> Result<Operator> {
        if rho.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: rho.dim(),
            });
        }
        Ok(self.apply(rho.as_operator(), t))
    }

    /// The full generator dρ̄/dt = G(t)[ρ̄] as a superoperator.
    pub fn superoperator(&self, t: f64) -> Superoperator {
        let h = commutator_superop(&self.effective_hamiltonian(t)).scale(C64::new(0.0, -1.0));
        &h + &self.decoherence_superop(t)
    }
}
