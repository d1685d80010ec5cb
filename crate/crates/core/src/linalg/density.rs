use std::fmt;

use num_complex::Complex64 as C64;

use super::Operator;
use crate::error::{Error, Result};

pub const TOL_HERMITIAN: f64 = 1e-12;
pub const TOL_TRACE: f64 = 1e-12;
pub const TOL_POSITIVE: f64 = 1e-9;

/// Per-property outcome of [`validate_density`] with the measured violations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityReport {
    /// max |M − M†| entrywise
    pub hermiticity_violation: f64,
    /// |tr M − 1|
    pub trace_error: f64,
    /// smallest eigenvalue of the Hermitian part
    pub min_eigenvalue: f64,
    pub hermitian: bool,
    pub unit_trace: bool,
    pub positive: bool,
}

impl DensityReport {
    pub fn is_valid(&self) -> bool {
        self.hermitian && self.unit_trace && self.positive
    }

    /// Names of the failed properties.
    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.hermitian {
            out.push("hermiticity");
        }
        if !self.unit_trace {
            out.push("unit trace");
        }
        if !self.positive {
            out.push("positivity");
        }
        out
    }
}

impl fmt::Display for DensityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let failures = self.failures();
        if failures.is_empty() {
            write!(f, "valid")?;
        } else {
            write!(f, "failed {}", failures.join(", "))?;
        }
        write!(
            f,
            " (|M-M†| = {:.3e}, |tr-1| = {:.3e}, min eigenvalue = {:.3e})",
            self.hermiticity_violation, self.trace_error, self.min_eigenvalue
        )
    }
}

pub fn validate_density(m: &Operator, tol_herm: f64, tol_pos: f64) -> DensityReport {
    let hermiticity_violation = m.hermiticity_violation();
    let trace_error = (m.trace() - C64::new(1.0, 0.0)).norm();
    let min_eigenvalue = m.hermitian_eigenvalues()[0];
    DensityReport {
        hermiticity_violation,
        trace_error,
        min_eigenvalue,
        hermitian: hermiticity_violation <= tol_herm,
        unit_trace: trace_error <= TOL_TRACE,
        positive: min_eigenvalue >= -tol_pos,
    }
}

/// Hermitian, unit-trace, positive semidefinite operator.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix(Operator);

impl DensityMatrix {
    pub fn new(op: Operator) -> Result<Self> {
        let report = validate_density(&op, TOL_HERMITIAN, TOL_POSITIVE);
        if !report.is_valid() {
            return Err(Error::InvalidDensity(report));
        }
        Ok(Self(op))
    }

    /// Used for propagated states, whose positivity is monitored rather than enforced.
    pub(crate) fn from_operator_unchecked(op: Operator) -> Self {
        Self(op)
    }

    /// |ψ⟩⟨ψ| for a (not necessarily normalized) amplitude vector.
    pub fn pure(amplitudes: &[C64]) -> Result<Self> {
        let norm_sq: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if amplitudes.is_empty() || norm_sq == 0.0 || !norm_sq.is_finite() {
            return Err(Error::InvalidParameter(
                "pure state amplitudes must be finite and nonzero".into(),
            ));
        }
        let n = amplitudes.len();
        let mut entries = Vec::with_capacity(n * n);
        for a in amplitudes {
            for b in amplitudes {
                entries.push(a * b.conj() / norm_sq);
            }
        }
        Self::new(Operator::from_rows(n, &entries)?)
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self(Operator::identity(dim).scale_real(1.0 / dim as f64))
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn as_operator(&self) -> &Operator {
        &self.0
    }

    pub fn into_operator(self) -> Operator {
        self.0
    }

    pub fn purity(&self) -> f64 {
        purity(&self.0)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.0.hermitian_eigenvalues()[0]
    }
}

/// tr(ρ²) (real part).
pub fn purity(rho: &Operator) -> f64 {
    (rho * rho).trace().re
}
