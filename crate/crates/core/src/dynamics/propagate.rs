use num_complex::Complex64 as C64;

use super::integrator::{rk4_step, TimeGrid};
use crate::averaging::FourierOperator;
use crate::error::{Error, Result};
use crate::harmonic::EffectiveGenerator;
use crate::linalg::{DensityMatrix, Operator, TOL_POSITIVE, TOL_TRACE};

/// H(t) must stay Hermitian within this bound along the exact propagation.
pub const TOL_HAMILTONIAN_HERMITIAN: f64 = 1e-10;

#[derive(Clone, Debug, Default, PartialEq)]
pub struct PropagationDiagnostics {
    pub steps: usize,
    /// Steps after which the trace was pulled back to 1.
    pub renormalizations: usize,
    /// Largest |tr ρ − 1| seen before renormalizing.
    pub max_trace_drift: f64,
    /// Steps whose smallest eigenvalue fell below −1e−9 (effective run only).
    pub positivity_warnings: usize,
    /// Smallest eigenvalue over every checked state.
    pub min_eigenvalue: f64,
}

/// Sampled density-matrix trajectory.
#[derive(Clone, Debug)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<Operator>,
    pub min_eigenvalues: Vec<f64>,
    pub diagnostics: PropagationDiagnostics,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.states.first().map_or(0, |s| s.dim())
    }

    /// Time series of one matrix element.
    pub fn element(&self, i: usize, j: usize) -> Vec<C64> {
        self.states.iter().map(|s| s.get(i, j)).collect()
    }

    pub fn purities(&self) -> Vec<f64> {
        self.states.iter().map(crate::linalg::purity).collect()
    }
}

fn check_start(rho0: &DensityMatrix, dim: usize) -> Result<()> {
    if rho0.dim() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: rho0.dim(),
        });
    }
    Ok(())
}

fn min_eig(rho: &Operator) -> f64 {
    rho.hermitian_eigenvalues().first().copied().unwrap_or(0.0)
}

/// Shared driver. `check` runs on every step start and may veto the step.
fn run<F, C>(mut rhs: F, mut check: C, rho0: &DensityMatrix, grid: &TimeGrid, every_step_positivity: bool) -> Result<Trajectory>
where
    F: FnMut(f64, &Operator) -> Operator,
    C: FnMut(f64) -> Result<()>,
{
    let mut diag = PropagationDiagnostics {
        min_eigenvalue: f64::INFINITY,
        ..Default::default()
    };
    let n = grid.sample_count();
    let mut times = Vec::with_capacity(n);
    let mut states = Vec::with_capacity(n);
    let mut mins = Vec::with_capacity(n);

    let mut rho = rho0.as_operator().clone();
    let first = min_eig(&rho);
    diag.min_eigenvalue = first;
    times.push(grid.t0());
    states.push(rho.clone());
    mins.push(first);

    for step in 0..grid.steps() {
        let t = grid.time(step);
        check(t)?;
        rho = rk4_step(&mut rhs, t, &rho, grid.dt());
        if rho.matrix().iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let tr = rho.trace();
        let drift = (tr - C64::new(1.0, 0.0)).norm();
        diag.max_trace_drift = diag.max_trace_drift.max(drift);
        if drift > TOL_TRACE {
            log::debug!("trace drift {drift:.3e} at t = {t}, renormalizing");
            rho = rho.scale(C64::new(1.0 / tr.re, 0.0));
            diag.renormalizations += 1;
        }
        let recorded = (step + 1) % grid.stride() == 0;
        if every_step_positivity || recorded {
            let m = min_eig(&rho);
            diag.min_eigenvalue = diag.min_eigenvalue.min(m);
            if every_step_positivity && m < -TOL_POSITIVE {
                if diag.positivity_warnings == 0 {
                    log::warn!("effective state lost positivity at t = {}: min eigenvalue {m:.3e}", t + grid.dt());
                }
                diag.positivity_warnings += 1;
            }
            if recorded {
                times.push(grid.time(step + 1));
                states.push(rho.clone());
                mins.push(m);
            }
        }
    }
    diag.steps = grid.steps();
    if diag.renormalizations > 0 {
        log::info!(
            "trace renormalized on {} of {} steps (max drift {:.3e})",
            diag.renormalizations,
            diag.steps,
            diag.max_trace_drift
        );
    }
    if diag.positivity_warnings > 0 {
        log::warn!("{} steps with min eigenvalue below −{TOL_POSITIVE:e}", diag.positivity_warnings);
    }
    Ok(Trajectory {
        times,
        states,
        min_eigenvalues: mins,
        diagnostics: diag,
    })
}

/// RK4 integration of dρ/dt = −i[H(t), ρ].
///
/// H(t) is checked for Hermiticity at every step start and the trace is
/// restored whenever it drifts by more than 1e−12.
pub fn propagate_exact(h: &FourierOperator, rho0: &DensityMatrix, grid: &TimeGrid) -> Result<Trajectory> {
    check_start(rho0, h.dim())?;
    let minus_i = C64::new(0.0, -1.0);
    let rhs = |t: f64, rho: &Operator| {
        let ht = h.evaluate(t);
        let m = ht.matrix() * rho.matrix() - rho.matrix() * ht.matrix();
        Operator::from_matrix_unchecked(m * minus_i)
    };
    let check = |t: f64| {
        let violation = h.evaluate(t).hermiticity_violation();
        if violation > TOL_HAMILTONIAN_HERMITIAN {
            return Err(Error::NotHermitian { time: t, violation });
        }
        Ok(())
    };
    run(rhs, check, rho0, grid, false)
}

/// RK4 integration of the effective second-order master equation.
///
/// Positivity is monitored at every step; violations are counted and logged,
/// the run continues.
pub fn propagate_effective(gen: &EffectiveGenerator, rho0: &DensityMatrix, grid: &TimeGrid) -> Result<Trajectory> {
    check_start(rho0, gen.dim())?;
    run(|t, rho| gen.apply(rho, t), |_| Ok(()), rho0, grid, true)
}
