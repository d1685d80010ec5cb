use nalgebra::SVector;

use crate::error::{Error, Result};
use crate::linalg::Operator;

pub const MAX_STEPS: usize = 10_000_000;

/// Uniform grid t0, t0 + dt, …, t_max. Every `stride`-th point is recorded.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TimeGrid {
    t0: f64,
    t_max: f64,
    dt: f64,
    stride: usize,
}

impl TimeGrid {
    pub fn new(t0: f64, t_max: f64, dt: f64) -> Result<Self> {
        if !(t0.is_finite() && t_max.is_finite() && dt.is_finite()) {
            return Err(Error::InvalidParameter("time grid values must be finite".into()));
        }
        if !(dt > 0.0) {
            return Err(Error::InvalidParameter(format!("dt must be positive, got {dt}")));
        }
        if !(t_max > t0) {
            return Err(Error::InvalidParameter(format!(
                "t_max ({t_max}) must exceed t0 ({t0})"
            )));
        }
        if (t_max - t0) / dt > MAX_STEPS as f64 {
            return Err(Error::InvalidParameter(format!(
                "grid needs {:.3e} steps, more than the {MAX_STEPS} allowed",
                (t_max - t0) / dt
            )));
        }
        Ok(Self {
            t0,
            t_max,
            dt,
            stride: 1,
        })
    }

    pub fn with_stride(mut self, stride: usize) -> Result<Self> {
        if stride == 0 {
            return Err(Error::InvalidParameter("stride must be at least 1".into()));
        }
        self.stride = stride;
        Ok(self)
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }

    pub fn t_max(&self) -> f64 {
        self.t_max
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn stride(&self) -> usize {
        self.stride
    }

    /// Number of integration steps, round((t_max − t0)/dt).
    pub fn steps(&self) -> usize {
        (((self.t_max - self.t0) / self.dt).round() as usize).max(1)
    }

    pub fn time(&self, step: usize) -> f64 {
        self.t0 + step as f64 * self.dt
    }

    /// Recorded steps: 0, stride, 2·stride, … ≤ steps().
    pub fn sample_steps(&self) -> impl Iterator<Item = usize> {
        (0..=self.steps()).step_by(self.stride)
    }

    pub fn sample_count(&self) -> usize {
        self.steps() / self.stride + 1
    }

    /// Spacing between recorded samples.
    pub fn sample_dt(&self) -> f64 {
        self.dt * self.stride as f64
    }
}

/// State vector of a fixed-step integrator.
pub trait OdeState: Clone {
    /// self + h·k
    fn axpy(&self, h: f64, k: &Self) -> Self;
}

impl OdeState for Operator {
    fn axpy(&self, h: f64, k: &Self) -> Self {
        Operator::from_matrix_unchecked(self.matrix() + k.matrix() * num_complex::Complex64::new(h, 0.0))
    }
}

impl<const N: usize> OdeState for SVector<f64, N> {
    fn axpy(&self, h: f64, k: &Self) -> Self {
        self + k * h
    }
}

/// One classical fourth-order Runge–Kutta step of dy/dt = f(t, y).
pub fn rk4_step<S, F>(f: &mut F, t: f64, y: &S, dt: f64) -> S
where
    S: OdeState,
    F: FnMut(f64, &S) -> S,
{
    let half = 0.5 * dt;
    let k1 = f(t, y);
    let k2 = f(t + half, &y.axpy(half, &k1));
    let k3 = f(t + half, &y.axpy(half, &k2));
    let k4 = f(t + dt, &y.axpy(dt, &k3));
    y.axpy(dt / 6.0, &k1)
        .axpy(dt / 3.0, &k2)
        .axpy(dt / 3.0, &k3)
        .axpy(dt / 6.0, &k4)
}

/// Integrates over `grid`, returning the states at the recorded steps.
pub fn integrate<S, F>(mut f: F, y0: S, grid: &TimeGrid) -> Vec<S>
where
    S: OdeState,
    F: FnMut(f64, &S) -> S,
{
    let mut out = Vec::with_capacity(grid.sample_count());
    let mut y = y0;
    out.push(y.clone());
    for step in 0..grid.steps() {
        y = rk4_step(&mut f, grid.time(step), &y, grid.dt());
        if (step + 1) % grid.stride() == 0 {
            out.push(y.clone());
        }
    }
    out
}
