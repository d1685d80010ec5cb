//! Reduced Bloch dynamics of the three-level Raman system.
//!
//! The first four Gell-Mann components r = (r_x, r_y, r_z, r_w) obey
//! dr/dt = A(θ) r with θ = (ω1 − ω2)t. In the co-rotating frame r̃ = M_θ r the
//! equations become ḋ = Ω × d − r̃_w γ and dr̃_w/dt = −γ·d with
//! d = (r̃_x, r̃_y, r̃_z), Ω = (β, 0, α + ω1 − ω2) and γ = (0, γ, 0).

use nalgebra::{Matrix4, Vector3, Vector4};

use crate::error::{Error, Result};
use crate::harmonic::{inv_omega_pm, raman_hamiltonian, EffectiveGenerator, HarmonicHamiltonian};
use crate::linalg::{bloch_compose, bloch_decompose, gellmann_basis, Operator};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RamanParams {
    pub rabi_1: f64,
    pub rabi_2: f64,
    pub omega_1: f64,
    pub omega_2: f64,
}

impl RamanParams {
    pub fn new(rabi_1: f64, rabi_2: f64, omega_1: f64, omega_2: f64) -> Result<Self> {
        if ![rabi_1, rabi_2, omega_1, omega_2].iter().all(|x| x.is_finite()) {
            return Err(Error::NonFinite);
        }
        if !(omega_1 > 0.0 && omega_2 > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "detunings must be positive, got ω1 = {omega_1}, ω2 = {omega_2}"
            )));
        }
        Ok(Self {
            rabi_1,
            rabi_2,
            omega_1,
            omega_2,
        })
    }

    pub fn hamiltonian(&self) -> Result<HarmonicHamiltonian> {
        raman_hamiltonian(self.rabi_1, self.rabi_2, self.omega_1, self.omega_2)
    }

    pub fn coefficients(&self) -> RamanCoefficients {
        raman_coefficients(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RamanCoefficients {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    /// dθ/dt = ω1 − ω2
    pub theta_rate: f64,
}

impl RamanCoefficients {
    /// Ω = (β, 0, α + ω1 − ω2)
    pub fn omega_vector(&self) -> Vector3<f64> {
        Vector3::new(self.beta, 0.0, self.alpha + self.theta_rate)
    }

    /// A(θ), acting on (r_x, r_y, r_z, r_w).
    pub fn a_matrix(&self, theta: f64) -> Matrix4<f64> {
        let (s, c) = theta.sin_cos();
        let (a, b, g) = (self.alpha, self.beta, self.gamma);
        Matrix4::new(
            0.0, -a, -b * s, -g * s,
            a, 0.0, -b * c, -g * c,
            b * s, b * c, 0.0, 0.0,
            -g * s, -g * c, 0.0, 0.0,
        )
    }
}

pub fn raman_coefficients(p: &RamanParams) -> RamanCoefficients {
    let (inv_plus, inv_minus) = inv_omega_pm(p.omega_1, p.omega_2);
    let product = p.rabi_1 * p.rabi_2;
    RamanCoefficients {
        alpha: 0.25 * (p.rabi_1 * p.rabi_1 / p.omega_1 - p.rabi_2 * p.rabi_2 / p.omega_2),
        beta: 0.5 * product * inv_plus,
        gamma: 3f64.sqrt() * 0.5 * product * inv_minus,
        theta_rate: p.omega_1 - p.omega_2,
    }
}

/// (r_x, r_y, r_z, r_w) plus the optional coherence block (r_xa, r_ya, r_xb, r_yb).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BlochState {
    pub r: [f64; 4],
    pub coherence: Option<[f64; 4]>,
}

impl BlochState {
    pub fn new(r: [f64; 4]) -> Self {
        Self { r, coherence: None }
    }

    pub fn with_coherence(r: [f64; 4], coherence: [f64; 4]) -> Self {
        Self {
            r,
            coherence: Some(coherence),
        }
    }

    pub fn from_density(rho: &Operator) -> Result<Self> {
        let c = bloch_decompose(rho)?;
        Ok(Self::with_coherence(
            [c[0], c[1], c[2], c[3]],
            [c[4], c[5], c[6], c[7]],
        ))
    }

    /// I/3 + Σ r_k G_k, with a missing coherence block taken as zero.
    pub fn to_density(&self) -> Operator {
        let c = self.coherence.unwrap_or([0.0; 4]);
        let r = self.r;
        bloch_compose(&[r[0], r[1], r[2], r[3], c[0], c[1], c[2], c[3]])
    }

    pub fn main(&self) -> Vector4<f64> {
        Vector4::from(self.r)
    }

    pub fn is_finite(&self) -> bool {
        self.r.iter().chain(self.coherence.iter().flatten()).all(|x| x.is_finite())
    }

    /// Max-norm distance over the main block.
    pub fn max_diff(&self, other: &BlochState) -> f64 {
        (self.main() - other.main()).amax()
    }
}

/// Raman parameters with their derived coefficients and generator cached.
#[derive(Clone, Debug)]
pub struct RamanModel {
    params: RamanParams,
    coeffs: RamanCoefficients,
    generator: EffectiveGenerator,
}

impl RamanModel {
    pub fn new(params: RamanParams) -> Result<Self> {
        let generator = EffectiveGenerator::new(params.hamiltonian()?);
        Ok(Self {
            params,
            coeffs: raman_coefficients(&params),
            generator,
        })
    }

    pub fn params(&self) -> &RamanParams {
        &self.params
    }

    pub fn coefficients(&self) -> &RamanCoefficients {
        &self.coeffs
    }

    pub fn generator(&self) -> &EffectiveGenerator {
        &self.generator
    }

    pub fn theta(&self, t: f64) -> f64 {
        self.coeffs.theta_rate * t
    }

    /// The 4×4 coherence-block map g(t), projected from the master equation.
    pub fn coherence_matrix(&self, t: f64) -> Matrix4<f64> {
        let basis = gellmann_basis();
        let gens = &basis.generators[4..];
        Matrix4::from_fn(|j, k| (&gens[j] * &self.generator.apply(&gens[k], t)).trace().re / 2.0)
    }

    pub fn bloch_rhs(&self, r: &BlochState, t: f64) -> BlochState {
        let dr = self.coeffs.a_matrix(self.theta(t)) * r.main();
        let coherence = r.coherence.map(|c| {
            let dc = self.coherence_matrix(t) * Vector4::from(c);
            [dc[0], dc[1], dc[2], dc[3]]
        });
        BlochState {
            r: [dr[0], dr[1], dr[2], dr[3]],
            coherence,
        }
    }
}

/// dr/dt at time t. Builds the generator on each call when the coherence
/// block is present; use [`RamanModel`] in loops.
pub fn bloch_rhs(p: &RamanParams, r: &BlochState, t: f64) -> Result<BlochState> {
    if r.coherence.is_some() {
        return Ok(RamanModel::new(*p)?.bloch_rhs(r, t));
    }
    let dr = raman_coefficients(p).a_matrix((p.omega_1 - p.omega_2) * t) * r.main();
    Ok(BlochState::new([dr[0], dr[1], dr[2], dr[3]]))
}

/// M_θ: rotates (r_x, r_y) by θ, leaves r_z, r_w and the coherence block alone.
pub fn corotate(r: &BlochState, theta: f64) -> BlochState {
    let (s, c) = theta.sin_cos();
    let [x, y, z, w] = r.r;
    BlochState {
        r: [c * x - s * y, s * x + c * y, z, w],
        coherence: r.coherence,
    }
}

/// ω = √(Ω² − γ²); the critical and overdamped cases Ω² ≤ γ² are rejected.
pub fn oscillation_frequency(omega_mag: f64, gamma: f64) -> Result<f64> {
    let omega_sq = omega_mag * omega_mag;
    let gamma_sq = gamma * gamma;
    if !(omega_sq > gamma_sq) {
        return Err(Error::NonOscillatory { omega_sq, gamma_sq });
    }
    Ok((omega_sq - gamma_sq).sqrt())
}

/// Closed-form co-rotating solution
/// d(t) = d_Ω e_Ω − (γ/Ω) c e_p + R(e_γ cos ψ + (Ω/ω) e_p sin ψ),
/// r̃_w(t) = −R(γ/ω) sin ψ + c, with ψ = ωt + phase and c = r̃_w0.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RotatingSolution {
    pub d_omega: f64,
    pub amplitude: f64,
    pub r_w0: f64,
    /// ω = √(Ω² − γ²)
    pub omega: f64,
    pub phase: f64,
    /// |Ω|
    pub omega_mag: f64,
    /// signed γ along e_γ
    pub gamma: f64,
    pub e_omega: Vector3<f64>,
    pub e_gamma: Vector3<f64>,
    pub e_p: Vector3<f64>,
}

impl RotatingSolution {
    fn frame(p: &RamanParams) -> Result<(f64, f64, f64, [Vector3<f64>; 3])> {
        let k = raman_coefficients(p);
        let omega_vec = k.omega_vector();
        let omega_mag = omega_vec.norm();
        let w = oscillation_frequency(omega_mag, k.gamma)?;
        let e_omega = omega_vec / omega_mag;
        let e_gamma = Vector3::new(0.0, 1.0, 0.0);
        let e_p = e_omega.cross(&e_gamma);
        Ok((omega_mag, k.gamma, w, [e_omega, e_gamma, e_p]))
    }

    /// Constants fitted so that the solution passes through the co-rotating
    /// state `init` at time `t_init`.
    pub fn fit(p: &RamanParams, init: &BlochState, t_init: f64) -> Result<Self> {
        let (om, g, w, [e_omega, e_gamma, e_p]) = Self::frame(p)?;
        let d = Vector3::new(init.r[0], init.r[1], init.r[2]);
        let rw = init.r[3];
        let d_p = d.dot(&e_p);
        // [−γ/ω, 1; Ω/ω, −γ/Ω]·[R sin ψ; c] = [r̃_w; d_p]
        let r_sin = (g * rw + om * d_p) / w;
        let c = om * (g * d_p + om * rw) / (w * w);
        let r_cos = d.dot(&e_gamma);
        Ok(Self {
            d_omega: d.dot(&e_omega),
            amplitude: r_sin.hypot(r_cos),
            r_w0: c,
            omega: w,
            phase: r_sin.atan2(r_cos) - w * t_init,
            omega_mag: om,
            gamma: g,
            e_omega,
            e_gamma,
            e_p,
        })
    }

    /// Solution with explicitly chosen constants; phase = 0 is the zero-phase gauge.
    pub fn from_constants(p: &RamanParams, d_omega: f64, amplitude: f64, r_w0: f64, phase: f64) -> Result<Self> {
        let (om, g, w, [e_omega, e_gamma, e_p]) = Self::frame(p)?;
        Ok(Self {
            d_omega,
            amplitude,
            r_w0,
            omega: w,
            phase,
            omega_mag: om,
            gamma: g,
            e_omega,
            e_gamma,
            e_p,
        })
    }

    fn psi(&self, t: f64) -> f64 {
        self.omega * t + self.phase
    }

    /// (d_Ω, d_γ, d_p, r̃_w) at time t.
    pub fn components(&self, t: f64) -> [f64; 4] {
        let (s, c) = self.psi(t).sin_cos();
        let r = self.amplitude;
        [
            self.d_omega,
            r * c,
            r * self.omega_mag / self.omega * s - self.gamma / self.omega_mag * self.r_w0,
            -r * self.gamma / self.omega * s + self.r_w0,
        ]
    }

    /// Co-rotating state at time t.
    pub fn state_at(&self, t: f64) -> BlochState {
        let [d_o, d_g, d_p, rw] = self.components(t);
        let d = self.e_omega * d_o + self.e_gamma * d_g + self.e_p * d_p;
        BlochState::new([d[0], d[1], d[2], rw])
    }

    /// l² = |d|².
    pub fn l_squared(&self, t: f64) -> f64 {
        let [a, b, c, _] = self.components(t);
        a * a + b * b + c * c
    }
}

/// Co-rotating state at time t for the lab-frame state `init` at t = 0
/// (where the two frames coincide).
pub fn raman_analytic(p: &RamanParams, init: &BlochState, t: f64) -> Result<BlochState> {
    Ok(RotatingSolution::fit(p, init, 0.0)?.state_at(t))
}

/// d(l²)/dt = (γ²/ω) R² sin 2ψ − 2γ R r̃_w0 cos ψ.
pub fn purity_rate(sol: &RotatingSolution, t: f64) -> f64 {
    let psi = sol.psi(t);
    let g = sol.gamma;
    let r = sol.amplitude;
    g * g / sol.omega * r * r * (2.0 * psi).sin() - 2.0 * g * r * sol.r_w0 * psi.cos()
}
