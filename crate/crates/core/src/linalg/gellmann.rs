//! SU(3) Gell-Mann basis and the generalized Bloch vector of a qutrit.
//!
//! States are written ρ = I/3 + Σ_k r_k G_k with the eight traceless
//! generators ordered X, Y, Z, W, X_a, Y_a, X_b, Y_b. X, Y, Z act on the
//! {|1⟩, |2⟩} pair, the `a` and `b` pairs couple |1⟩ and |2⟩ to |3⟩.

use num_complex::Complex64 as C64;

use super::Operator;
use crate::error::{Error, Result};

pub const GELLMANN_LABELS: [&str; 8] = ["r_x", "r_y", "r_z", "r_w", "r_xa", "r_ya", "r_xb", "r_yb"];

#[derive(Clone, Debug)]
pub struct GellMannBasis {
    pub identity: Operator,
    /// X, Y, Z, W, X_a, Y_a, X_b, Y_b
    pub generators: [Operator; 8],
}

impl GellMannBasis {
    pub fn x(&self) -> &Operator {
        &self.generators[0]
    }
    pub fn y(&self) -> &Operator {
        &self.generators[1]
    }
    pub fn z(&self) -> &Operator {
        &self.generators[2]
    }
    pub fn w(&self) -> &Operator {
        &self.generators[3]
    }
    pub fn xa(&self) -> &Operator {
        &self.generators[4]
    }
    pub fn ya(&self) -> &Operator {
        &self.generators[5]
    }
    pub fn xb(&self) -> &Operator {
        &self.generators[6]
    }
    pub fn yb(&self) -> &Operator {
        &self.generators[7]
    }
}

fn kb(i: usize, j: usize) -> Operator {
    Operator::ket_bra(3, i, j)
}

fn symmetric(i: usize, j: usize) -> Operator {
    &kb(i, j) + &kb(j, i)
}

fn antisymmetric(i: usize, j: usize) -> Operator {
    // −i(|i⟩⟨j| − |j⟩⟨i|)
    (&kb(i, j) - &kb(j, i)).scale(C64::new(0.0, -1.0))
}

pub fn gellmann_basis() -> GellMannBasis {
    let z = &kb(0, 0) - &kb(1, 1);
    let w = Operator::diagonal(&[1.0, 1.0, -2.0]).scale_real(1.0 / 3f64.sqrt());
    GellMannBasis {
        identity: Operator::identity(3),
        generators: [
            symmetric(0, 1),
            antisymmetric(0, 1),
            z,
            w,
            symmetric(0, 2),
            antisymmetric(0, 2),
            symmetric(1, 2),
            antisymmetric(1, 2),
        ],
    }
}

/// r_k = tr(ρ G_k) / tr(G_k²) for each generator; every generator has tr(G_k²) = 2.
pub fn bloch_decompose(rho: &Operator) -> Result<[f64; 8]> {
    if rho.dim() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            found: rho.dim(),
        });
    }
    let basis = gellmann_basis();
    let mut r = [0.0; 8];
    for (rk, g) in r.iter_mut().zip(basis.generators.iter()) {
        *rk = (rho * g).trace().re / 2.0;
    }
    Ok(r)
}

/// I/3 + Σ r_k G_k.
pub fn bloch_compose(coeffs: &[f64; 8]) -> Operator {
    let basis = gellmann_basis();
    coeffs
        .iter()
        .zip(basis.generators.iter())
        .fold(basis.identity.scale_real(1.0 / 3.0), |acc, (&c, g)| {
            &acc + &g.scale_real(c)
        })
}

/// Pauli components (tr ρσ_x, tr ρσ_y, tr ρσ_z) of a qubit operator.
pub fn pauli_decompose(rho: &Operator) -> Result<[f64; 3]> {
    if rho.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: rho.dim(),
        });
    }
    let r01 = rho.get(0, 1);
    let r10 = rho.get(1, 0);
    Ok([
        (r01 + r10).re,
        (C64::new(0.0, 1.0) * (r01 - r10)).re,
        (rho.get(0, 0) - rho.get(1, 1)).re,
    ])
}
