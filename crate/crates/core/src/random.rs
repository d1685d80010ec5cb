//! Seeded random inputs for property sweeps and parameter scans.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use rand::Rng;

use crate::harmonic::{HarmonicHamiltonian, HarmonicTerm};
use crate::linalg::{DensityMatrix, Operator};

/// Entries with real and imaginary parts uniform in [−1, 1).
pub fn random_operator<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Operator {
    let m = DMatrix::from_fn(dim, dim, |_, _| {
        C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    });
    Operator::from_matrix_unchecked(m)
}

pub fn random_hermitian<R: Rng + ?Sized>(rng: &mut R, dim: usize, scale: f64) -> Operator {
    let a = random_operator(rng, dim);
    (&a + &a.adjoint()).scale_real(0.5 * scale)
}

/// Full-rank mixed state A A† / tr(A A†).
pub fn random_density<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> DensityMatrix {
    let a = random_operator(rng, dim);
    let m = &a * &a.adjoint();
    let tr = m.trace().re;
    let mut rho = m.scale_real(1.0 / tr).into_matrix();
    // exact Hermitian symmetry
    for i in 0..dim {
        rho[(i, i)].im = 0.0;
        for j in 0..i {
            rho[(i, j)] = rho[(j, i)].conj();
        }
    }
    DensityMatrix::from_operator_unchecked(Operator::from_matrix_unchecked(rho))
}

/// Harmonic Hamiltonian with `frequencies.len()` drive terms, coupling operators of
/// entrywise size ≲ `coupling` and a static part of size ≲ `static_scale`.
pub fn random_harmonic<R: Rng + ?Sized>(
    rng: &mut R,
    dim: usize,
    frequencies: &[f64],
    coupling: f64,
    static_scale: f64,
) -> HarmonicHamiltonian {
    let h0 = random_hermitian(rng, dim, static_scale);
    let terms = frequencies
        .iter()
        .map(|&omega| HarmonicTerm {
            h: random_operator(rng, dim).scale_real(coupling),
            omega,
        })
        .collect();
    HarmonicHamiltonian::new(h0, terms).expect("random harmonic Hamiltonian is well formed")
}
