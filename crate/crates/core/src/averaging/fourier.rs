//! Finite sums Σ c_k t^{p_k} e^{iν_k t} with matrix-valued coefficients.
//!
//! Time dependence is kept symbolic so that products, time derivatives,
//! definite integrals and ideal low-pass averaging are all exact
//! operations on the term list.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use super::AveragingFilter;
use crate::linalg::{sandwich_unchecked, Operator, Superoperator};

/// Frequencies closer than this (rad/time) are treated as one.
pub const FREQ_MERGE_TOL: f64 = 1e-12;

/// Matrix-valued coefficient of a Fourier series.
pub trait Coefficient: Clone {
    /// Dimension of the Hilbert space the coefficient acts on (or whose operators it maps).
    fn space_dim(&self) -> usize;
    fn raw(&self) -> &DMatrix<C64>;
    fn from_raw(space_dim: usize, m: DMatrix<C64>) -> Self;
    fn zero(space_dim: usize) -> Self;
    fn identity(space_dim: usize) -> Self;
}

impl Coefficient for Operator {
    fn space_dim(&self) -> usize {
        self.dim()
    }
    fn raw(&self) -> &DMatrix<C64> {
        self.matrix()
    }
    fn from_raw(_space_dim: usize, m: DMatrix<C64>) -> Self {
        Operator::from_matrix_unchecked(m)
    }
    fn zero(space_dim: usize) -> Self {
        Operator::zeros(space_dim)
    }
    fn identity(space_dim: usize) -> Self {
        Operator::identity(space_dim)
    }
}

impl Coefficient for Superoperator {
    fn space_dim(&self) -> usize {
        self.dim()
    }
    fn raw(&self) -> &DMatrix<C64> {
        self.matrix()
    }
    fn from_raw(space_dim: usize, m: DMatrix<C64>) -> Self {
        Superoperator::from_matrix_unchecked(space_dim, m)
    }
    fn zero(space_dim: usize) -> Self {
        Superoperator::zeros(space_dim)
    }
    fn identity(space_dim: usize) -> Self {
        Superoperator::identity(space_dim)
    }
}

/// One term `coeff · t^power · e^{i freq t}`.
#[derive(Clone, Debug)]
pub struct FourierTerm<T> {
    pub coeff: T,
    pub freq: f64,
    pub power: u32,
}

#[derive(Clone, Debug)]
pub struct FourierSeries<T> {
    dim: usize,
    terms: Vec<FourierTerm<T>>,
}

pub type FourierOperator = FourierSeries<Operator>;
pub type FourierSuperoperator = FourierSeries<Superoperator>;

impl<T: Coefficient> FourierSeries<T> {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            terms: Vec::new(),
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::constant(T::identity(dim))
    }

    pub fn constant(coeff: T) -> Self {
        Self::from_terms(
            coeff.space_dim(),
            vec![FourierTerm {
                coeff,
                freq: 0.0,
                power: 0,
            }],
        )
    }

    /// Builds a series, merging terms with equal `(freq, power)` and dropping zero coefficients.
    pub fn from_terms(dim: usize, terms: Vec<FourierTerm<T>>) -> Self {
        debug_assert!(terms.iter().all(|t| t.coeff.space_dim() == dim));
        let mut s = Self { dim, terms };
        s.normalize();
        s
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &[FourierTerm<T>] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_power(&self) -> u32 {
        self.terms.iter().map(|t| t.power).max().unwrap_or(0)
    }

    fn normalize(&mut self) {
        let mut terms = std::mem::take(&mut self.terms);
        terms.sort_by(|a, b| a.power.cmp(&b.power).then(a.freq.total_cmp(&b.freq)));
        let mut merged: Vec<FourierTerm<T>> = Vec::with_capacity(terms.len());
        for term in terms {
            match merged.last_mut() {
                Some(last)
                    if last.power == term.power
                        && (last.freq - term.freq).abs() <= FREQ_MERGE_TOL =>
                {
                    let sum = last.coeff.raw() + term.coeff.raw();
                    last.coeff = T::from_raw(self.dim, sum);
                }
                _ => merged.push(term),
            }
        }
        merged.retain(|t| t.coeff.raw().iter().any(|z| *z != C64::new(0.0, 0.0)));
        self.terms = merged;
    }

    pub fn evaluate(&self, t: f64) -> T {
        let first = match self.terms.first() {
            Some(term) => term,
            None => return T::zero(self.dim),
        };
        let mut acc = DMatrix::zeros(first.coeff.raw().nrows(), first.coeff.raw().ncols());
        for term in &self.terms {
            let phase = C64::from_polar(1.0, term.freq * t) * t.powi(term.power as i32);
            acc += term.coeff.raw() * phase;
        }
        T::from_raw(self.dim, acc)
    }

    pub fn add(&self, other: &Self) -> Self {
        let terms = self.terms.iter().chain(other.terms.iter()).cloned().collect();
        Self::from_terms(self.dim, terms)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(C64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, s: C64) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| FourierTerm {
                coeff: T::from_raw(self.dim, t.coeff.raw() * s),
                freq: t.freq,
                power: t.power,
            })
            .collect();
        Self::from_terms(self.dim, terms)
    }

    /// Pointwise-in-time product `self(t) · other(t)` (matrix product of coefficients).
    pub fn mul(&self, other: &Self) -> Self {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                terms.push(FourierTerm {
                    coeff: T::from_raw(self.dim, a.coeff.raw() * b.coeff.raw()),
                    freq: a.freq + b.freq,
                    power: a.power + b.power,
                });
            }
        }
        Self::from_terms(self.dim, terms)
    }

    /// Multiplies by a constant coefficient on the left.
    pub fn left_mul(&self, c: &T) -> Self {
        Self::constant(c.clone()).mul(self)
    }

    /// Multiplies by a constant coefficient on the right.
    pub fn right_mul(&self, c: &T) -> Self {
        self.mul(&Self::constant(c.clone()))
    }

    /// d/dt, term by term: (p t^{p−1} + iν t^p) e^{iνt}.
    pub fn derivative(&self) -> Self {
        let mut terms = Vec::with_capacity(2 * self.terms.len());
        for t in &self.terms {
            if t.freq != 0.0 {
                terms.push(FourierTerm {
                    coeff: T::from_raw(self.dim, t.coeff.raw() * C64::new(0.0, t.freq)),
                    freq: t.freq,
                    power: t.power,
                });
            }
            if t.power > 0 {
                terms.push(FourierTerm {
                    coeff: T::from_raw(self.dim, t.coeff.raw() * C64::new(t.power as f64, 0.0)),
                    freq: t.freq,
                    power: t.power - 1,
                });
            }
        }
        Self::from_terms(self.dim, terms)
    }

    /// The definite integral ∫_{t0}^{t} self(s) ds as a series in `t`.
    pub fn integral_from(&self, t0: f64) -> Self {
        let mut terms = Vec::new();
        let mut at_t0 = DMatrix::<C64>::zeros(0, 0);
        for term in &self.terms {
            let c = term.coeff.raw();
            if at_t0.nrows() == 0 {
                at_t0 = DMatrix::zeros(c.nrows(), c.ncols());
            }
            let p = term.power;
            if term.freq.abs() <= FREQ_MERGE_TOL {
                let k = C64::new(1.0 / (p + 1) as f64, 0.0);
                terms.push(FourierTerm {
                    coeff: T::from_raw(self.dim, c * k),
                    freq: 0.0,
                    power: p + 1,
                });
                at_t0 += c * (k * t0.powi(p as i32 + 1));
            } else {
                // ∫ s^p e^{iνs} ds = e^{iνs} Σ_k (−1)^k p!/(p−k)! s^{p−k} / (iν)^{k+1}
                let inu = C64::new(0.0, term.freq);
                let phase0 = C64::from_polar(1.0, term.freq * t0);
                let mut falling = 1.0;
                let mut inv_pow = inu.inv();
                for k in 0..=p {
                    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                    let factor = inv_pow * (sign * falling);
                    terms.push(FourierTerm {
                        coeff: T::from_raw(self.dim, c * factor),
                        freq: term.freq,
                        power: p - k,
                    });
                    at_t0 += c * (factor * phase0 * t0.powi((p - k) as i32));
                    falling *= (p - k) as f64;
                    inv_pow /= inu;
                }
            }
        }
        if at_t0.nrows() > 0 {
            terms.push(FourierTerm {
                coeff: T::from_raw(self.dim, -at_t0),
                freq: 0.0,
                power: 0,
            });
        }
        Self::from_terms(self.dim, terms)
    }

    /// Ideal low-pass average: drops every term with |ν| ≥ cutoff.
    pub fn lowpass(&self, filter: &AveragingFilter) -> Self {
        Self {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|t| filter.passes(t.freq))
                .cloned()
                .collect(),
        }
    }

    /// Largest entry modulus over all coefficients.
    pub fn max_abs_coeff(&self) -> f64 {
        self.terms
            .iter()
            .flat_map(|t| t.coeff.raw().iter())
            .fold(0.0, |acc, z| acc.max(z.norm()))
    }
}

impl FourierOperator {
    /// Pointwise adjoint; `t` is real so ν → −ν.
    pub fn adjoint(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| FourierTerm {
                coeff: t.coeff.adjoint(),
                freq: -t.freq,
                power: t.power,
            })
            .collect();
        Self::from_terms(self.dim, terms)
    }

    /// Term `coeff · e^{iνt}` as a one-term series.
    pub fn harmonic(coeff: Operator, freq: f64) -> Self {
        let dim = coeff.dim();
        Self::from_terms(
            dim,
            vec![FourierTerm {
                coeff,
                freq,
                power: 0,
            }],
        )
    }
}

/// The map ρ ↦ L(t) ρ R(t) as a superoperator series. With a filter, terms at
/// rejected frequencies are never formed, which equals `sandwich(..).lowpass(..)`.
pub fn sandwich_series(
    left: &FourierOperator,
    right: &FourierOperator,
    filter: Option<&AveragingFilter>,
) -> FourierSuperoperator {
    let mut terms = Vec::new();
    for a in left.terms() {
        for b in right.terms() {
            let freq = a.freq + b.freq;
            if let Some(f) = filter {
                if !f.passes(freq) {
                    continue;
                }
            }
            terms.push(FourierTerm {
                coeff: sandwich_unchecked(a.coeff.matrix(), b.coeff.matrix()),
                freq,
                power: a.power + b.power,
            });
        }
    }
    FourierSuperoperator::from_terms(left.dim(), terms)
}
