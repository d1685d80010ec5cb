use std::fmt;
use std::ops::{Add, Mul, Sub};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;

use super::Operator;
use crate::error::{Error, Result};

/// Linear map on `dim`×`dim` operators, stored as a `dim²`×`dim²` matrix acting
/// on column-stacked vectors.
#[derive(Clone, PartialEq)]
pub struct Superoperator {
    dim: usize,
    matrix: DMatrix<C64>,
}

impl Superoperator {
    pub fn new(dim: usize, matrix: DMatrix<C64>) -> Result<Self> {
        let n = dim * dim;
        if matrix.nrows() != n || matrix.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: matrix.nrows().max(matrix.ncols()),
            });
        }
        if matrix.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { dim, matrix })
    }

    pub(crate) fn from_matrix_unchecked(dim: usize, matrix: DMatrix<C64>) -> Self {
        debug_assert_eq!(matrix.nrows(), dim * dim);
        Self { dim, matrix }
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            matrix: DMatrix::zeros(dim * dim, dim * dim),
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            dim,
            matrix: DMatrix::identity(dim * dim, dim * dim),
        }
    }

    /// Operator-space dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.matrix
    }

    pub fn apply(&self, rho: &Operator) -> Result<Operator> {
        if rho.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: rho.dim(),
            });
        }
        Ok(unvectorize(&(&self.matrix * vectorize(rho))))
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Superoperator) -> Superoperator {
        Superoperator {
            dim: self.dim,
            matrix: &self.matrix * &other.matrix,
        }
    }

    pub fn scale(&self, s: C64) -> Self {
        Self {
            dim: self.dim,
            matrix: &self.matrix * s,
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.matrix.iter().fold(0.0, |acc, z| acc.max(z.norm()))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.matrix.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }
}

impl fmt::Debug for Superoperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Superoperator(dim = {}){}", self.dim, self.matrix)
    }
}

impl fmt::Display for Superoperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&Operator::from_matrix_unchecked(self.matrix.clone()), f)
    }
}

impl<'a> Add<&'a Superoperator> for &'a Superoperator {
    type Output = Superoperator;
    fn add(self, rhs: &'a Superoperator) -> Superoperator {
        Superoperator {
            dim: self.dim,
            matrix: &self.matrix + &rhs.matrix,
        }
    }
}

impl<'a> Sub<&'a Superoperator> for &'a Superoperator {
    type Output = Superoperator;
    fn sub(self, rhs: &'a Superoperator) -> Superoperator {
        Superoperator {
            dim: self.dim,
            matrix: &self.matrix - &rhs.matrix,
        }
    }
}

impl<'a> Mul<&'a Superoperator> for &'a Superoperator {
    type Output = Superoperator;
    fn mul(self, rhs: &'a Superoperator) -> Superoperator {
        self.compose(rhs)
    }
}

/// Column-stacking vectorization.
pub fn vectorize(a: &Operator) -> DVector<C64> {
    // nalgebra storage is column-major, so the raw slice is already column-stacked
    DVector::from_column_slice(a.matrix().as_slice())
}

pub fn unvectorize(v: &DVector<C64>) -> Operator {
    let dim = (v.len() as f64).sqrt().round() as usize;
    assert_eq!(dim * dim, v.len(), "vector length {} is not a square", v.len());
    Operator::from_matrix_unchecked(DMatrix::from_column_slice(dim, dim, v.as_slice()))
}

/// The map ρ ↦ LρR, i.e. `Rᵀ ⊗ L` under column stacking.
pub fn sandwich_superop(left: &Operator, right: &Operator) -> Result<Superoperator> {
    left.check_same_dim(right)?;
    Ok(sandwich_unchecked(left.matrix(), right.matrix()))
}

pub(crate) fn sandwich_unchecked(left: &DMatrix<C64>, right: &DMatrix<C64>) -> Superoperator {
    Superoperator {
        dim: left.nrows(),
        matrix: right.transpose().kronecker(left),
    }
}

/// ρ ↦ Aρ − ρA.
pub fn commutator_superop(a: &Operator) -> Superoperator {
    let id = DMatrix::identity(a.dim(), a.dim());
    &sandwich_unchecked(a.matrix(), &id) - &sandwich_unchecked(&id, a.matrix())
}

/// ρ ↦ Aρ + ρA.
pub fn anticommutator_superop(a: &Operator) -> Superoperator {
    let id = DMatrix::identity(a.dim(), a.dim());
    &sandwich_unchecked(a.matrix(), &id) + &sandwich_unchecked(&id, a.matrix())
}
