//! Perturbative superoperator series for the averaged density matrix.
//!
//! With U = Σ λⁿ U_n the averaged state is ρ̄ = E[ρ0] with
//! E_k[ρ] = Σ_j avg(U_{k−j} ρ U_j†). F = E⁻¹ is inverted order by order and
//! the averaged state obeys i dρ̄/dt = Σ_k L_k[ρ̄] with L_k = Σ_j i Ė_{k−j} ∘ F_j.
//! All maps are evaluated at λ = 1.

use num_complex::Complex64 as C64;

use super::dyson::{check_order, dyson_terms};
use super::fourier::{sandwich_series, FourierOperator, FourierSuperoperator};
use super::AveragingFilter;
use crate::error::Result;
use crate::linalg::Superoperator;

/// Order-indexed list of time-dependent superoperators, k = 0..=K.
#[derive(Clone, Debug)]
pub struct SuperoperatorSeries {
    orders: Vec<FourierSuperoperator>,
}

impl SuperoperatorSeries {
    pub fn new(orders: Vec<FourierSuperoperator>) -> Self {
        assert!(!orders.is_empty(), "a series has at least the order-0 term");
        Self { orders }
    }

    /// Highest order K.
    pub fn order(&self) -> usize {
        self.orders.len() - 1
    }

    pub fn dim(&self) -> usize {
        self.orders[0].dim()
    }

    pub fn term(&self, k: usize) -> &FourierSuperoperator {
        &self.orders[k]
    }

    pub fn terms(&self) -> &[FourierSuperoperator] {
        &self.orders
    }

    /// The order-k map at time t.
    pub fn at(&self, k: usize, t: f64) -> Superoperator {
        self.orders[k].evaluate(t)
    }

    /// Σ_{k ≤ up_to} of the maps at time t.
    pub fn sum_at(&self, up_to: usize, t: f64) -> Superoperator {
        self.orders[..=up_to.min(self.order())]
            .iter()
            .fold(Superoperator::zeros(self.dim()), |acc, s| &acc + &s.evaluate(t))
    }

    /// Cauchy product `self ∘ other` truncated at the smaller order.
    pub fn compose(&self, other: &SuperoperatorSeries) -> SuperoperatorSeries {
        let k_max = self.order().min(other.order());
        let orders = (0..=k_max)
            .map(|k| {
                (0..=k).fold(FourierSuperoperator::zero(self.dim()), |acc, j| {
                    acc.add(&self.orders[j].mul(&other.orders[k - j]))
                })
            })
            .collect();
        SuperoperatorSeries { orders }
    }

    pub fn derivative(&self) -> SuperoperatorSeries {
        SuperoperatorSeries {
            orders: self.orders.iter().map(|s| s.derivative()).collect(),
        }
    }
}

/// E_0 … E_K. Each sandwich avg(U_{k−j} ρ U_j†) is averaged over its full
/// Fourier expansion.
pub fn build_e(
    h: &FourierOperator,
    filter: &AveragingFilter,
    t0: f64,
    order: usize,
) -> Result<SuperoperatorSeries> {
    let mut u = vec![FourierOperator::identity(h.dim())];
    u.extend(dyson_terms(h, t0, order)?);
    Ok(e_from_dyson(&u, filter))
}

fn e_from_dyson(u: &[FourierOperator], filter: &AveragingFilter) -> SuperoperatorSeries {
    let dim = u[0].dim();
    let u_dag: Vec<FourierOperator> = u.iter().map(|x| x.adjoint()).collect();
    let orders = (0..u.len())
        .map(|k| {
            (0..=k).fold(FourierSuperoperator::zero(dim), |acc, j| {
                acc.add(&sandwich_series(&u[k - j], &u_dag[j], Some(filter)))
            })
        })
        .collect();
    SuperoperatorSeries { orders }
}

/// Series inverse of E: F_0 = I, F_n = −Σ_{j<n} F_j ∘ E_{n−j}.
pub fn build_f(e: &SuperoperatorSeries) -> SuperoperatorSeries {
    let dim = e.dim();
    let mut orders = vec![FourierSuperoperator::identity(dim)];
    for n in 1..=e.order() {
        let sum = (0..n).fold(FourierSuperoperator::zero(dim), |acc, j| {
            acc.add(&orders[j].mul(e.term(n - j)))
        });
        orders.push(sum.scale(C64::new(-1.0, 0.0)));
    }
    SuperoperatorSeries { orders }
}

/// Generators L_0 … L_K of i dρ̄/dt = Σ_k L_k[ρ̄] (ħ = 1).
pub fn build_l(
    h: &FourierOperator,
    filter: &AveragingFilter,
    t0: f64,
    order: usize,
) -> Result<SuperoperatorSeries> {
    Ok(AveragedExpansion::new(h, filter, t0, order)?.l)
}

/// Every intermediate of the averaged expansion, kept for inspection.
#[derive(Clone, Debug)]
pub struct AveragedExpansion {
    /// U_0 = I, U_1, …, U_K
    pub dyson: Vec<FourierOperator>,
    pub e: SuperoperatorSeries,
    pub f: SuperoperatorSeries,
    pub l: SuperoperatorSeries,
}

impl AveragedExpansion {
    pub fn new(
        h: &FourierOperator,
        filter: &AveragingFilter,
        t0: f64,
        order: usize,
    ) -> Result<Self> {
        check_order(order)?;
        let mut dyson = vec![FourierOperator::identity(h.dim())];
        dyson.extend(dyson_terms(h, t0, order)?);
        let e = e_from_dyson(&dyson, filter);
        let f = build_f(&e);
        let i = C64::new(0.0, 1.0);
        let l = e.derivative().compose(&f);
        let l = SuperoperatorSeries {
            orders: l.orders.iter().map(|s| s.scale(i)).collect(),
        };
        Ok(Self { dyson, e, f, l })
    }
}

/// A = avg(H U_1) − avg(H) avg(U_1) and the first-order effective Hamiltonian
/// H̄ + (A + A†)/2.
pub fn operator_a(
    h: &FourierOperator,
    filter: &AveragingFilter,
    t0: f64,
) -> Result<(FourierOperator, FourierOperator)> {
    let u1 = dyson_terms(h, t0, 1)?.remove(0);
    let h_bar = h.lowpass(filter);
    let a = h.mul(&u1).lowpass(filter).sub(&h_bar.mul(&u1.lowpass(filter)));
    let h_eff = h_bar.add(&a.add(&a.adjoint()).scale(C64::new(0.5, 0.0)));
    Ok((a, h_eff))
}

/// Sandwich part of L_2:
/// avg(HρU_1†) − H̄ρŪ_1† − avg(U_1ρH) + Ū_1ρH̄.
pub fn decoherence_d2(
    h: &FourierOperator,
    filter: &AveragingFilter,
    t0: f64,
) -> Result<FourierSuperoperator> {
    let u1 = dyson_terms(h, t0, 1)?.remove(0);
    let u1_dag = u1.adjoint();
    let h_bar = h.lowpass(filter);
    let u1_bar = u1.lowpass(filter);
    let u1_bar_dag = u1_bar.adjoint();
    Ok(sandwich_series(h, &u1_dag, Some(filter))
        .sub(&sandwich_series(&h_bar, &u1_bar_dag, None))
        .sub(&sandwich_series(&u1, h, Some(filter)))
        .add(&sandwich_series(&u1_bar, &h_bar, None)))
}
