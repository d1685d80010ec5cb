use num_complex::Complex64 as C64;

use super::fourier::FourierOperator;
use crate::error::{Error, Result};

pub const MAX_ORDER: usize = 3;

pub(crate) fn check_order(order: usize) -> Result<()> {
    if order > MAX_ORDER {
        return Err(Error::UnsupportedOrder(order));
    }
    Ok(())
}

pub(crate) fn check_trigonometric(h: &FourierOperator) -> Result<()> {
    match h.terms().iter().find(|t| t.power > 0) {
        Some(t) => Err(Error::SecularHamiltonian(t.power)),
        None => Ok(()),
    }
}

/// Dyson terms U_1 … U_K of U(t, t0) from i ∂U_n/∂t = H U_{n−1}, U_n(t0) = 0 (ħ = 1).
///
/// Integration is exact on the Fourier terms; U_0 = I is not included.
pub fn dyson_terms(h: &FourierOperator, t0: f64, order: usize) -> Result<Vec<FourierOperator>> {
    check_order(order)?;
    check_trigonometric(h)?;
    let minus_i = C64::new(0.0, -1.0);
    let mut out: Vec<FourierOperator> = Vec::with_capacity(order);
    let mut prev = FourierOperator::identity(h.dim());
    for _ in 0..order {
        let next = h.mul(&prev).integral_from(t0).scale(minus_i);
        out.push(next.clone());
        prev = next;
    }
    Ok(out)
}
