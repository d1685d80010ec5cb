use super::fourier::{Coefficient, FourierSeries};
use crate::error::{Error, Result};
use crate::harmonic::HarmonicHamiltonian;

/// Ideal low-pass averaging kernel: Fourier components with |ν| < cutoff pass
/// unchanged, all others are annihilated.
///
/// Secular factors t^p at passing frequencies are kept as-is. A unit-area even
/// kernel would shift them by O(kernel width), which is neglected.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AveragingFilter {
    cutoff: f64,
}

impl AveragingFilter {
    pub fn new(cutoff: f64) -> Result<Self> {
        if !(cutoff > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "averaging cutoff must be positive, got {cutoff}"
            )));
        }
        Ok(Self { cutoff })
    }

    /// Passes every frequency; averaging becomes the identity.
    pub fn transparent() -> Self {
        Self {
            cutoff: f64::INFINITY,
        }
    }

    /// Half the smallest drive frequency: rejects every ±ω_n and ±(ω_n + ω_m)
    /// and passes every ω_n − ω_m smaller than that.
    pub fn default_for(h: &HarmonicHamiltonian) -> Self {
        match h.min_frequency() {
            Some(w) => Self { cutoff: 0.5 * w },
            None => Self::transparent(),
        }
    }

    pub fn cutoff(&self) -> f64 {
        self.cutoff
    }

    pub fn passes(&self, freq: f64) -> bool {
        freq.abs() < self.cutoff
    }
}

/// Rectangular-window average of `series` over [t − width/2, t + width/2] by
/// composite Simpson quadrature with `intervals` (rounded up to even) panels.
///
/// Diagnostic only: compares a finite physical window with the ideal filter.
pub fn windowed_average<T: Coefficient>(
    series: &FourierSeries<T>,
    t: f64,
    width: f64,
    intervals: usize,
) -> T {
    let n = (intervals.max(2) + 1) & !1;
    let h = width / n as f64;
    let a = t - 0.5 * width;
    let mut acc = series.evaluate(a).raw().clone() + series.evaluate(a + width).raw();
    for k in 1..n {
        let w = if k % 2 == 1 { 4.0 } else { 2.0 };
        acc += series.evaluate(a + k as f64 * h).raw() * num_complex::Complex64::new(w, 0.0);
    }
    let scale = num_complex::Complex64::new(h / 3.0 / width, 0.0);
    T::from_raw(series.dim(), acc * scale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::averaging::FourierOperator;
    use crate::linalg::Operator;

    #[test]
    fn rejects_nonpositive_cutoff() {
        assert!(AveragingFilter::new(0.0).is_err());
        assert!(AveragingFilter::new(-1.0).is_err());
        assert!(AveragingFilter::new(f64::NAN).is_err());
        assert!(AveragingFilter::new(0.3).is_ok());
    }

    #[test]
    fn boundary_is_rejected() {
        let f = AveragingFilter::new(1.0).unwrap();
        assert!(f.passes(0.999));
        assert!(!f.passes(1.0));
        assert!(!f.passes(-1.0));
        assert!(AveragingFilter::transparent().passes(1e300));
    }

    #[test]
    fn window_average_of_fast_term_is_small() {
        // one full period of e^{iωt} averages to zero
        let s = FourierOperator::harmonic(Operator::identity(2), 2.0);
        let width = std::f64::consts::PI;
        let avg = windowed_average(&s, 0.3, width, 400);
        assert!(avg.max_abs() < 1e-9);
        // slow term passes almost unchanged: sinc(νw/2) ≈ 1 − (νw)²/24
        let slow = FourierOperator::harmonic(Operator::identity(2), 0.01);
        let avg = windowed_average(&slow, 0.3, width, 400);
        let ideal = slow.lowpass(&AveragingFilter::new(1.0).unwrap()).evaluate(0.3);
        assert!((&avg - &ideal).max_abs() < 1e-4);
    }
}
