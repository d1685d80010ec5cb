use num_complex::Complex64 as C64;

use crate::averaging::{FourierOperator, FourierTerm, FREQ_MERGE_TOL};
use crate::error::{Error, Result};
use crate::linalg::{Operator, TOL_HERMITIAN};

/// One drive term h e^{−iωt} + h† e^{iωt}.
#[derive(Clone, Debug)]
pub struct HarmonicTerm {
    pub h: Operator,
    /// rad/time, > 0
    pub omega: f64,
}

/// H(t) = H_0 + Σ_n (h_n e^{−iω_n t} + h_n† e^{iω_n t}).
#[derive(Clone, Debug)]
pub struct HarmonicHamiltonian {
    h0: Operator,
    terms: Vec<HarmonicTerm>,
}

impl HarmonicHamiltonian {
    pub fn new(h0: Operator, terms: Vec<HarmonicTerm>) -> Result<Self> {
        let violation = h0.hermiticity_violation();
        if violation > TOL_HERMITIAN {
            return Err(Error::NotHermitian {
                time: 0.0,
                violation,
            });
        }
        for term in &terms {
            h0.check_same_dim(&term.h)?;
            if !(term.omega > 0.0) || !term.omega.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "drive frequency must be positive and finite, got {}",
                    term.omega
                )));
            }
        }
        Ok(Self { h0, terms })
    }

    pub fn dim(&self) -> usize {
        self.h0.dim()
    }

    pub fn h0(&self) -> &Operator {
        &self.h0
    }

    pub fn terms(&self) -> &[HarmonicTerm] {
        &self.terms
    }

    pub fn frequencies(&self) -> Vec<f64> {
        self.terms.iter().map(|t| t.omega).collect()
    }

    pub fn min_frequency(&self) -> Option<f64> {
        self.terms.iter().map(|t| t.omega).reduce(f64::min)
    }

    pub fn max_frequency(&self) -> Option<f64> {
        self.terms.iter().map(|t| t.omega).reduce(f64::max)
    }

    /// Largest |ω_n − ω_m| over all pairs.
    pub fn max_beat(&self) -> f64 {
        match (self.min_frequency(), self.max_frequency()) {
            (Some(a), Some(b)) => b - a,
            _ => 0.0,
        }
    }

    pub fn to_fourier(&self) -> FourierOperator {
        let mut terms = vec![FourierTerm {
            coeff: self.h0.clone(),
            freq: 0.0,
            power: 0,
        }];
        for t in &self.terms {
            terms.push(FourierTerm {
                coeff: t.h.clone(),
                freq: -t.omega,
                power: 0,
            });
            terms.push(FourierTerm {
                coeff: t.h.adjoint(),
                freq: t.omega,
                power: 0,
            });
        }
        FourierOperator::from_terms(self.dim(), terms)
    }

    pub fn at(&self, t: f64) -> Operator {
        self.to_fourier().evaluate(t)
    }

    /// (1/ω⁺_nm, 1/ω⁻_nm) = ½(1/ω_n ± 1/ω_m). The difference is exactly zero
    /// when ω_n and ω_m agree within 1e−12.
    pub fn inv_omega_pm(&self, n: usize, m: usize) -> Result<(f64, f64)> {
        let len = self.terms.len();
        let wn = self
            .terms
            .get(n)
            .ok_or(Error::IndexOutOfRange { index: n, len })?
            .omega;
        let wm = self
            .terms
            .get(m)
            .ok_or(Error::IndexOutOfRange { index: m, len })?
            .omega;
        Ok(inv_omega_pm(wn, wm))
    }

    /// V_1(t) = Σ_n (1/ω_n)(h_n e^{−iω_n t} − h_n† e^{iω_n t}).
    pub fn v1(&self) -> FourierOperator {
        let mut terms = Vec::with_capacity(2 * self.terms.len());
        for t in &self.terms {
            terms.push(FourierTerm {
                coeff: t.h.scale_real(1.0 / t.omega),
                freq: -t.omega,
                power: 0,
            });
            terms.push(FourierTerm {
                coeff: t.h.adjoint().scale_real(-1.0 / t.omega),
                freq: t.omega,
                power: 0,
            });
        }
        FourierOperator::from_terms(self.dim(), terms)
    }

    /// U_1(t) = −i(t − t0) H_0 + V_1(t) − V_1(t0).
    pub fn u1_closed_form(&self, t0: f64) -> FourierOperator {
        let v1 = self.v1();
        let secular = FourierOperator::from_terms(
            self.dim(),
            vec![
                FourierTerm {
                    coeff: self.h0.scale(C64::new(0.0, -1.0)),
                    freq: 0.0,
                    power: 1,
                },
                FourierTerm {
                    coeff: self.h0.scale(C64::new(0.0, t0)),
                    freq: 0.0,
                    power: 0,
                },
            ],
        );
        let v1_t0 = FourierOperator::constant(v1.evaluate(t0));
        secular.add(&v1).sub(&v1_t0)
    }
}

pub fn inv_omega_pm(wn: f64, wm: f64) -> (f64, f64) {
    let plus = 0.5 * (1.0 / wn + 1.0 / wm);
    let minus = if (wn - wm).abs() <= FREQ_MERGE_TOL {
        0.0
    } else {
        0.5 * (1.0 / wn - 1.0 / wm)
    };
    (plus, minus)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::averaging::dyson_terms;
    use crate::random::random_harmonic;
    use rand::{rngs::StdRng, SeedableRng};

    fn single(omega: f64) -> HarmonicHamiltonian {
        HarmonicHamiltonian::new(
            Operator::zeros(2),
            vec![HarmonicTerm {
                h: Operator::ket_bra(2, 1, 0),
                omega,
            }],
        )
        .unwrap()
    }

    #[test]
    fn inv_omega_same_index() {
        assert_eq!(single(2.0).inv_omega_pm(0, 0).unwrap(), (0.5, 0.0));
    }

    #[test]
    fn inv_omega_distinct() {
        let (p, m) = inv_omega_pm(1.0, 3.0);
        assert!((p - 2.0 / 3.0).abs() < 1e-15);
        assert!((m - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(inv_omega_pm(1.7, 1.7), (1.0 / 1.7, 0.0));
        assert_eq!(inv_omega_pm(1.7, 1.7 + 1e-13).1, 0.0);
    }

    #[test]
    fn inv_omega_out_of_range() {
        assert!(matches!(
            single(1.0).inv_omega_pm(0, 1),
            Err(Error::IndexOutOfRange { index: 1, len: 1 })
        ));
    }

    #[test]
    fn rejects_bad_input() {
        let bad_h0 = Operator::ket_bra(2, 0, 1);
        assert!(HarmonicHamiltonian::new(bad_h0, vec![]).is_err());
        let neg = HarmonicHamiltonian::new(
            Operator::zeros(2),
            vec![HarmonicTerm { h: Operator::zeros(2), omega: -1.0 }],
        );
        assert!(neg.is_err());
        let dim = HarmonicHamiltonian::new(
            Operator::zeros(2),
            vec![HarmonicTerm { h: Operator::zeros(3), omega: 1.0 }],
        );
        assert!(dim.is_err());
    }

    #[test]
    fn fourier_form_is_hermitian() {
        let mut rng = StdRng::seed_from_u64(4);
        let h = random_harmonic(&mut rng, 3, &[1.0, 1.3], 0.4, 0.2);
        for &t in &[0.0, 0.77, 5.1] {
            assert!(h.at(t).is_hermitian(1e-14));
        }
    }

    #[test]
    fn u1_single_term_without_static_part() {
        let h = single(1.5);
        let t0 = 0.3;
        let u1 = h.u1_closed_form(t0);
        let v1 = h.v1();
        for &t in &[0.3, 1.0, 4.0] {
            let expected = &v1.evaluate(t) - &v1.evaluate(t0);
            assert!((&u1.evaluate(t) - &expected).max_abs() < 1e-15);
        }
        assert!(u1.evaluate(t0).max_abs() < 1e-15);
    }

    #[test]
    fn u1_matches_dyson_engine() {
        let mut rng = StdRng::seed_from_u64(6);
        for _ in 0..10 {
            let h = random_harmonic(&mut rng, 3, &[1.1, 1.4, 0.9], 0.5, 0.5);
            let t0 = -0.7;
            let closed = h.u1_closed_form(t0);
            let engine = dyson_terms(&h.to_fourier(), t0, 1).unwrap().remove(0);
            for &t in &[-0.7, 0.0, 2.2, 9.0] {
                assert!((&closed.evaluate(t) - &engine.evaluate(t)).max_abs() < 1e-13);
            }
            assert!(closed.sub(&engine).max_abs_coeff() < 1e-14);
        }
    }
}
