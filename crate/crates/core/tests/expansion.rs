//! Oracles for the averaged expansion: brute-force numerical Dyson terms and
//! the closed-form second- and third-order generator term lists, evaluated on
//! a fixed ρ with plain Fourier-series arithmetic.

use num_complex::Complex64 as C64;
use rand::{rngs::StdRng, Rng, SeedableRng};

use timeavg_core::averaging::{
    build_e, build_f, build_l, decoherence_d2, dyson_terms, operator_a, AveragedExpansion,
    AveragingFilter, FourierOperator,
};
use timeavg_core::dynamics::{integrate, OdeState, TimeGrid};
use timeavg_core::harmonic::{ac_stark_hamiltonian, HarmonicHamiltonian};
use timeavg_core::linalg::{commutator, anticommutator, Operator};
use timeavg_core::random::{random_density, random_harmonic};

fn two_frequency(rng: &mut StdRng, dim: usize) -> HarmonicHamiltonian {
    let w1 = rng.gen_range(0.9..1.1);
    let w2 = w1 + rng.gen_range(0.05..0.2);
    random_harmonic(rng, dim, &[w1, w2], 0.3, 0.2)
}

fn c(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// ρ as a constant series, so sandwiches are ordinary products.
fn k(rho: &Operator) -> FourierOperator {
    FourierOperator::constant(rho.clone())
}

#[derive(Clone)]
struct Pair(Operator, Operator);

impl OdeState for Pair {
    fn axpy(&self, h: f64, k: &Self) -> Self {
        Pair(&self.0 + &k.0.scale_real(h), &self.1 + &k.1.scale_real(h))
    }
}

#[test]
fn dyson_terms_match_numerical_integration() {
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..5 {
        let h = two_frequency(&mut rng, 3);
        let hf = h.to_fourier();
        let t0 = rng.gen_range(-1.0..1.0);
        let grid = TimeGrid::new(t0, t0 + 3.0, 1e-3).unwrap().with_stride(1000).unwrap();
        let mi = C64::new(0.0, -1.0);
        let states = integrate(
            |t, s: &Pair| {
                let ht = hf.evaluate(t);
                Pair(ht.scale(mi), (&ht * &s.0).scale(mi))
            },
            Pair(Operator::zeros(3), Operator::zeros(3)),
            &grid,
        );
        let u = dyson_terms(&hf, t0, 2).unwrap();
        for (i, s) in states.iter().enumerate() {
            let t = t0 + i as f64;
            assert!((&u[0].evaluate(t) - &s.0).max_abs() < 1e-11);
            assert!((&u[1].evaluate(t) - &s.1).max_abs() < 1e-11);
        }
    }
}

#[test]
fn e2_transparent_filter_matches_sandwich_of_dyson_terms() {
    let mut rng = StdRng::seed_from_u64(12);
    let h = two_frequency(&mut rng, 2).to_fourier();
    let rho = random_density(&mut rng, 2).into_operator();
    let e = build_e(&h, &AveragingFilter::transparent(), 0.4, 2).unwrap();
    let u = dyson_terms(&h, 0.4, 2).unwrap();
    for &t in &[0.4, 1.3, 4.0] {
        let (u1, u2) = (u[0].evaluate(t), u[1].evaluate(t));
        let expected = &(&(&u2 * &rho) + &(&(&u1 * &rho) * &u1.adjoint())) + &(&rho * &u2.adjoint());
        assert!((&e.at(2, t).apply(&rho).unwrap() - &expected).max_abs() < 1e-12);
    }
}

#[test]
fn e2_matches_brute_force_expansion() {
    let mut rng = StdRng::seed_from_u64(13);
    for _ in 0..10 {
        let hh = two_frequency(&mut rng, 2);
        let filter = AveragingFilter::default_for(&hh);
        let h = hh.to_fourier();
        let t0 = 0.3;
        let rho = random_density(&mut rng, 2).into_operator();
        let e = build_e(&h, &filter, t0, 2).unwrap();
        let u = dyson_terms(&h, t0, 2).unwrap();
        let r = k(&rho);
        let oracle = u[1]
            .mul(&r)
            .add(&u[0].mul(&r).mul(&u[0].adjoint()))
            .add(&r.mul(&u[1].adjoint()))
            .lowpass(&filter);
        for &t in &[0.3, 2.0, 7.5] {
            let got = e.at(2, t).apply(&rho).unwrap();
            assert!((&got - &oracle.evaluate(t)).max_abs() < 1e-11);
        }
    }
}

#[test]
fn e1_above_cutoff_uses_averaged_u1() {
    let mut rng = StdRng::seed_from_u64(14);
    let hh = random_harmonic(&mut rng, 3, &[1.0, 1.4], 0.3, 0.5);
    let filter = AveragingFilter::new(0.2).unwrap();
    let t0 = -0.5;
    let e = build_e(&hh.to_fourier(), &filter, t0, 1).unwrap();
    let rho = random_density(&mut rng, 3).into_operator();
    let v1_t0 = hh.v1().evaluate(t0);
    for &t in &[0.0, 1.0, 3.0] {
        // Ū_1 = −i(t − t0)H_0 − V_1(t0)
        let u1_bar = &hh.h0().scale(C64::new(0.0, -(t - t0))) - &v1_t0;
        let expected = &(&u1_bar * &rho) + &(&rho * &u1_bar.adjoint());
        assert!((&e.at(1, t).apply(&rho).unwrap() - &expected).max_abs() < 1e-13);
    }
}

fn l2_oracle(h: &FourierOperator, u1: &FourierOperator, rho: &Operator, f: &AveragingFilter) -> FourierOperator {
    let avg = |x: &FourierOperator| x.lowpass(f);
    let r = k(rho);
    let u1d = u1.adjoint();
    let hb = avg(h);
    let u1b = avg(u1);
    let u1db = avg(&u1d);
    avg(&h.mul(u1)).mul(&r)
        .sub(&hb.mul(&u1b).mul(&r))
        .add(&avg(&h.mul(&r).mul(&u1d)))
        .sub(&hb.mul(&r).mul(&u1db))
        .sub(&r.mul(&avg(&u1d.mul(h))))
        .add(&r.mul(&u1db).mul(&hb))
        .sub(&avg(&u1.mul(&r).mul(h)))
        .add(&u1b.mul(&r).mul(&hb))
}

#[test]
fn l2_matches_term_list() {
    let mut rng = StdRng::seed_from_u64(15);
    for _ in 0..10 {
        let hh = two_frequency(&mut rng, 2);
        let filter = AveragingFilter::default_for(&hh);
        let h = hh.to_fourier();
        let t0 = rng.gen_range(-1.0..1.0);
        let rho = random_density(&mut rng, 2).into_operator();
        let l = build_l(&h, &filter, t0, 2).unwrap();
        let oracle = l2_oracle(&h, &hh.u1_closed_form(t0), &rho, &filter);
        for &t in &[0.0, 1.7, 6.0] {
            let got = l.at(2, t).apply(&rho).unwrap();
            assert!((&got - &oracle.evaluate(t)).max_abs() < 1e-10);
        }
        // L_1 is the commutator with H̄
        let hb = h.lowpass(&filter);
        for &t in &[0.0, 2.0] {
            let expected = commutator(&hb.evaluate(t), &rho).unwrap();
            assert!((&l.at(1, t).apply(&rho).unwrap() - &expected).max_abs() < 1e-13);
        }
    }
}

#[test]
fn l3_matches_term_list() {
    let mut rng = StdRng::seed_from_u64(16);
    for _ in 0..5 {
        let hh = two_frequency(&mut rng, 2);
        let f = AveragingFilter::default_for(&hh);
        let h = hh.to_fourier();
        let t0 = rng.gen_range(-1.0..1.0);
        let rho = random_density(&mut rng, 2).into_operator();
        let l = build_l(&h, &f, t0, 3).unwrap();
        let u = dyson_terms(&h, t0, 2).unwrap();
        let (u1, u2) = (&u[0], &u[1]);
        let avg = |x: &FourierOperator| x.lowpass(&f);
        let r = k(&rho);
        let u1d = u1.adjoint();
        let u2d = u2.adjoint();
        let hb = avg(&h);
        let u1b = avg(u1);
        let u1db = avg(&u1d);
        let u2b = avg(u2);
        let u2db = avg(&u2d);
        let two = c(2.0);
        let terms = [
            avg(&h.mul(u2)).mul(&r),
            hb.mul(&u2b).mul(&r).scale(c(-1.0)),
            avg(&h.mul(&r).mul(&u2d)),
            hb.mul(&r).mul(&u2db).scale(c(-1.0)),
            r.mul(&avg(&u2d.mul(&h))).scale(c(-1.0)),
            r.mul(&u2db).mul(&hb),
            avg(&u2.mul(&r).mul(&h)).scale(c(-1.0)),
            u2b.mul(&r).mul(&hb),
            avg(&h.mul(u1).mul(&r).mul(&u1d)),
            avg(&h.mul(u1)).mul(&r).mul(&u1db).scale(c(-1.0)),
            avg(&h.mul(&u1b).mul(&r).mul(&u1d)).scale(c(-1.0)),
            hb.mul(&avg(&u1.mul(&r).mul(&u1d))).scale(c(-1.0)),
            hb.mul(&u1b).mul(&r).mul(&u1db).scale(two),
            avg(&u1.mul(&r).mul(&u1d).mul(&h)).scale(c(-1.0)),
            u1b.mul(&r).mul(&avg(&u1d.mul(&h))),
            avg(&u1.mul(&r).mul(&u1db).mul(&h)),
            avg(&u1.mul(&r).mul(&u1d)).mul(&hb),
            u1b.mul(&r).mul(&u1db).mul(&hb).scale(-two),
            avg(&h.mul(u1)).mul(&u1b).mul(&r).scale(c(-1.0)),
            hb.mul(&u1b).mul(&u1b).mul(&r),
            avg(&h.mul(&r).mul(&u1db).mul(&u1d)).scale(c(-1.0)),
            hb.mul(&r).mul(&u1db).mul(&u1db),
            r.mul(&u1db).mul(&avg(&u1d.mul(&h))),
            r.mul(&u1db).mul(&u1db).mul(&hb).scale(c(-1.0)),
            avg(&u1.mul(&u1b).mul(&r).mul(&h)),
            u1b.mul(&u1b).mul(&r).mul(&hb).scale(c(-1.0)),
        ];
        let oracle = terms.iter().fold(FourierOperator::zero(2), |acc, x| acc.add(x));
        for &t in &[0.0, 1.1, 4.0] {
            let got = l.at(3, t).apply(&rho).unwrap();
            let want = oracle.evaluate(t);
            assert!((&got - &want).max_abs() < 1e-10, "L_3 mismatch {:e}", (&got - &want).max_abs());
        }
    }
}

#[test]
fn transparent_filter_leaves_only_the_commutator() {
    let mut rng = StdRng::seed_from_u64(17);
    for _ in 0..5 {
        let h = two_frequency(&mut rng, 3).to_fourier();
        let l = build_l(&h, &AveragingFilter::transparent(), 0.2, 3).unwrap();
        let rho = random_density(&mut rng, 3).into_operator();
        for &t in &[0.2, 1.0, 2.5] {
            let expected = commutator(&h.evaluate(t), &rho).unwrap();
            assert!((&l.at(1, t).apply(&rho).unwrap() - &expected).max_abs() < 1e-12);
            assert!(l.at(2, t).max_abs() < 1e-11);
            assert!(l.at(3, t).max_abs() < 1e-10);
        }
    }
}

#[test]
fn series_inversion_and_generator_structure() {
    let mut rng = StdRng::seed_from_u64(18);
    for _ in 0..10 {
        let dim = rng.gen_range(2..=3);
        let hh = two_frequency(&mut rng, dim);
        let filter = AveragingFilter::default_for(&hh);
        let ex = AveragedExpansion::new(&hh.to_fourier(), &filter, 0.0, 3).unwrap();
        let fe = ex.f.compose(&ex.e);
        for kk in 1..=3 {
            for &t in &[0.0, 1.3, 3.7] {
                assert!(fe.at(kk, t).max_abs() < 1e-10);
            }
        }
        let rho = random_density(&mut rng, dim).into_operator();
        for kk in 0..=3 {
            let t = rng.gen_range(0.0..5.0);
            let out = ex.l.at(kk, t).apply(&rho).unwrap();
            assert!(out.trace().norm() < 1e-11);
            assert!(out.scale(C64::new(0.0, -1.0)).hermiticity_violation() < 1e-11);
        }
    }
}

#[test]
fn f_recursion_closed_forms() {
    let mut rng = StdRng::seed_from_u64(19);
    let hh = two_frequency(&mut rng, 2);
    let filter = AveragingFilter::default_for(&hh);
    let e = build_e(&hh.to_fourier(), &filter, 0.0, 3).unwrap();
    let f = build_f(&e);
    for &t in &[0.5, 2.0] {
        let (e1, e2, e3) = (e.at(1, t), e.at(2, t), e.at(3, t));
        let f3 = &(&(&e1.compose(&e2) + &e2.compose(&e1)) - &e3) - &e1.compose(&e1).compose(&e1);
        assert!((&f.at(3, t) - &f3).max_abs() < 1e-11);
    }
}

#[test]
fn ac_stark_operator_a() {
    let hh = ac_stark_hamiltonian(0.3, 1.0).unwrap();
    let filter = AveragingFilter::default_for(&hh);
    for &t0 in &[0.0, 0.7] {
        let (a, h_eff) = operator_a(&hh.to_fourier(), &filter, t0).unwrap();
        let expected = Operator::diagonal(&[0.0225, -0.0225]);
        for &t in &[0.0, 3.0, 11.0] {
            assert!((&h_eff.evaluate(t) - &expected).max_abs() < 1e-15);
            assert!((&a.evaluate(t) - &expected).max_abs() < 1e-15);
        }
    }
}

#[test]
fn two_forms_of_the_first_order_equation_agree() {
    let mut rng = StdRng::seed_from_u64(20);
    for _ in 0..10 {
        let hh = two_frequency(&mut rng, 3);
        let filter = AveragingFilter::default_for(&hh);
        let h = hh.to_fourier();
        let (a, h_eff) = operator_a(&h, &filter, 0.2).unwrap();
        let hb = h.lowpass(&filter);
        let rho = random_density(&mut rng, 3).into_operator();
        let t = rng.gen_range(0.0..4.0);
        let (at, hbt, het) = (a.evaluate(t), hb.evaluate(t), h_eff.evaluate(t));
        let lhs = &(&commutator(&hbt, &rho).unwrap() + &(&at * &rho)) - &(&rho * &at.adjoint());
        let anti = (&at - &at.adjoint()).scale_real(0.5);
        let rhs = &commutator(&het, &rho).unwrap() + &anticommutator(&anti, &rho).unwrap();
        assert!((&lhs - &rhs).max_abs() < 1e-14);
        // two frequencies: A is not Hermitian
        assert!(anti.max_abs() > 1e-6);
        // and L_2 = Aρ − ρA† + D_2
        let l = build_l(&h, &filter, 0.2, 2).unwrap();
        let d2 = decoherence_d2(&h, &filter, 0.2).unwrap().evaluate(t);
        let l2 = &(&(&at * &rho) - &(&rho * &at.adjoint())) + &d2.apply(&rho).unwrap();
        assert!((&l.at(2, t).apply(&rho).unwrap() - &l2).max_abs() < 1e-11);
    }
}

#[test]
fn d2_vanishes_for_single_frequency() {
    let mut rng = StdRng::seed_from_u64(21);
    for _ in 0..10 {
        let dim = rng.gen_range(2..=4);
        let w = rng.gen_range(0.5..2.0);
        let mut hh = random_harmonic(&mut rng, dim, &[w], 0.3, 0.0);
        hh = HarmonicHamiltonian::new(Operator::zeros(dim), hh.terms().to_vec()).unwrap();
        let d2 = decoherence_d2(&hh.to_fourier(), &AveragingFilter::default_for(&hh), 0.1).unwrap();
        assert!(d2.max_abs_coeff() < 1e-15);
    }
}

#[test]
fn d2_two_frequency_matches_harmonic_block() {
    let mut rng = StdRng::seed_from_u64(22);
    for _ in 0..10 {
        let hh0 = two_frequency(&mut rng, 3);
        let hh = HarmonicHamiltonian::new(Operator::zeros(3), hh0.terms().to_vec()).unwrap();
        let d2 = decoherence_d2(&hh.to_fourier(), &AveragingFilter::default_for(&hh), 0.0).unwrap();
        let rho = random_density(&mut rng, 3).into_operator();
        for &t in &[0.0, 2.0, 9.0] {
            let mut expected = Operator::zeros(3);
            for n in hh.terms() {
                for m in hh.terms() {
                    let weight = 1.0 / m.omega - 1.0 / n.omega;
                    let phase = C64::from_polar(weight, (m.omega - n.omega) * t);
                    let block = &(&(&m.h.adjoint() * &rho) * &n.h) + &(&(&n.h * &rho) * &m.h.adjoint());
                    expected = &expected + &block.scale(phase);
                }
            }
            assert!((&d2.evaluate(t).apply(&rho).unwrap() - &expected).max_abs() < 1e-13);
        }
    }
}

#[test]
fn d2_zero_hamiltonian() {
    let d2 = decoherence_d2(&FourierOperator::zero(3), &AveragingFilter::new(0.5).unwrap(), 0.0).unwrap();
    assert!(d2.is_empty());
}

#[test]
fn l2_does_not_depend_on_t0() {
    let mut rng = StdRng::seed_from_u64(23);
    for _ in 0..5 {
        let hh = two_frequency(&mut rng, 3);
        let filter = AveragingFilter::default_for(&hh);
        let h = hh.to_fourier();
        let a = build_l(&h, &filter, 0.0, 2).unwrap();
        let b = build_l(&h, &filter, 1.9, 2).unwrap();
        for &t in &[0.0, 1.0, 5.0] {
            assert!((&a.at(2, t) - &b.at(2, t)).max_abs() < 1e-12);
        }
    }
}
