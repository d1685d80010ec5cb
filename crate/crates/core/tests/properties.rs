use proptest::prelude::*;
use rand::{rngs::StdRng, SeedableRng};

use timeavg_core::averaging::{AveragingFilter, FourierOperator};
use timeavg_core::dynamics::{corotate, BlochState};
use timeavg_core::harmonic::EffectiveGenerator;
use timeavg_core::linalg::{
    bloch_compose, bloch_decompose, sandwich_superop, unvectorize, vectorize,
};
use timeavg_core::random::{random_density, random_harmonic, random_operator};

fn series(seed: u64, freqs: &[f64]) -> FourierOperator {
    let mut rng = StdRng::seed_from_u64(seed);
    freqs.iter().fold(FourierOperator::zero(2), |acc, &w| {
        acc.add(&FourierOperator::harmonic(random_operator(&mut rng, 2), w))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_evaluates_pointwise(seed in any::<u64>(), t in -5.0f64..5.0,
                                   w in prop::collection::vec(-3.0f64..3.0, 1..4)) {
        let a = series(seed, &w);
        let b = series(seed ^ 1, &w);
        let lhs = a.mul(&b).evaluate(t);
        let rhs = &a.evaluate(t) * &b.evaluate(t);
        prop_assert!((&lhs - &rhs).max_abs() < 1e-12);
    }

    #[test]
    fn derivative_inverts_integral(seed in any::<u64>(), t0 in -2.0f64..2.0, t in -5.0f64..5.0,
                                   w in prop::collection::vec(-3.0f64..3.0, 1..4)) {
        let a = series(seed, &w);
        let back = a.integral_from(t0).derivative();
        prop_assert!((&back.evaluate(t) - &a.evaluate(t)).max_abs() < 1e-11);
        prop_assert!(a.integral_from(t0).evaluate(t0).max_abs() < 1e-12);
    }

    #[test]
    fn lowpass_is_idempotent(seed in any::<u64>(), cutoff in 0.1f64..3.0, t in -5.0f64..5.0,
                             w in prop::collection::vec(-3.0f64..3.0, 1..5)) {
        let f = AveragingFilter::new(cutoff).unwrap();
        let a = series(seed, &w).lowpass(&f);
        prop_assert!((&a.lowpass(&f).evaluate(t) - &a.evaluate(t)).max_abs() == 0.0);
        prop_assert!(a.terms().iter().all(|x| x.freq.abs() < cutoff));
    }

    #[test]
    fn sandwich_vectorization(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let (l, r, x) = (random_operator(&mut rng, 3), random_operator(&mut rng, 3), random_operator(&mut rng, 3));
        let s = sandwich_superop(&l, &r).unwrap();
        let direct = &(&l * &x) * &r;
        prop_assert!((&s.apply(&x).unwrap() - &direct).max_abs() < 1e-13);
        prop_assert!(unvectorize(&vectorize(&x)) == x);
    }

    #[test]
    fn bloch_round_trip(seed in any::<u64>()) {
        let rho = random_density(&mut StdRng::seed_from_u64(seed), 3).into_operator();
        let r = bloch_decompose(&rho).unwrap();
        prop_assert!((&bloch_compose(&r) - &rho).max_abs() < 1e-14);
    }

    #[test]
    fn corotate_is_orthogonal(r in prop::array::uniform4(-1.0f64..1.0), theta in -10.0f64..10.0) {
        let s = BlochState::new(r);
        let q = corotate(&s, theta);
        prop_assert!((q.main().norm() - s.main().norm()).abs() < 1e-13);
        prop_assert!(corotate(&q, -theta).max_diff(&s) < 1e-13);
    }

    #[test]
    fn effective_generator_preserves_trace_and_hermiticity(seed in any::<u64>(), t in 0.0f64..20.0,
                                                           dw in 0.01f64..0.3) {
        let mut rng = StdRng::seed_from_u64(seed);
        let gen = EffectiveGenerator::new(random_harmonic(&mut rng, 3, &[1.0, 1.0 + dw], 0.2, 0.2));
        let rho = random_density(&mut rng, 3);
        let d = gen.master_rhs(&rho, t).unwrap();
        prop_assert!(d.trace().norm() < 1e-13);
        prop_assert!(d.hermiticity_violation() < 1e-13);
        let via_super = gen.superoperator(t).apply(rho.as_operator()).unwrap();
        prop_assert!((&via_super - &d).max_abs() < 1e-13);
    }
}

