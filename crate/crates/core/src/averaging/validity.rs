use std::f64::consts::TAU;

use crate::harmonic::HarmonicHamiltonian;

const SAMPLES_PER_FAST_PERIOD: f64 = 32.0;
const MAX_SAMPLES: usize = 20_000;

/// η / min_n ω_n, with η the largest |eigenvalue| of H(t) over a sampling grid.
///
/// The grid spans one period of the slowest beat ω_n − ω_m (or of the slowest
/// drive when all drives coincide) at 32 samples per fastest drive period,
/// capped at 20 000 points. Returns 0 when there are no drive terms; values
/// well below 1 satisfy the second-order truncation condition.
pub fn validity_ratio(h: &HarmonicHamiltonian) -> f64 {
    let (w_min, w_max) = match (h.min_frequency(), h.max_frequency()) {
        (Some(a), Some(b)) => (a, b),
        _ => return 0.0,
    };
    let freqs = h.frequencies();
    let slowest = freqs
        .iter()
        .flat_map(|&a| freqs.iter().map(move |&b| (a - b).abs()))
        .filter(|d| *d > 1e-12)
        .fold(w_min, f64::min);
    let span = TAU / slowest;
    let dt = TAU / (w_max * SAMPLES_PER_FAST_PERIOD);
    let n = ((span / dt).ceil() as usize).clamp(16, MAX_SAMPLES);
    let fourier = h.to_fourier();
    let eta = (0..n)
        .map(|k| {
            let t = span * k as f64 / n as f64;
            fourier.evaluate(t).spectral_radius_hermitian()
        })
        .fold(0.0, f64::max);
    eta / w_min
}
