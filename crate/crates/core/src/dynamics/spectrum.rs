use std::f64::consts::{PI, TAU};

use num_complex::Complex64 as C64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};

pub const MIN_SPECTRUM_SAMPLES: usize = 64;

/// Bin spacing 2π/(N·dt) of an N-sample record before interpolation.
pub fn frequency_resolution(n: usize, dt: f64) -> f64 {
    TAU / (n as f64 * dt)
}

/// Angular frequency of the strongest non-DC spectral peak.
///
/// The mean is removed, a Hann window applied and the record zero-padded to at
/// least 8N points; the peak is refined by a parabola through the
/// log-magnitudes of its neighbours. A constant signal returns 0.
pub fn dominant_frequency(signal: &[f64], dt: f64) -> Result<f64> {
    let n = signal.len();
    if n < MIN_SPECTRUM_SAMPLES {
        return Err(Error::TooFewSamples {
            found: n,
            required: MIN_SPECTRUM_SAMPLES,
        });
    }
    if !(dt > 0.0) || !dt.is_finite() {
        return Err(Error::InvalidParameter(format!("sample spacing must be positive, got {dt}")));
    }
    if signal.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite);
    }
    let mean = signal.iter().sum::<f64>() / n as f64;
    let scale = signal.iter().fold(mean.abs(), |m, x| m.max(x.abs())).max(f64::MIN_POSITIVE);
    if signal.iter().all(|x| (x - mean).abs() <= 1e-14 * scale) {
        return Ok(0.0);
    }
    let padded = (8 * n).next_power_of_two();
    let mut buf: Vec<C64> = signal
        .iter()
        .enumerate()
        .map(|(k, x)| {
            let w = 0.5 - 0.5 * (TAU * k as f64 / (n - 1) as f64).cos();
            C64::new((x - mean) * w, 0.0)
        })
        .chain(std::iter::repeat(C64::new(0.0, 0.0)))
        .take(padded)
        .collect();
    FftPlanner::new().plan_fft_forward(padded).process(&mut buf);
    let half = padded / 2;
    let mag: Vec<f64> = buf[..=half].iter().map(|z| z.norm()).collect();
    let peak = (1..half)
        .max_by(|&a, &b| mag[a].total_cmp(&mag[b]))
        .unwrap_or(1);
    let ln = |k: usize| mag[k].max(f64::MIN_POSITIVE).ln();
    let (a, b, c) = (ln(peak - 1), ln(peak), ln(peak + 1));
    let denom = a - 2.0 * b + c;
    let offset = if denom.abs() > 0.0 { 0.5 * (a - c) / denom } else { 0.0 };
    Ok(TAU * (peak as f64 + offset.clamp(-0.5, 0.5)) / (padded as f64 * dt))
}

/// Ideal low-pass of a uniformly sampled signal: DFT bins with angular
/// frequency |ν| ≥ cutoff are zeroed. The record is treated as periodic.
pub fn lowpass_samples(signal: &[f64], dt: f64, cutoff: f64) -> Vec<f64> {
    let n = signal.len();
    if n == 0 {
        return Vec::new();
    }
    let mut buf: Vec<C64> = signal.iter().map(|&x| C64::new(x, 0.0)).collect();
    let mut planner = FftPlanner::new();
    planner.plan_fft_forward(n).process(&mut buf);
    for (k, z) in buf.iter_mut().enumerate() {
        let index = if k <= n / 2 { k } else { n - k };
        let nu = 2.0 * PI * index as f64 / (n as f64 * dt);
        if nu >= cutoff {
            *z = C64::new(0.0, 0.0);
        }
    }
    planner.plan_fft_inverse(n).process(&mut buf);
    buf.iter().map(|z| z.re / n as f64).collect()
}
