//! Exact vs effective comparison on a sampled observable.
//!
//! Both series are passed through the same ideal low-pass (|ν| < cutoff, via
//! the DFT of the whole record). Frequencies come from the whole filtered
//! record; amplitudes and deviations are taken over the interior 10–90 % of
//! the samples, away from the wrap-around of the periodic DFT filter.

use serde::Serialize;

use timeavg_core::dynamics::{dominant_frequency, lowpass_samples};

use crate::error::{CliError, Result};
use crate::records::TrajectoryTable;

pub const DEFAULT_COLUMN: &str = "re_rho_1_2";

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComparisonMetrics {
    pub column: String,
    pub cutoff: Option<f64>,
    pub samples: usize,
    /// rad per unit of the time column
    pub frequency_a: f64,
    pub frequency_b: f64,
    pub frequency_difference: f64,
    /// half peak-to-peak over the interior
    pub amplitude_a: f64,
    pub amplitude_b: f64,
    /// amplitude_b / amplitude_a; 1 when both are zero, absent when only a is
    pub amplitude_ratio: Option<f64>,
    pub max_deviation: f64,
}

fn interior(n: usize) -> std::ops::Range<usize> {
    let lo = n / 10;
    let hi = (9 * n / 10).max(lo + 1).min(n);
    lo..hi
}

fn half_range(x: &[f64]) -> f64 {
    let (lo, hi) = x.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)));
    0.5 * (hi - lo)
}

pub fn check_grid(ta: &[f64], tb: &[f64]) -> Result<f64> {
    if ta.len() != tb.len() {
        return Err(CliError::GridMismatch(format!("{} vs {} samples", ta.len(), tb.len())));
    }
    if ta.len() < 2 {
        return Err(CliError::GridMismatch("fewer than two samples".into()));
    }
    let dt = ta[1] - ta[0];
    for (i, (a, b)) in ta.iter().zip(tb).enumerate() {
        let scale = a.abs().max(b.abs()).max(dt.abs());
        if (a - b).abs() > 1e-9 * scale {
            return Err(CliError::GridMismatch(format!("row {i}: t = {a} vs {b}")));
        }
        let expected = ta[0] + i as f64 * dt;
        if (a - expected).abs() > 1e-6 * dt.abs().max(1e-300) + 1e-12 * a.abs() {
            return Err(CliError::GridMismatch(format!("row {i}: samples are not uniformly spaced")));
        }
    }
    if !(dt > 0.0) {
        return Err(CliError::GridMismatch("time column is not increasing".into()));
    }
    Ok(dt)
}

pub fn compare_series(column: &str, times: &[f64], a: &[f64], b: &[f64], cutoff: Option<f64>) -> Result<ComparisonMetrics> {
    let dt = check_grid(times, times)?;
    if a.len() != times.len() || b.len() != times.len() {
        return Err(CliError::GridMismatch("series length differs from the time column".into()));
    }
    let (fa, fb) = match cutoff {
        Some(c) => (lowpass_samples(a, dt, c), lowpass_samples(b, dt, c)),
        None => (a.to_vec(), b.to_vec()),
    };
    let freq = |x: &[f64]| dominant_frequency(x, dt).map_err(|e| CliError::core(format!("spectrum of {column}"), e));
    let (frequency_a, frequency_b) = (freq(&fa)?, freq(&fb)?);
    let range = interior(times.len());
    let (ia, ib) = (&fa[range.clone()], &fb[range]);
    let amplitude_a = half_range(ia);
    let amplitude_b = half_range(ib);
    let amplitude_ratio = if amplitude_a > 0.0 {
        Some(amplitude_b / amplitude_a)
    } else if amplitude_b == 0.0 {
        Some(1.0)
    } else {
        None
    };
    let max_deviation = ia.iter().zip(ib).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    Ok(ComparisonMetrics {
        column: column.to_string(),
        cutoff,
        samples: times.len(),
        frequency_a,
        frequency_b,
        frequency_difference: (frequency_a - frequency_b).abs(),
        amplitude_a,
        amplitude_b,
        amplitude_ratio,
        max_deviation,
    })
}

pub fn compare_tables(a: &TrajectoryTable, b: &TrajectoryTable, cutoff: Option<f64>, column: &str) -> Result<ComparisonMetrics> {
    let missing = |which: &str| CliError::GridMismatch(format!("column `{column}` missing from {which}"));
    let ca = a.column(column).ok_or_else(|| missing("first table"))?;
    let cb = b.column(column).ok_or_else(|| missing("second table"))?;
    let times = a.times();
    check_grid(&times, &b.times())?;
    compare_series(column, &times, &ca, &cb, cutoff)
}
