use std::path::Path;

use serde::Serialize;

use timeavg_core::averaging::validity_ratio;
use timeavg_core::dynamics::{propagate_effective, propagate_exact, Trajectory};
use timeavg_core::harmonic::EffectiveGenerator;
use timeavg_core::linalg::purity;

use crate::compare::{compare_series, ComparisonMetrics, DEFAULT_COLUMN};
use crate::config::{Kind, ScenarioConfig};
use crate::error::{CliError, Result};
use crate::records::{emit_csv, tabulate, TrajectoryTable};

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub source: String,
    pub kind: Kind,
    pub dim: usize,
    pub steps: usize,
    pub samples: usize,
    pub sample_dt: f64,
    /// absent when averaging is transparent (no drive terms)
    pub cutoff: Option<f64>,
    pub validity_ratio: f64,
    pub validity_condition_met: bool,
    pub decoherence_free: bool,
    /// Low-pass comparison of Re ρ_12, exact as `a`, effective as `b`.
    pub comparison: Option<ComparisonMetrics>,
    pub exact_purity_drift: f64,
    pub effective_purity_drift: f64,
    pub exact_trace_renormalizations: usize,
    pub effective_min_eigenvalue: f64,
    pub effective_positivity_warnings: usize,
    pub flags: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct ScenarioRun {
    pub exact: Trajectory,
    pub effective: Trajectory,
    pub report: RunReport,
}

fn purity_drift(traj: &Trajectory) -> f64 {
    let p0 = purity(&traj.states[0]);
    traj.states.iter().map(|s| (purity(s) - p0).abs()).fold(0.0, f64::max)
}

pub fn run_scenario(cfg: &ScenarioConfig) -> Result<ScenarioRun> {
    let name = cfg.source.display().to_string();
    let mut flags = Vec::new();
    let ratio = validity_ratio(&cfg.hamiltonian);
    let valid = ratio < 1.0;
    if !valid {
        log::warn!("{name}: η/ω = {ratio:.3} ≥ 1, second-order truncation is not justified");
        flags.push(format!("validity condition unmet: eta/omega = {ratio:.6}"));
    }

    let exact = propagate_exact(&cfg.hamiltonian.to_fourier(), &cfg.initial, &cfg.grid)
        .map_err(|e| CliError::core(format!("{name}: exact propagation"), e))?;
    let generator = EffectiveGenerator::new(cfg.hamiltonian.clone());
    let effective = propagate_effective(&generator, &cfg.initial, &cfg.grid)
        .map_err(|e| CliError::core(format!("{name}: effective propagation"), e))?;

    let cutoff = Some(cfg.filter.cutoff()).filter(|c| c.is_finite());
    let comparison = if cfg.dim() >= 2 && exact.len() >= timeavg_core::dynamics::MIN_SPECTRUM_SAMPLES {
        let re12 = |t: &Trajectory| t.states.iter().map(|s| s.get(0, 1).re).collect::<Vec<_>>();
        Some(compare_series(DEFAULT_COLUMN, &exact.times, &re12(&exact), &re12(&effective), cutoff)?)
    } else {
        flags.push("comparison skipped: needs dimension ≥ 2 and at least 64 samples".into());
        None
    };

    let d = &effective.diagnostics;
    if d.positivity_warnings > 0 {
        flags.push(format!(
            "effective state left the positive cone on {} steps (min eigenvalue {:.3e})",
            d.positivity_warnings, d.min_eigenvalue
        ));
    }
    if exact.diagnostics.renormalizations > 0 {
        flags.push(format!("exact trace renormalized on {} steps", exact.diagnostics.renormalizations));
    }

    let report = RunReport {
        source: name,
        kind: cfg.kind,
        dim: cfg.dim(),
        steps: cfg.grid.steps(),
        samples: exact.len(),
        sample_dt: cfg.grid.sample_dt(),
        cutoff,
        validity_ratio: ratio,
        validity_condition_met: valid,
        decoherence_free: generator.is_unitary(),
        comparison,
        exact_purity_drift: purity_drift(&exact),
        effective_purity_drift: purity_drift(&effective),
        exact_trace_renormalizations: exact.diagnostics.renormalizations,
        effective_min_eigenvalue: d.min_eigenvalue,
        effective_positivity_warnings: d.positivity_warnings,
        flags,
    };
    Ok(ScenarioRun {
        exact,
        effective,
        report,
    })
}

impl ScenarioRun {
    pub fn tables(&self, cfg: &ScenarioConfig) -> (TrajectoryTable, TrajectoryTable) {
        (tabulate(&self.exact, &cfg.outputs), tabulate(&self.effective, &cfg.outputs))
    }

    /// Writes `exact.csv`, `effective.csv` and `report.json` into `dir`.
    pub fn write(&self, cfg: &ScenarioConfig, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
        let (exact, effective) = self.tables(cfg);
        emit_csv(&exact, dir.join("exact.csv"))?;
        emit_csv(&effective, dir.join("effective.csv"))?;
        let path = dir.join("report.json");
        let mut json = serde_json::to_string_pretty(&self.report).expect("report serializes");
        json.push('\n');
        std::fs::write(&path, json).map_err(|e| CliError::io(path, e))
    }
}
