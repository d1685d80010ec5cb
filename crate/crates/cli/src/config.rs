//! Scenario files.
//!
//! A scenario is a JSON object with a `kind` and the keys that kind uses:
//!
//! | kind              | keys                                               |
//! |-------------------|----------------------------------------------------|
//! | `ac_stark`        | `b` (Ω/Δ); time is measured in units of 1/Δ       |
//! | `raman`           | `rabi_1`, `rabi_2`, `detuning_1`, `detuning_2`     |
//! | `custom_harmonic` | `h0` (matrix), `terms` (list of `{h, omega}`)      |
//!
//! Shared keys: `t_max`, `dt` (required), `t0`, `stride`, `initial_state`,
//! `cutoff`, `outputs`. Complex entries are written as a number or `[re, im]`.

use std::path::{Path, PathBuf};

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use timeavg_core::averaging::AveragingFilter;
use timeavg_core::dynamics::{RamanParams, TimeGrid};
use timeavg_core::harmonic::{ac_stark_hamiltonian, HarmonicHamiltonian, HarmonicTerm};
use timeavg_core::linalg::{validate_density, DensityMatrix, Operator, TOL_HERMITIAN, TOL_POSITIVE};

use crate::error::{CliError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    AcStark,
    Raman,
    CustomHarmonic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Output {
    Rho,
    Bloch,
    Purity,
    MinEig,
}

pub const ALL_OUTPUTS: [Output; 4] = [Output::Rho, Output::Bloch, Output::Purity, Output::MinEig];

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ComplexValue {
    Real(f64),
    Pair([f64; 2]),
}

impl ComplexValue {
    pub fn value(&self) -> C64 {
        match *self {
            ComplexValue::Real(x) => C64::new(x, 0.0),
            ComplexValue::Pair([re, im]) => C64::new(re, im),
        }
    }
}

pub type MatrixSpec = Vec<Vec<ComplexValue>>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub h: MatrixSpec,
    pub omega: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum InitialState {
    Pure(Vec<ComplexValue>),
    Matrix(MatrixSpec),
}

/// The file as written.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawScenario {
    pub kind: Kind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rabi_1: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rabi_2: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detuning_1: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detuning_2: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h0: Option<MatrixSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub terms: Option<Vec<TermSpec>>,
    #[serde(default)]
    pub t0: f64,
    pub t_max: f64,
    pub dt: f64,
    #[serde(default = "default_stride")]
    pub stride: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial_state: Option<InitialState>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cutoff: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outputs: Option<Vec<Output>>,
}

fn default_stride() -> usize {
    1
}

/// Physical model after validation.
#[derive(Clone, Debug)]
pub enum Model {
    AcStark { b: f64 },
    Raman(RamanParams),
    Custom,
}

/// Validated scenario.
#[derive(Clone, Debug)]
pub struct ScenarioConfig {
    pub source: PathBuf,
    pub kind: Kind,
    pub model: Model,
    pub hamiltonian: HarmonicHamiltonian,
    pub grid: TimeGrid,
    pub initial: DensityMatrix,
    pub filter: AveragingFilter,
    pub outputs: Vec<Output>,
}

impl ScenarioConfig {
    pub fn dim(&self) -> usize {
        self.hamiltonian.dim()
    }

    pub fn wants(&self, output: Output) -> bool {
        self.outputs.contains(&output)
    }
}

pub fn load_scenario(path: impl AsRef<Path>) -> Result<ScenarioConfig> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_scenario(&text, path)
}

pub fn parse_scenario(text: &str, path: &Path) -> Result<ScenarioConfig> {
    let raw: RawScenario = serde_json::from_str(text).map_err(|e| CliError::Parse {
        path: path.to_path_buf(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    validate(&raw, path)
}

fn matrix(spec: &MatrixSpec, what: &str, problems: &mut Vec<String>) -> Option<Operator> {
    let n = spec.len();
    if n == 0 {
        problems.push(format!("{what} is empty"));
        return None;
    }
    if let Some(row) = spec.iter().position(|r| r.len() != n) {
        problems.push(format!(
            "{what} is not square: row {} has {} entries, expected {n}",
            row + 1,
            spec[row].len()
        ));
        return None;
    }
    let entries: Vec<C64> = spec.iter().flatten().map(ComplexValue::value).collect();
    match Operator::from_rows(n, &entries) {
        Ok(op) => Some(op),
        Err(e) => {
            problems.push(format!("{what}: {e}"));
            None
        }
    }
}

fn require(value: Option<f64>, key: &str, positive: bool, problems: &mut Vec<String>) -> Option<f64> {
    match value {
        None => {
            problems.push(format!("missing key `{key}`"));
            None
        }
        Some(v) if !v.is_finite() => {
            problems.push(format!("`{key}` must be finite"));
            None
        }
        Some(v) if positive && v <= 0.0 => {
            problems.push(format!("`{key}` must be positive, got {v}"));
            None
        }
        Some(v) => Some(v),
    }
}

fn reject_unused(raw: &RawScenario, problems: &mut Vec<String>) {
    let present = [
        ("b", raw.b.is_some(), Kind::AcStark),
        ("rabi_1", raw.rabi_1.is_some(), Kind::Raman),
        ("rabi_2", raw.rabi_2.is_some(), Kind::Raman),
        ("detuning_1", raw.detuning_1.is_some(), Kind::Raman),
        ("detuning_2", raw.detuning_2.is_some(), Kind::Raman),
        ("h0", raw.h0.is_some(), Kind::CustomHarmonic),
        ("terms", raw.terms.is_some(), Kind::CustomHarmonic),
    ];
    for (key, set, owner) in present {
        if set && owner != raw.kind {
            problems.push(format!("key `{key}` is not used by kind {:?}", raw.kind));
        }
    }
}

fn build_hamiltonian(raw: &RawScenario, problems: &mut Vec<String>) -> Option<(Model, HarmonicHamiltonian)> {
    match raw.kind {
        Kind::AcStark => {
            let b = require(raw.b, "b", true, problems)?;
            let h = ac_stark_hamiltonian(b, 1.0).ok()?;
            Some((Model::AcStark { b }, h))
        }
        Kind::Raman => {
            let r1 = require(raw.rabi_1, "rabi_1", false, problems);
            let r2 = require(raw.rabi_2, "rabi_2", false, problems);
            let w1 = require(raw.detuning_1, "detuning_1", true, problems);
            let w2 = require(raw.detuning_2, "detuning_2", true, problems);
            let p = RamanParams::new(r1?, r2?, w1?, w2?).map_err(|e| problems.push(e.to_string())).ok()?;
            let h = p.hamiltonian().map_err(|e| problems.push(e.to_string())).ok()?;
            Some((Model::Raman(p), h))
        }
        Kind::CustomHarmonic => {
            let h0 = match &raw.h0 {
                Some(m) => matrix(m, "h0", problems),
                None => {
                    problems.push("missing key `h0`".into());
                    None
                }
            };
            let mut terms = Vec::new();
            let mut ok = true;
            for (i, t) in raw.terms.iter().flatten().enumerate() {
                let what = format!("terms[{i}].h");
                if !(t.omega > 0.0 && t.omega.is_finite()) {
                    problems.push(format!("terms[{i}].omega must be positive and finite, got {}", t.omega));
                    ok = false;
                }
                match matrix(&t.h, &what, problems) {
                    Some(h) => terms.push(HarmonicTerm { h, omega: t.omega }),
                    None => ok = false,
                }
            }
            let h0 = h0?;
            if h0.hermiticity_violation() > TOL_HERMITIAN {
                problems.push(format!("h0 is not Hermitian (violation {:.3e})", h0.hermiticity_violation()));
                return None;
            }
            if let Some((i, t)) = terms.iter().enumerate().find(|(_, t)| t.h.dim() != h0.dim()) {
                problems.push(format!("terms[{i}].h has dimension {}, h0 has {}", t.h.dim(), h0.dim()));
                return None;
            }
            if !ok {
                return None;
            }
            let h = HarmonicHamiltonian::new(h0, terms).map_err(|e| problems.push(e.to_string())).ok()?;
            Some((Model::Custom, h))
        }
    }
}

fn default_initial(kind: Kind, dim: usize) -> DensityMatrix {
    match kind {
        // equal populations, Re ρ_12 = 1/2
        Kind::AcStark => {
            let s = std::f64::consts::FRAC_1_SQRT_2;
            DensityMatrix::pure(&[C64::new(s, 0.0), C64::new(s, 0.0)]).expect("normalized")
        }
        Kind::Raman => {
            let mut amps = vec![C64::new(0.0, 0.0); dim];
            amps[0] = C64::new(1.0, 0.0);
            DensityMatrix::pure(&amps).expect("normalized")
        }
        Kind::CustomHarmonic => DensityMatrix::maximally_mixed(dim),
    }
}

fn initial_state(raw: &RawScenario, dim: Option<usize>, problems: &mut Vec<String>) -> Option<DensityMatrix> {
    let spec = match &raw.initial_state {
        None => return dim.map(|d| default_initial(raw.kind, d)),
        Some(s) => s,
    };
    let op = match spec {
        InitialState::Pure(amps) => {
            let amps: Vec<C64> = amps.iter().map(ComplexValue::value).collect();
            match DensityMatrix::pure(&amps) {
                Ok(rho) => rho.into_operator(),
                Err(e) => {
                    problems.push(format!("initial_state.pure: {e}"));
                    return None;
                }
            }
        }
        InitialState::Matrix(m) => matrix(m, "initial_state.matrix", problems)?,
    };
    if let Some(d) = dim {
        if op.dim() != d {
            problems.push(format!("initial state has dimension {}, the Hamiltonian has {d}", op.dim()));
            return None;
        }
    }
    let report = validate_density(&op, TOL_HERMITIAN, TOL_POSITIVE);
    if !report.is_valid() {
        problems.push(format!("initial state is not a density matrix: {report}"));
        return None;
    }
    DensityMatrix::new(op).ok()
}

pub fn validate(raw: &RawScenario, path: &Path) -> Result<ScenarioConfig> {
    let mut problems = Vec::new();
    reject_unused(raw, &mut problems);
    let model = build_hamiltonian(raw, &mut problems);
    let dim = model.as_ref().map(|(_, h)| h.dim());
    let initial = initial_state(raw, dim, &mut problems);

    let mut grid_ok = true;
    if !(raw.dt > 0.0 && raw.dt.is_finite()) {
        problems.push(format!("`dt` must be positive, got {}", raw.dt));
        grid_ok = false;
    }
    if !(raw.t_max > raw.t0) {
        problems.push(format!("`t_max` ({}) must exceed `t0` ({})", raw.t_max, raw.t0));
        grid_ok = false;
    }
    if raw.stride == 0 {
        problems.push("`stride` must be at least 1".into());
        grid_ok = false;
    }
    let grid = if !grid_ok {
        None
    } else {
        match TimeGrid::new(raw.t0, raw.t_max, raw.dt).and_then(|g| g.with_stride(raw.stride)) {
            Ok(g) => Some(g),
            Err(e) => {
                problems.push(e.to_string());
                None
            }
        }
    };
    let filter = match raw.cutoff {
        Some(c) => match AveragingFilter::new(c) {
            Ok(f) => Some(f),
            Err(_) => {
                problems.push(format!("`cutoff` must be positive, got {c}"));
                None
            }
        },
        None => model.as_ref().map(|(_, h)| AveragingFilter::default_for(h)),
    };
    let outputs = raw.outputs.clone().unwrap_or_else(|| ALL_OUTPUTS.to_vec());
    if outputs.is_empty() {
        problems.push("`outputs` is empty".into());
    }

    match (model, initial, grid, filter) {
        (Some((model, hamiltonian)), Some(initial), Some(grid), Some(filter)) if problems.is_empty() => {
            Ok(ScenarioConfig {
                source: path.to_path_buf(),
                kind: raw.kind,
                model,
                hamiltonian,
                grid,
                initial,
                filter,
                outputs,
            })
        }
        _ => Err(CliError::Invalid {
            path: path.to_path_buf(),
            problems,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<ScenarioConfig> {
        parse_scenario(text, Path::new("test.json"))
    }

    fn problems(text: &str) -> Vec<String> {
        match parse(text) {
            Err(CliError::Invalid { problems, .. }) => problems,
            other => panic!("expected validation failure, got {other:?}"),
        }
    }

    #[test]
    fn minimal_ac_stark() {
        let cfg = parse(r#"{"kind": "ac_stark", "b": 0.3, "t_max": 200, "dt": 0.01}"#).unwrap();
        assert_eq!(cfg.dim(), 2);
        assert_eq!(cfg.grid.steps(), 20_000);
        assert_eq!(cfg.filter.cutoff(), 0.5);
        assert!((cfg.initial.as_operator().get(0, 1).re - 0.5).abs() < 1e-15);
        assert_eq!(cfg.outputs, ALL_OUTPUTS.to_vec());
    }

    #[test]
    fn zero_dt_is_rejected() {
        let p = problems(r#"{"kind": "ac_stark", "b": 0.3, "t_max": 200, "dt": 0}"#);
        assert!(p.iter().any(|s| s.contains("`dt`")));
    }

    #[test]
    fn every_problem_is_listed() {
        let p = problems(r#"{"kind": "raman", "rabi_1": 0.1, "detuning_1": -1, "t_max": -1, "dt": 0.1, "b": 2}"#);
        let joined = p.join("\n");
        assert!(joined.contains("rabi_2"), "{joined}");
        assert!(joined.contains("detuning_1"), "{joined}");
        assert!(joined.contains("detuning_2"), "{joined}");
        assert!(joined.contains("t_max"), "{joined}");
        assert!(joined.contains("`b`"), "{joined}");
    }

    #[test]
    fn non_density_initial_state_names_property() {
        let p = problems(
            r#"{"kind": "ac_stark", "b": 0.3, "t_max": 10, "dt": 0.01,
                "initial_state": {"matrix": [[1.1, 0], [0, -0.1]]}}"#,
        );
        assert!(p.iter().any(|s| s.contains("positivity")), "{p:?}");
        let p = problems(
            r#"{"kind": "ac_stark", "b": 0.3, "t_max": 10, "dt": 0.01,
                "initial_state": {"matrix": [[0.5, 0.1], [0.2, 0.5]]}}"#,
        );
        assert!(p.iter().any(|s| s.contains("hermiticity")), "{p:?}");
    }

    #[test]
    fn unknown_key_reports_position() {
        let err = parse("{\"kind\": \"ac_stark\",\n \"b\": 0.3, \"t_max\": 1, \"dt\": 0.1,\n \"colour\": 1}").unwrap_err();
        match err {
            CliError::Parse { line, message, .. } => {
                assert_eq!(line, 3);
                assert!(message.contains("colour"));
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(parse("{").unwrap_err().exit_code(), 1);
    }

    #[test]
    fn custom_harmonic_with_complex_entries() {
        let cfg = parse(
            r#"{"kind": "custom_harmonic", "h0": [[0.1, 0], [0, -0.1]],
                "terms": [{"h": [[0, 0], [[0.05, 0.02], 0]], "omega": 2.0}],
                "t_max": 5, "dt": 0.01, "initial_state": {"pure": [1, [0, 1]]}, "cutoff": 0.7,
                "outputs": ["rho", "purity"]}"#,
        )
        .unwrap();
        assert_eq!(cfg.hamiltonian.terms()[0].h.get(1, 0), C64::new(0.05, 0.02));
        assert_eq!(cfg.filter.cutoff(), 0.7);
        assert!((cfg.initial.as_operator().get(0, 1) - C64::new(0.0, -0.5)).norm() < 1e-15);
        assert!(cfg.wants(Output::Purity) && !cfg.wants(Output::Bloch));
    }

    #[test]
    fn custom_harmonic_rejects_bad_matrices() {
        let p = problems(
            r#"{"kind": "custom_harmonic", "h0": [[0, 1], [0, 0]],
                "terms": [{"h": [[0, 0, 0]], "omega": 0}], "t_max": 5, "dt": 0.01}"#,
        );
        let joined = p.join("\n");
        assert!(joined.contains("omega"), "{joined}");
        assert!(joined.contains("not square"), "{joined}");
    }

    #[test]
    fn raman_defaults() {
        let cfg = parse(
            r#"{"kind": "raman", "rabi_1": 0.1, "rabi_2": 0.1, "detuning_1": 1.0, "detuning_2": 1.02,
                "t_max": 10, "dt": 0.01}"#,
        )
        .unwrap();
        assert_eq!(cfg.dim(), 3);
        assert_eq!(cfg.initial.as_operator().get(0, 0).re, 1.0);
        assert!(matches!(cfg.model, Model::Raman(_)));
    }
}
