//! Scenario files, runs, CSV output and comparisons for the `timeavg` binary.

pub mod compare;
pub mod config;
pub mod error;
pub mod records;
pub mod run;

pub use compare::{compare_tables, ComparisonMetrics};
pub use config::{load_scenario, ScenarioConfig};
pub use error::{CliError, Result};
pub use records::{emit_csv, read_csv, TrajectoryTable};
pub use run::{run_scenario, RunReport, ScenarioRun};
