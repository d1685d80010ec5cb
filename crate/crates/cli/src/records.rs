//! Trajectory tables and their CSV form.
//!
//! Column order: `t`, then `re_rho_i_j` for i ≤ j and `im_rho_i_j` for i < j
//! (1-based, row-major), then the Bloch components (`bx`, `by`, `bz` for a
//! qubit, the eight Gell-Mann labels for a qutrit, none otherwise), `purity`
//! and `min_eig`. Groups not requested in `outputs` are left out. Values are
//! written with 17 significant digits.

use std::path::Path;

use timeavg_core::dynamics::Trajectory;
use timeavg_core::linalg::{bloch_decompose, pauli_decompose, purity, GELLMANN_LABELS};

use crate::config::{Output, ALL_OUTPUTS};
use crate::error::{CliError, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct TrajectoryTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl TrajectoryTable {
    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.column_index(name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }

    pub fn times(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r[0]).collect()
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

fn bloch_labels(dim: usize) -> Vec<String> {
    match dim {
        2 => ["bx", "by", "bz"].iter().map(|s| s.to_string()).collect(),
        3 => GELLMANN_LABELS.iter().map(|s| s.to_string()).collect(),
        _ => Vec::new(),
    }
}

pub fn header(dim: usize, outputs: &[Output]) -> Vec<String> {
    let mut h = vec!["t".to_string()];
    for o in ALL_OUTPUTS.iter().filter(|o| outputs.contains(o)) {
        match o {
            Output::Rho => {
                for i in 0..dim {
                    for j in i..dim {
                        h.push(format!("re_rho_{}_{}", i + 1, j + 1));
                    }
                }
                for i in 0..dim {
                    for j in i + 1..dim {
                        h.push(format!("im_rho_{}_{}", i + 1, j + 1));
                    }
                }
            }
            Output::Bloch => h.extend(bloch_labels(dim)),
            Output::Purity => h.push("purity".into()),
            Output::MinEig => h.push("min_eig".into()),
        }
    }
    h
}

pub fn tabulate(traj: &Trajectory, outputs: &[Output]) -> TrajectoryTable {
    let dim = traj.dim();
    let rows = traj
        .times
        .iter()
        .zip(&traj.states)
        .zip(&traj.min_eigenvalues)
        .map(|((&t, rho), &min_eig)| {
            let mut row = vec![t];
            for o in ALL_OUTPUTS.iter().filter(|o| outputs.contains(o)) {
                match o {
                    Output::Rho => {
                        for i in 0..dim {
                            for j in i..dim {
                                row.push(rho.get(i, j).re);
                            }
                        }
                        for i in 0..dim {
                            for j in i + 1..dim {
                                row.push(rho.get(i, j).im);
                            }
                        }
                    }
                    Output::Bloch => match dim {
                        2 => row.extend(pauli_decompose(rho).expect("qubit")),
                        3 => row.extend(bloch_decompose(rho).expect("qutrit")),
                        _ => {}
                    },
                    Output::Purity => row.push(purity(rho)),
                    Output::MinEig => row.push(min_eig),
                }
            }
            row
        })
        .collect();
    TrajectoryTable {
        header: header(dim, outputs),
        rows,
    }
}

pub fn format_value(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn emit_csv(table: &TrajectoryTable, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let csv_err = |e: csv::Error| CliError::Csv {
        path: path.to_path_buf(),
        message: e.to_string(),
    };
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_path(path)
        .map_err(csv_err)?;
    w.write_record(&table.header).map_err(csv_err)?;
    for row in &table.rows {
        w.write_record(row.iter().map(|&x| format_value(x))).map_err(csv_err)?;
    }
    w.flush().map_err(|e| CliError::io(path, e))
}

pub fn read_csv(path: impl AsRef<Path>) -> Result<TrajectoryTable> {
    let path = path.as_ref();
    let csv_err = |message: String| CliError::Csv {
        path: path.to_path_buf(),
        message,
    };
    let mut r = csv::Reader::from_path(path).map_err(|e| csv_err(e.to_string()))?;
    let header: Vec<String> = r
        .headers()
        .map_err(|e| csv_err(e.to_string()))?
        .iter()
        .map(str::to_string)
        .collect();
    if header.first().map(String::as_str) != Some("t") {
        return Err(csv_err("first column must be `t`".into()));
    }
    let mut rows = Vec::new();
    for (n, rec) in r.records().enumerate() {
        let rec = rec.map_err(|e| csv_err(e.to_string()))?;
        let row = rec
            .iter()
            .map(|f| f.trim().parse::<f64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| csv_err(format!("row {}: {e}", n + 2)))?;
        rows.push(row);
    }
    Ok(TrajectoryTable { header, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn qubit_header() {
        let h = header(2, &ALL_OUTPUTS);
        assert_eq!(
            h,
            ["t", "re_rho_1_1", "re_rho_1_2", "re_rho_2_2", "im_rho_1_2", "bx", "by", "bz", "purity", "min_eig"]
        );
        assert_eq!(header(3, &[Output::Purity, Output::Rho]).len(), 1 + 6 + 3 + 1);
        assert_eq!(header(3, &[Output::Bloch])[1], "r_x");
    }

    proptest! {
        #[test]
        fn csv_round_trip(rows in prop::collection::vec(prop::collection::vec(any::<f64>().prop_filter("finite", |x| x.is_finite()), 3), 1..20)) {
            let table = TrajectoryTable {
                header: vec!["t".into(), "a".into(), "b".into()],
                rows,
            };
            let dir = tempfile::tempdir().unwrap();
            let path = dir.path().join("x.csv");
            emit_csv(&table, &path).unwrap();
            let back = read_csv(&path).unwrap();
            prop_assert_eq!(back, table);
        }
    }
}
