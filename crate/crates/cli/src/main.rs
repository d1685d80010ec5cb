use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use timeavg::compare::DEFAULT_COLUMN;
use timeavg::{compare_tables, load_scenario, read_csv, run_scenario, CliError, Result};
use timeavg_core::averaging::{build_l, operator_a, MAX_ORDER};
use timeavg_core::harmonic::EffectiveGenerator;

#[derive(Parser)]
#[command(name = "timeavg", version, about = "Exact vs time-averaged evolution of driven quantum systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Propagate a scenario and write exact.csv, effective.csv and report.json
    Run {
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Compare two trajectory CSVs after low-pass filtering both
    Compare {
        a: PathBuf,
        b: PathBuf,
        /// Low-pass cutoff in rad per unit of the time column
        #[arg(long)]
        cutoff: f64,
        #[arg(long, default_value = DEFAULT_COLUMN)]
        column: String,
    },
    /// Print the averaged generators L_0..L_K and the effective Hamiltonian
    Derive {
        #[arg(long)]
        order: usize,
        config: PathBuf,
        /// Evaluation time (defaults to the scenario's t0)
        #[arg(long)]
        time: Option<f64>,
    },
    /// Check a scenario file without running it
    Validate { config: PathBuf },
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Run { config, out } => {
            let cfg = load_scenario(&config)?;
            let run = run_scenario(&cfg)?;
            run.write(&cfg, &out)?;
            println!(
                "{}: {} samples written to {}",
                config.display(),
                run.report.samples,
                out.display()
            );
            for flag in &run.report.flags {
                println!("flag: {flag}");
            }
        }
        Command::Compare { a, b, cutoff, column } => {
            if !(cutoff > 0.0) {
                return Err(CliError::Invalid {
                    path: a,
                    problems: vec![format!("--cutoff must be positive, got {cutoff}")],
                });
            }
            let metrics = compare_tables(&read_csv(&a)?, &read_csv(&b)?, Some(cutoff), &column)?;
            println!("{}", serde_json::to_string_pretty(&metrics).expect("metrics serialize"));
        }
        Command::Derive { order, config, time } => {
            if order > MAX_ORDER {
                return Err(CliError::Invalid {
                    path: config,
                    problems: vec![format!("--order must be at most {MAX_ORDER}, got {order}")],
                });
            }
            let cfg = load_scenario(&config)?;
            let t = time.unwrap_or(cfg.grid.t0());
            let h = cfg.hamiltonian.to_fourier();
            let t0 = cfg.grid.t0();
            let l = build_l(&h, &cfg.filter, t0, order).map_err(|e| CliError::core("derive", e))?;
            println!("cutoff = {}, t0 = {t0}, t = {t}", cfg.filter.cutoff());
            for k in 0..=l.order() {
                println!("\nL_{k}(t) ({} Fourier terms):\n{}", l.term(k).len(), l.at(k, t).matrix());
            }
            let (_, h_first) = operator_a(&h, &cfg.filter, t0).map_err(|e| CliError::core("derive", e))?;
            println!("\nfirst-order H_eff(t) = H̄ + (A + A†)/2:\n{}", h_first.evaluate(t));
            let gen = EffectiveGenerator::new(cfg.hamiltonian.clone());
            println!("\nharmonic H_eff(t):\n{}", gen.effective_hamiltonian(t));
            println!("\ndecoherence-free: {}", gen.is_unitary());
        }
        Command::Validate { config } => {
            let cfg = load_scenario(&config)?;
            println!(
                "{}: ok ({:?}, dimension {}, {} steps, {} samples, cutoff {})",
                config.display(),
                cfg.kind,
                cfg.dim(),
                cfg.grid.steps(),
                cfg.grid.sample_count(),
                cfg.filter.cutoff()
            );
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
