//! Thin command-line front end over the fracks library pipeline.
//!
//! Exit codes: 0 success, 1 validation failure, 2 config error,
//! 3 unrepairable singularity.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use fracks::config::SimulationConfig;
use fracks::pipeline::{simulate_into, sweep_into, SweepAxis};
use fracks::validation;
use fracks::{mittag_leffler, FracOrder};

#[derive(Parser)]
#[command(name = "fracks", version, about = "Dephasing two-level system: exact and space-fractional Kohn-Sham potentials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum AxisArg {
    Omega,
    #[value(name = "K", alias = "k")]
    Kick,
    Alpha,
}

impl From<AxisArg> for SweepAxis {
    fn from(a: AxisArg) -> Self {
        match a {
            AxisArg::Omega => SweepAxis::Omega,
            AxisArg::Kick => SweepAxis::Kick,
            AxisArg::Alpha => SweepAxis::Alpha,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run the snapshot pipeline for every configured time.
    Simulate {
        /// Config file (sectioned key = value).
        config: PathBuf,
        /// Override the configured output directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep one parameter axis at the configured sweep time.
    Sweep {
        config: PathBuf,
        /// Axis to sweep.
        #[arg(long, value_enum)]
        axis: AxisArg,
        /// Comma-separated values overriding the configured sweep list.
        #[arg(long, value_delimiter = ',')]
        values: Option<Vec<f64>>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the pinned acceptance suite and report each check.
    Validate {
        /// Optional config; parsed and validated before the suite runs.
        config: Option<PathBuf>,
    },
    /// Evaluate the Mittag-Leffler function E_alpha(re + i im).
    Ml {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        re: f64,
        #[arg(long, default_value_t = 0.0)]
        im: f64,
    },
}

fn load_config(path: &Path, out: Option<&PathBuf>) -> fracks::Result<SimulationConfig> {
    let mut cfg = SimulationConfig::from_path(path)?;
    if let Some(dir) = out {
        cfg.output_dir = dir.to_string_lossy().into_owned();
    }
    Ok(cfg)
}

/// FRACKS_THREADS caps the rayon pool; unset means the machine default.
fn configure_threads() {
    if let Ok(value) = std::env::var("FRACKS_THREADS") {
        if let Ok(threads) = value.parse::<usize>() {
            if threads > 0 {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(threads)
                    .build_global();
            }
        }
    }
}

fn run() -> Result<i32, fracks::Error> {
    let cli = Cli::parse();
    configure_threads();
    match cli.command {
        Command::Simulate { config, out } => {
            let cfg = load_config(&config, out.as_ref())?;
            let report = simulate_into(&cfg, std::path::Path::new(&cfg.output_dir))?;
            println!(
                "run {} complete: {} snapshot blocks, {} repaired points -> {}",
                report.run_id,
                report.snapshots,
                report.repaired_points,
                report.directory.display()
            );
            Ok(0)
        }
        Command::Sweep {
            config,
            axis,
            values,
            out,
        } => {
            let cfg = load_config(&config, out.as_ref())?;
            let axis = SweepAxis::from(axis);
            let values = values.unwrap_or_else(|| match axis {
                SweepAxis::Omega => cfg.omega_sweep.clone(),
                SweepAxis::Kick => cfg.kick_sweep.clone(),
                SweepAxis::Alpha => cfg.alpha_sweep.clone(),
            });
            let report = sweep_into(&cfg, axis, &values, std::path::Path::new(&cfg.output_dir))?;
            println!(
                "sweep {} over {} values -> {}",
                report.run_id,
                report.rows.len(),
                report.directory.display()
            );
            for row in &report.rows {
                if row.flagged {
                    println!("  {} = {}: flagged (unusable combination)", axis.name(), row.value);
                } else {
                    println!(
                        "  {} = {}: sup_dist = {:.6}, rel_dist = {:.6}, repaired = {}",
                        axis.name(),
                        row.value,
                        row.sup_dist,
                        row.rel_dist,
                        row.repaired_points
                    );
                }
            }
            Ok(0)
        }
        Command::Validate { config } => {
            if let Some(path) = config {
                // Parsed for interface compatibility; the suite itself pins
                // its own parameters.
                let _ = SimulationConfig::from_path(&path)?;
            }
            let outcomes = validation::run_acceptance(None);
            print!("{}", validation::report(&outcomes));
            Ok(if validation::all_gates_pass(&outcomes) {
                0
            } else {
                1
            })
        }
        Command::Ml { alpha, re, im } => {
            let order = FracOrder::new(alpha)?;
            let value = mittag_leffler(order, Complex64::new(re, im))?;
            println!("E_{alpha}({re} + {im}i) = {} + {}i", value.re, value.im);
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
