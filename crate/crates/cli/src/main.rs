//! Command-line front end for the relativistic mechanics library.
//!
//! Exit codes: 0 success, 1 failed check or computation error, 2 invalid
//! configuration.

mod commands;
mod error;
mod report;
mod sampling;
mod scenario;

use clap::{Args, Parser, Subcommand};
use error::AppError;
use report::Report;
use scenario::{Kind, Scenario};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "relmech", version, about = "Relativistic mechanics workflows")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Override the scenario seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Override the scenario tolerance.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Suppress the human-readable summary (the JSON report still prints).
    #[arg(long, global = true)]
    quiet: bool,
}

#[derive(Args)]
struct ConfigArg {
    /// Path to the scenario JSON file.
    #[arg(long)]
    config: PathBuf,
}

#[derive(Subcommand)]
enum Cmd {
    /// Integrate a trajectory and write it as CSV.
    Simulate {
        #[command(flatten)]
        cfg: ConfigArg,
        /// Output CSV path.
        #[arg(long)]
        out: PathBuf,
    },
    /// Verify structural identities over seeded random samples.
    Check {
        #[command(subcommand)]
        what: CheckCmd,
    },
    /// Apply a chart transition to a jet and print the result.
    Transform {
        #[command(flatten)]
        cfg: ConfigArg,
        /// Optional output JSON path (default: stdout).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Integrate in the three-velocity picture and write it as CSV.
    Reduce {
        #[command(flatten)]
        cfg: ConfigArg,
        /// Output CSV path.
        #[arg(long)]
        out: PathBuf,
    },
    /// Worldsheet workflows.
    String {
        #[command(subcommand)]
        what: StringCmd,
    },
}

#[derive(Subcommand)]
enum CheckCmd {
    /// Check the identity contraction of the variational derivative.
    Noether {
        #[command(flatten)]
        cfg: ConfigArg,
    },
    /// Check reparametrization invariance of the action.
    Gauge {
        #[command(flatten)]
        cfg: ConfigArg,
    },
}

#[derive(Subcommand)]
enum StringCmd {
    /// Check worldsheet identities and sheet action invariance.
    Check {
        #[command(flatten)]
        cfg: ConfigArg,
    },
}

fn load(cfg: &ConfigArg, expected: Kind, cli_seed: Option<u64>, cli_tol: Option<f64>) -> Result<Scenario, AppError> {
    let mut sc = Scenario::from_file(&cfg.config)?;
    commands::expect_kind(&sc, expected)?;
    if let Some(s) = cli_seed {
        sc.seed = Some(s);
    }
    if let Some(t) = cli_tol {
        sc.tolerance = Some(t);
    }
    Ok(sc)
}

fn run(cli: &Cli) -> Result<Report, AppError> {
    let seed = cli.seed;
    let tol = cli.tol;
    match &cli.cmd {
        Cmd::Simulate { cfg, out } => {
            let sc = load(cfg, Kind::Simulate, seed, tol)?;
            commands::simulate(&sc, out)
        }
        Cmd::Check { what } => match what {
            CheckCmd::Noether { cfg } => {
                let sc = load(cfg, Kind::CheckNoether, seed, tol)?;
                commands::check_noether(&sc)
            }
            CheckCmd::Gauge { cfg } => {
                let sc = load(cfg, Kind::CheckGauge, seed, tol)?;
                commands::check_gauge(&sc)
            }
        },
        Cmd::Transform { cfg, out } => {
            let sc = load(cfg, Kind::Transform, seed, tol)?;
            commands::transform(&sc, out.as_deref(), cli.quiet)
        }
        Cmd::Reduce { cfg, out } => {
            let sc = load(cfg, Kind::Reduce, seed, tol)?;
            commands::reduce(&sc, out)
        }
        Cmd::String { what } => match what {
            StringCmd::Check { cfg } => {
                let sc = load(cfg, Kind::StringCheck, seed, tol)?;
                commands::string_check(&sc)
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            commands::emit(&report, cli.quiet);
            if report.pass {
                ExitCode::from(0)
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("{e}");
            match e {
                AppError::Config(_) => ExitCode::from(2),
                AppError::Runtime(_) => ExitCode::from(1),
            }
        }
    }
}
