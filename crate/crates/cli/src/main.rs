//! `summa`: batch runner for classifications, regularity checks and
//! Simons-type verification experiments.
//!
//! Exit status: 0 all satisfied, 1 a violation or refutation, 2 a config or
//! usage error, 3 only hypothesis-unmet failures.

mod classify;
mod config;
mod regularity;
mod report;
mod verify;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::{load, ConfigError};
use report::{Format, Report};

#[derive(Debug, Parser)]
#[command(
    name = "summa",
    version,
    about = "Summability classifiers and Simons-type equality experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify sequences under convergence methods.
    Classify(Common),
    /// Falsify the Toeplitz conditions for summability matrices.
    Regularity(Common),
    /// Run simons, theorem31, cor33, rainwater or audit experiments.
    Verify(Common),
}

#[derive(Debug, Args)]
pub struct Common {
    /// JSON experiment config.
    #[arg(long)]
    config: PathBuf,
    /// Report destination; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Overrides SUMMA_SEED and the config seed.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    depth: Option<u64>,
    #[arg(long)]
    tol_exact: Option<f64>,
    #[arg(long)]
    tol_numeric: Option<f64>,
    #[arg(long)]
    tol_sampled: Option<f64>,
    /// Worker threads; all cores when omitted.
    #[arg(long)]
    jobs: Option<usize>,
}

fn build(command: &Command) -> anyhow::Result<(Report, &Common)> {
    Ok(match command {
        Command::Classify(c) => (classify::run(&load(&c.config)?, c)?, c),
        Command::Regularity(c) => (regularity::run(&load(&c.config)?, c)?, c),
        Command::Verify(c) => (verify::run(&load(&c.config)?, c)?, c),
    })
}

fn run(cli: &Cli) -> anyhow::Result<u8> {
    let common = match &cli.command {
        Command::Classify(c) | Command::Regularity(c) | Command::Verify(c) => c,
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(common.jobs.unwrap_or(0))
        .build()?;
    let (report, common) = pool.install(|| build(&cli.command))?;
    let rendered = report.render(common.format);
    match &common.out {
        Some(path) => fs::write(path, &rendered)?,
        None => std::io::stdout().write_all(rendered.as_bytes())?,
    }
    for line in &report.summary {
        eprintln!("{line}");
    }
    Ok(report.exit_code())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            if e.downcast_ref::<ConfigError>().is_some() {
                eprintln!("config error: {e}");
            } else {
                eprintln!("error: {e:#}");
            }
            ExitCode::from(2)
        }
    }
}
