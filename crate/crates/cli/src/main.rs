//! `oracleid`: generate concept classes, run identification experiments,
//! verify the checkable properties and sweep complexity bounds.
//!
//! Per-run output is JSON lines: a `config` line echoing the resolved
//! settings, one line per trace, then a `summary` line. Bound sweeps are CSV
//! with the resolved config echoed on stderr. Every subcommand is
//! deterministic for a given `--seed` and exits nonzero iff a check fails.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use serde::Serialize;

mod class_source;
mod cmd;

#[derive(Parser, Debug)]
#[command(name = "oracleid", version, about = "Oracle identification experiments")]
struct Cli {
    /// Base seed for every random choice.
    #[arg(long, global = true, env = "ORACLEID_SEED", default_value_t = 0)]
    seed: u64,

    /// Numeric tolerance for feasibility and LP checks.
    #[arg(long, global = true, default_value_t = 1e-9, value_parser = positive_f64)]
    tolerance: f64,

    /// Worker threads for independent trials and grid cells (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,

    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a generated concept class as JSON.
    Gen(cmd::gen::GenArgs),
    /// Identify hidden strings and report one JSON trace per (x, trial).
    Run(cmd::run::RunArgs),
    /// Run a verification suite; exit status 1 if any check fails.
    Verify(cmd::verify::VerifyArgs),
    /// Sweep the complexity bounds over an (N, M) grid as CSV.
    ///
    /// Columns: M,N,brute_force_C,closed_form_C,lp_primal,lp_dual,k_lower,lower_value.
    /// Cells undefined for a given (M, N) are left empty.
    Bounds(cmd::bounds::BoundsArgs),
}

fn positive_f64(s: &str) -> std::result::Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        Ok(_) => Err("must be a positive number".into()),
        Err(e) => Err(e.to_string()),
    }
}

/// Settings shared by every subcommand.
#[derive(Clone, Debug, Serialize)]
pub struct Globals {
    pub seed: u64,
    pub tolerance: f64,
    pub jobs: usize,
    pub output: Option<PathBuf>,
}

impl Globals {
    pub fn writer(&self) -> Result<Box<dyn Write>> {
        Ok(match &self.output {
            Some(path) => Box::new(BufWriter::new(
                File::create(path).with_context(|| format!("creating {}", path.display()))?,
            )),
            None => Box::new(BufWriter::new(io::stdout().lock())),
        })
    }

    pub fn pool(&self) -> Result<rayon::ThreadPool> {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.jobs)
            .build()
            .context("building worker pool")
    }
}

/// Writes one JSON value per line.
pub fn emit(out: &mut dyn Write, value: &impl Serialize) -> Result<()> {
    serde_json::to_writer(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let globals = Globals {
        seed: cli.seed,
        tolerance: cli.tolerance,
        jobs: cli.jobs,
        output: cli.output,
    };
    let outcome = match cli.command {
        Command::Gen(args) => cmd::gen::execute(&globals, args),
        Command::Run(args) => cmd::run::execute(&globals, args),
        Command::Verify(args) => cmd::verify::execute(&globals, args),
        Command::Bounds(args) => cmd::bounds::execute(&globals, args),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
