//! Command-line front end for `lgbound-core`: configuration files, a
//! rayon-backed executor, and CSV/JSON tables.
//!
//! The binary is a thin wrapper around [`run`]; the pieces are public so
//! they can be driven from tests or other programs.

pub mod commands;
pub mod config;
pub mod exec;
pub mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

pub use config::{CommandName, Plan, RunConfig};
pub use exec::RayonExecutor;
pub use output::Report;

/// Failures, each with its exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad flags or config (exit 2).
    #[error("{0}")]
    Config(String),
    /// Error from the numerics.
    #[error(transparent)]
    Numerics(#[from] lgbound_core::Error),
    /// Output could not be written (exit 1).
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    /// Output written but the truncation target was missed (exit 3).
    #[error("truncation error {achieved:e} exceeds the target {target:e}")]
    Quality {
        /// Worst truncation error.
        achieved: f64,
        /// Threshold.
        target: f64,
    },
}

impl CliError {
    /// Process exit code.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numerics(lgbound_core::Error::QuadratureNonConvergence { .. }) => 3,
            CliError::Numerics(_) => 2,
            CliError::Io(_) => 1,
            CliError::Quality { .. } => 3,
        }
    }
}

/// Parsed command line.
#[derive(Debug, Parser)]
#[command(name = "lgbound", version, about = "Leggett-Garg kernels for position measurements in bound systems")]
pub struct Cli {
    /// Command to run; may instead come from the config file.
    #[arg(value_enum)]
    pub command: Option<CommandName>,
    /// Flat JSON config; command-line flags override its fields.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Flags.
    #[command(flatten)]
    pub flags: RunConfig,
}

impl Cli {
    /// Merge the config file (if any) with the flags.
    pub fn effective_config(&self) -> Result<RunConfig, CliError> {
        let base = match &self.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        let mut top = self.flags.clone();
        top.command = self.command.or(top.command);
        Ok(base.overlay(top))
    }
}

/// Resolve, execute and write one command. Returns the report so callers
/// can inspect it; a missed truncation target is reported after the output
/// is written.
pub fn run(cli: &Cli) -> Result<Report, CliError> {
    let plan = cli.effective_config()?.resolve()?;
    let env = std::env::var(exec::THREADS_ENV).ok();
    let threads = exec::resolve_threads(plan.threads, env.as_deref()).map_err(CliError::Config)?;
    let executor = RayonExecutor::new(threads).map_err(|e| CliError::Config(e.to_string()))?;
    let report = commands::execute(&plan, &executor)?;
    output::emit(&report.render(plan.format, &plan.config)?, plan.output.as_deref())?;
    match report.quality {
        Some(q) if q > plan.threshold => Err(CliError::Quality {
            achieved: q,
            target: plan.threshold,
        }),
        _ => Ok(report),
    }
}

/// Parse the process arguments, run, and map the outcome to an exit code.
pub fn main_entry() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(_) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("lgbound: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
