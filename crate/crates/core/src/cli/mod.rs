//! The `qprop` command-line interface.
//!
//! Exit codes: 0 on success, 1 when a model check fails, 2 on invalid
//! usage or parameters.

mod args;
mod config;
pub mod format;
mod models;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::Serialize;
use thiserror::Error;

pub use args::*;
pub use config::ScenarioConfig;
pub use models::{execute, Report};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Model(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Model(_) => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "qprop",
    version,
    about = "Quantum-probability decision and propensity models"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Joint and marginal answer probabilities for both question orders.
    OrderEffect {
        #[command(flatten)]
        args: OrderEffectArgs,
        #[arg(long, value_enum, default_value_t)]
        output: OutputFormat,
    },
    /// Measured versus unmeasured probability of answering yes to B.
    Interference {
        #[command(flatten)]
        args: InterferenceArgs,
        #[arg(long, value_enum, default_value_t)]
        output: OutputFormat,
    },
    /// Sequential-measurement versus entangled-circuit check on random unitaries.
    Equivalence {
        #[command(flatten)]
        args: EquivalenceArgs,
        #[arg(long, value_enum, default_value_t)]
        output: OutputFormat,
    },
    /// Preference-reversal decision for a pair of costs.
    Reversal {
        #[command(flatten)]
        args: ReversalArgs,
        #[arg(long, value_enum, default_value_t)]
        output: OutputFormat,
    },
    /// Density and entropic force of one propensity curve on a grid.
    Force {
        #[command(flatten)]
        args: ForceArgs,
        #[arg(long, value_enum, default_value_t)]
        output: OutputFormat,
    },
    /// Oscillator mass, force constant and energy scale for a curve width.
    Oscillator {
        #[command(flatten)]
        args: OscillatorArgs,
        #[arg(long, value_enum, default_value_t)]
        output: OutputFormat,
    },
    /// Buyer, seller and joint propensity curves and forces on a grid.
    Joint {
        #[command(flatten)]
        args: JointArgs,
        #[arg(long, value_enum, default_value_t)]
        output: OutputFormat,
    },
    /// Work needed to move a mental state between two prices.
    Work {
        #[command(flatten)]
        args: WorkArgs,
        #[arg(long, value_enum, default_value_t)]
        output: OutputFormat,
    },
    /// Draw transaction prices from the joint propensity.
    Sample {
        #[command(flatten)]
        args: SampleArgs,
        #[arg(long, value_enum, default_value_t)]
        output: OutputFormat,
    },
    /// Run a model described by a config file.
    Run {
        config: PathBuf,
        /// Write the result here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Record written by `qprop run` in JSON mode.
#[derive(Debug, Clone, Serialize)]
pub struct RunRecord {
    pub config: Model,
    pub version: &'static str,
    pub seed: Option<u64>,
    pub wall_time_ms: f64,
    pub results: serde_json::Value,
}

fn render(report: &Report, output: OutputFormat) -> String {
    match output {
        OutputFormat::Csv => report.csv.clone(),
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(&report.payload).expect("json value");
            s.push('\n');
            s
        }
    }
}

fn run_config(path: &PathBuf) -> Result<(ScenarioConfig, Report, RunRecord), CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let config = ScenarioConfig::parse(&text)?;
    let start = Instant::now();
    let report = execute(&config.model)?;
    let record = RunRecord {
        config: config.model.clone(),
        version: VERSION,
        seed: config.model.seed(),
        wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
        results: report.payload.clone(),
    };
    Ok((config, report, record))
}

fn dispatch(command: Command) -> Result<(String, Option<PathBuf>, Report), CliError> {
    let (model, output) = match command {
        Command::OrderEffect { args, output } => (Model::OrderEffect(args), output),
        Command::Interference { args, output } => (Model::Interference(args), output),
        Command::Equivalence { args, output } => (Model::Equivalence(args), output),
        Command::Reversal { args, output } => (Model::Reversal(args), output),
        Command::Force { args, output } => (Model::Force(args), output),
        Command::Oscillator { args, output } => (Model::Oscillator(args), output),
        Command::Joint { args, output } => (Model::Joint(args), output),
        Command::Work { args, output } => (Model::Work(args), output),
        Command::Sample { args, output } => (Model::Sample(args), output),
        Command::Run { config, out } => {
            let (config, report, record) = run_config(&config)?;
            let text = match config.output {
                OutputFormat::Csv => report.csv.clone(),
                OutputFormat::Json => {
                    let mut s = serde_json::to_string_pretty(&record).expect("json value");
                    s.push('\n');
                    s
                }
            };
            return Ok((text, out, report));
        }
    };
    let report = execute(&model)?;
    Ok((render(&report, output), None, report))
}

/// Parses `args` and runs the command, returning the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok((text, out, report)) => {
            let written = match out {
                Some(path) => std::fs::write(&path, &text)
                    .map_err(|e| format!("cannot write {}: {e}", path.display())),
                None => stdout.write_all(text.as_bytes()).map_err(|e| e.to_string()),
            };
            if let Err(e) = written {
                let _ = writeln!(stderr, "error: {e}");
                return 1;
            }
            if let Some(note) = &report.note {
                let _ = writeln!(stderr, "{note}");
            }
            match &report.failure {
                Some(msg) => {
                    let _ = writeln!(stderr, "error: {msg}");
                    1
                }
                None => 0,
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            if matches!(e, CliError::Usage(_)) {
                let _ = writeln!(stderr, "\nFor more information, try '--help'.");
            }
            e.exit_code()
        }
    }
}
