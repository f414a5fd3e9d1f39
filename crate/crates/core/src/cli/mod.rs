//! Command-line front end: `bogoamp <subcommand> [flags]`.
//!
//! Exit codes: 0 success, 2 configuration error, 3 numerical failure (including
//! a failed `verify`).

mod commands;
mod config;
mod table;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

pub use config::{CommonArgs, Format, GainGridArgs, MatchArg, ModelKind, PortArg, PumpArgs, Resolved, RunConfig, Units};
pub use table::{fmt_num, Cell, Table};

use crate::verify::VerifyOptions;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "BOGOAMP_THREADS";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("numerical failure: {0}")]
    Numerical(#[from] crate::Error),
    #[error("{0}")]
    Failed(String),
    #[error("output error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Numerical(e) if is_config_error(e) => EXIT_CONFIG,
            CliError::Numerical(_) | CliError::Failed(_) | CliError::Io(_) => EXIT_NUMERICAL,
        }
    }
}

fn is_config_error(e: &crate::Error) -> bool {
    matches!(e, crate::Error::InvalidParameter(_))
}

#[derive(Debug, Parser)]
#[command(name = "bogoamp", version, about = "Bogoliubov-mode parametric amplifier simulator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Compare {
    Dpa,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Gain versus signal frequency: omega,gain_db,gain_linear
    GainSweep {
        #[command(flatten)]
        common: CommonArgs,
        /// Add a resonant DPA curve at the same zero-frequency gain
        #[arg(long, value_enum)]
        compare: Option<Compare>,
    },
    /// Gain, squeezing and single-mode bandwidths versus gain
    SqueezeSweep {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        grid: GainGridArgs,
    },
    /// Pump-depletion sweep over input power for the OIBA and a standard paramp
    Depletion {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        pump: PumpArgs,
    },
    /// 1 dB compression points of both pump schemes
    Compression {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        pump: PumpArgs,
    },
    /// Run the invariant suite and print a pass/fail table
    Verify {
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = VerifyOptions::default().seed)]
        seed: u64,
        #[arg(long, hide = true)]
        perturb_convention: bool,
    },
    /// Hamiltonian, dynamical matrix, eigenvalues and normal form as JSON
    ModelDump {
        #[command(flatten)]
        common: CommonArgs,
    },
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var(THREADS_ENV) else { return Ok(()) };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| CliError::Config(format!("{THREADS_ENV}={raw:?} is not a positive integer")))?;
    // A pool may already exist when called repeatedly in one process.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn finish(outcome: commands::Outcome, cfg: &Resolved) -> Result<(), CliError> {
    emit(&outcome.table.render(cfg), cfg.out.as_ref())?;
    match outcome.failure {
        Some(msg) => Err(CliError::Failed(msg)),
        None => Ok(()),
    }
}

pub fn execute(cli: Cli) -> Result<(), CliError> {
    configure_threads()?;
    let none_grid = GainGridArgs::default();
    let none_pump = PumpArgs::default();
    match cli.command {
        Command::GainSweep { common, compare } => {
            let cfg = Resolved::new("gain-sweep", &common, &none_grid, &none_pump)?;
            finish(commands::gain_sweep(&cfg, compare.is_some())?, &cfg)
        }
        Command::SqueezeSweep { common, grid } => {
            let cfg = Resolved::new("squeeze-sweep", &common, &grid, &none_pump)?;
            finish(commands::squeeze_sweep(&cfg)?, &cfg)
        }
        Command::Depletion { common, pump } => {
            let cfg = Resolved::new("depletion", &common, &none_grid, &pump)?;
            finish(commands::depletion(&cfg)?, &cfg)
        }
        Command::Compression { common, pump } => {
            let cfg = Resolved::new("compression", &common, &none_grid, &pump)?;
            finish(commands::compression(&cfg)?, &cfg)
        }
        Command::ModelDump { common } => {
            let cfg = Resolved::new("model-dump", &common, &none_grid, &none_pump)?;
            emit(&commands::model_dump(&cfg)?, cfg.out.as_ref())
        }
        Command::Verify { out, seed, perturb_convention } => {
            let (text, results) = commands::verify(&VerifyOptions { perturb_convention, seed });
            emit(&text, out.as_ref())?;
            if out.is_some() {
                eprint!("{text}");
            }
            match results.iter().filter(|r| !r.passed).count() {
                0 => Ok(()),
                n => Err(CliError::Failed(format!("{n} verification checks failed"))),
            }
        }
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code. Errors go to standard error.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("bogoamp: {e}");
            e.exit_code()
        }
    }
}
