//! Command-line front end for multiway opinion alignment: CSV ingestion,
//! subcommands and byte-stable JSON reports.

pub mod commands;
pub mod config;
pub mod ingest;
pub mod output;

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand};

use crate::config::Flags;
use crate::ingest::IngestError;

/// Environment variable capping the worker thread count.
pub const THREADS_ENV: &str = "MWA_THREADS";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Data(String),
    #[error(transparent)]
    Ingest(#[from] IngestError),
    #[error(transparent)]
    Core(#[from] mwa_core::Error),
    #[error("{0}: {1}")]
    Io(String, std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Usage(_) => 2,
            _ => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "mwa", version, about = "Multiway alignment of categorical opinion data")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Alignment of one topic subset (default: all topics).
    Score(Flags),
    /// Scores of every subset up to --max-order, optionally with a null model.
    Spectrum(Flags),
    /// Highest score at each order and the area under that curve.
    Curve(Flags),
    /// Permutation null, net score and significance of one subset.
    Null(Flags),
    /// Relative change in alignment when --topic joins a base subset.
    Delta(Flags),
    /// Cluster roll-call votes into opinion partitions, one per topic.
    ClusterVotes(Flags),
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var(THREADS_ENV) else { return Ok(()) };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Usage(format!("{THREADS_ENV} must be a positive integer, got '{raw}'")))?;
    // A second call in the same process keeps the first pool.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

fn execute(command: &Command) -> Result<(), CliError> {
    let (report, flags) = match command {
        Command::Score(f) => (commands::score(f)?, f),
        Command::Spectrum(f) => (commands::spectrum(f)?, f),
        Command::Curve(f) => (commands::curve(f)?, f),
        Command::Null(f) => (commands::null(f)?, f),
        Command::Delta(f) => (commands::delta(f)?, f),
        Command::ClusterVotes(f) => (commands::cluster_votes(f)?, f),
    };
    let text = output::render(report.into_json());
    match &flags.output {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Io(path.display().to_string(), e)),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| CliError::Io("stdout".into(), e)),
    }
}

/// Runs the CLI and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match configure_threads().and_then(|()| execute(&cli.command)) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("mwa: {e}");
            e.exit_code()
        }
    }
}
