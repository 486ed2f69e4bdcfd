//! `configprob`: sample configuration-model graphs and compute, enumerate or
//! estimate their edge probabilities.
//!
//! Exit codes: 0 on success (and when every `verify` row passes), 1 on any
//! input or validation error, 2 when `verify` reports a failing row.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

mod commands;
mod table;

pub(crate) const REPORT_FORMAT_VERSION: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Sample one multigraph by uniform stub matching.
    Generate,
    /// Undirected connection probabilities.
    Prob,
    /// Self-loop probabilities.
    Selfloop,
    /// Directed connection probabilities.
    Dprob,
    /// Ensemble size (ordered stub arrangements).
    EnsembleSize,
    /// Monte Carlo estimate of one event.
    Estimate,
    /// Compare series, enumeration and Monte Carlo.
    Verify,
    /// Draw a degree sequence from a distribution.
    SampleDegrees,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Full,
    FirstOrder,
    PaperLiteral,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "configprob",
    version,
    about = "Configuration-model connection probabilities"
)]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,
    /// Degree file: one degree per line, or "in out" per line when directed.
    #[arg(long, value_name = "FILE")]
    pub degrees: Option<PathBuf>,
    /// Inline degree distribution instead of a file, e.g. power-law:2.5:1:100.
    #[arg(long, value_name = "SPEC")]
    pub dist: Option<String>,
    /// Vertex count for --dist.
    #[arg(long = "n", value_name = "N")]
    pub vertices: Option<usize>,
    #[arg(long)]
    pub directed: bool,
    #[arg(long, num_args = 2, value_names = ["M", "N"])]
    pub pair: Option<Vec<usize>>,
    #[arg(long, conflicts_with = "pair")]
    pub all_pairs: bool,
    #[arg(long, value_name = "S")]
    pub vertex: Option<usize>,
    #[arg(long, value_enum, default_value_t = Mode::Full)]
    pub mode: Mode,
    #[arg(long, default_value_t = 100_000)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// Monte Carlo agreement band for `verify`, in standard errors.
    #[arg(long, default_value_t = 4.0)]
    pub sigmas: f64,
    /// Largest N accepted with --all-pairs.
    #[arg(long, default_value_t = 2000)]
    pub max_all_pairs: usize,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli) {
        Ok(outcome) => ExitCode::from(outcome.exit_code()),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
