//! `bergman`: weight classification, operator functionals and verification suites.
//!
//! Exit codes: 0 pass, 1 usage or specification error, 2 mathematical flag
//! (divergence, failed hypothesis, inconclusive classification, failed check).

mod config;
mod functional;
mod output;
mod verify;
mod weight;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use bergman_core::Error;

use crate::config::parse_bracket;
use crate::functional::Kind;

#[derive(Debug, Parser)]
#[command(name = "bergman", version, about = "Weighted Bergman space functionals for doubling weights")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify a radial weight and tabulate its tail functionals
    Weight {
        /// e.g. `std:alpha=1`, `logpow:alpha=-1,beta=-2`, `file:weights.csv`
        spec: String,
        #[command(flatten)]
        common: Common,
    },
    /// Compute one operator functional for a scenario file
    Functional {
        kind: Kind,
        #[arg(long)]
        scenario: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Run a verification suite (`all` runs every suite)
    Verify {
        suite: String,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Test-function shape parameter γ
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Finest dyadic level J
    #[arg(long)]
    pub levels: Option<u32>,
    /// Matrix oracle truncation N
    #[arg(long = "oracle-N", alias = "oracle-n")]
    pub oracle_n: Option<usize>,
    /// Output directory
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
    /// Assertion bracket `lo,hi`
    #[arg(long, value_parser = parse_bracket)]
    pub bracket: Option<(f64, f64)>,
    /// Add wall times to reports (makes them non-reproducible)
    #[arg(long)]
    pub record_timing: bool,
    /// Accepted for compatibility; all computations run on one thread
    #[arg(long)]
    pub workers: Option<usize>,
}

/// What a command produced, mapped to the exit code.
pub enum Outcome {
    Pass,
    Flagged(String),
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
    let result = match cli.command {
        Command::Weight { spec, common } => weight::run(&spec, &common),
        Command::Functional { kind, scenario, common } => functional::run(kind, &scenario, &common),
        Command::Verify { suite, common } => verify::run(&suite, &common),
    };
    match result {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Flagged(msg)) => {
            eprintln!("flagged: {msg}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_mathematical_flag() { 2 } else { 1 })
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
