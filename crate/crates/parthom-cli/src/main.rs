//! Command line front end: parses the line-oriented input format and
//! dispatches to the exact homology, cohomology, verification, word,
//! oracle, and route-check reports.
//!
//! Exit codes: 0 on success or pass, 1 on a verification failure, 2 on
//! an input error.

mod commands;
mod input;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::Report;
use input::InputDocument;

#[derive(Parser)]
#[command(name = "parthom", version, about = "Exact groupoid homology of partial actions on boundary-path spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Homology tower H0/H1 of the action (or map) in FILE
    Homology {
        file: PathBuf,
        /// Deepest cylinder level to compute (default: base level + 6)
        #[arg(long)]
        max_level: Option<usize>,
        /// Consecutive isomorphic levels required to stop early
        #[arg(long, default_value_t = 2)]
        window: usize,
    },
    /// Cohomology tower H^0/H^1 of the action in FILE
    Cohomology {
        file: PathBuf,
        /// Deepest cylinder level to compute (default: base level + 6)
        #[arg(long)]
        max_level: Option<usize>,
        /// Consecutive isomorphic levels required to stop early
        #[arg(long, default_value_t = 2)]
        window: usize,
    },
    /// Check the contracting-homotopy identities on random elements
    Verify {
        file: PathBuf,
        /// Random elements per identity
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Seed for the deterministic sampler
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Longest sampled group word
        #[arg(long, default_value_t = 4)]
        max_word_len: usize,
        /// Deepest sampled cylinder
        #[arg(long, default_value_t = 3)]
        max_depth: usize,
    },
    /// Rule table, domain, and range of one group word, like a.b^-1.a
    Word {
        file: PathBuf,
        word: String,
        /// Reject words that are not freely reduced
        #[arg(long)]
        strict: bool,
    },
    /// Closed-form homology of the shift groupoid from the graph alone
    GraphOracle { file: PathBuf },
    /// Compare the direct and action-route matrices of a map input
    DrCheck { file: PathBuf },
}

fn load(path: &Path) -> Result<InputDocument, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("{}: {e}", path.display()))?;
    input::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn execute(command: &Command) -> Result<Report, String> {
    match command {
        Command::Homology { file, max_level, window } => {
            commands::homology(&load(file)?, *max_level, *window)
        }
        Command::Cohomology { file, max_level, window } => {
            commands::cohomology(&load(file)?, *max_level, *window)
        }
        Command::Verify { file, samples, seed, max_word_len, max_depth } => {
            commands::verify(&load(file)?, *samples, *seed, *max_word_len, *max_depth)
        }
        Command::Word { file, word, strict } => commands::word(&load(file)?, word, *strict),
        Command::GraphOracle { file } => commands::oracle(&load(file)?),
        Command::DrCheck { file } => commands::dr_check(&load(file)?),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli.command) {
        Ok(report) => {
            print!("{}", report.text);
            if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
