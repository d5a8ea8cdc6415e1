//! `strichartz` — classification queries, wave-packet sweeps, propagation
//! snapshots, and boundedness probes with reproducible file output.
//!
//! Exit codes: 0 ok, 2 parse error, 3 domain error, 4 resolution/fit failure.

mod commands;
mod config;
mod errors;
mod output;

use clap::{Parser, Subcommand};
use std::path::PathBuf;

use errors::CmdError;

#[derive(Parser)]
#[command(
    name = "strichartz",
    about = "Dispersive-equation admissibility arithmetic and wave-packet experiments",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify an integrability pair against the admissible ranges.
    Classify(commands::classify::Args),
    /// Run dyadic wave-packet sweeps and fit power laws (CSV + JSON).
    KnappSweep(commands::sweep::Args),
    /// Probe the spherically averaged estimate on random localized data.
    ProbeBound(commands::probe::Args),
    /// Dump |u(t, ·)| on an axis slice for plotting.
    PropagateSnapshot(commands::snapshot::Args),
}

/// Common flags shared by the file-producing subcommands.
#[derive(clap::Args, Clone)]
pub struct RunFlags {
    /// Experiment configuration file (flat key = value with [sections]).
    #[arg(long)]
    pub config: PathBuf,
    /// Directory for CSV/JSON output (created if missing).
    #[arg(long, default_value = "out")]
    pub out_dir: PathBuf,
    /// Seed override for randomized experiments.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Worker threads for independent sweep configurations.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

fn main() {
    let cli = Cli::parse(); // clap exits with code 2 on parse errors
    let result = match cli.command {
        Command::Classify(args) => commands::classify::run(args),
        Command::KnappSweep(args) => commands::sweep::run(args),
        Command::ProbeBound(args) => commands::probe::run(args),
        Command::PropagateSnapshot(args) => commands::snapshot::run(args),
    };
    if let Err(err) = result {
        eprintln!("error: {err}");
        std::process::exit(err.exit_code());
    }
}

impl From<strichartz::Error> for CmdError {
    fn from(err: strichartz::Error) -> Self {
        match err {
            strichartz::Error::Resolution(msg) => CmdError::Resolution(msg),
            other => CmdError::Domain(other.to_string()),
        }
    }
}
