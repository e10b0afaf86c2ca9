//! `redq`: exact analytics and simulation for parallel-server redundancy
//! scheduling with compatibility graphs.
//!
//! Every command reads a model file (or a bundled fixture by name), accepts
//! `--load` to override the arrival rate as a fraction of the average speed,
//! and writes comma-separated data files plus a sidecar run manifest.
//! Identical invocations with identical seeds produce byte-identical data
//! files.

mod commands;
mod fixtures;
mod manifest;
mod output;

use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Debug)]
pub enum CliError {
    /// Bad invocation or unreadable/invalid input: exit code 2.
    Usage(String),
    /// Valid request the model cannot satisfy (unstable model, enumeration
    /// cap or term budget exceeded, ...): exit code 1.
    Domain(String),
}

impl From<redq_core::Error> for CliError {
    fn from(e: redq_core::Error) -> Self {
        match e {
            redq_core::Error::ModelFile { .. } => CliError::Usage(e.to_string()),
            other => CliError::Domain(other.to_string()),
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct ModelArgs {
    /// Model file path, or one of the bundled fixtures (fig1-ring,
    /// uniform-complete-4, hom-ring-4, het-ring-4-e07, het-ring-4-e09,
    /// tree-example, singleton-fullset).
    #[arg(long)]
    pub model: String,
    /// Override the arrival rate: lambda = LOAD * (average speed).
    #[arg(long)]
    pub load: Option<f64>,
}

#[derive(Parser, Debug)]
#[command(
    name = "redq",
    version,
    about = "Exact analytics and simulation for redundancy scheduling with compatibility graphs"
)]
pub struct Cli {
    /// Directory for output files (default: $REDQ_OUT_DIR, else the current
    /// directory).
    #[arg(long, global = true)]
    pub out_dir: Option<PathBuf>,
    /// Bound internal parallelism to this many threads.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Stability and local-stability slack reports (all four formulations).
    Stability {
        #[command(flatten)]
        model: ModelArgs,
        /// Dump every constraint row instead of the ten worst per check.
        #[arg(long)]
        full: bool,
        /// Output CSV path (default: <out-dir>/stability.csv).
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Exact occupancy distribution P{Q = q} and tails, by per-state
    /// enumeration.
    Exact {
        #[command(flatten)]
        model: ModelArgs,
        /// Largest occupancy level to compute.
        #[arg(long, default_value_t = 10)]
        qmax: usize,
        /// Enumeration budget (number of states visited).
        #[arg(long, default_value_t = 100_000_000)]
        budget: u128,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Evaluate the joint probability generating function at a point.
    Pgf {
        #[command(flatten)]
        model: ModelArgs,
        /// Argument: a single value broadcast to every job type, or a
        /// comma-separated list with one entry per type.
        #[arg(long)]
        z: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Normalization constant C = P{system empty}.
    Constant {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Discrete-event simulation with per-type and per-server distributions
    /// and sojourn/waiting statistics.
    Simulate {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 1e5)]
        horizon: f64,
        /// Warmup period excluded from statistics (default: 10% of the
        /// horizon).
        #[arg(long)]
        warmup: Option<f64>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        replications: usize,
        /// Accumulate per-state occupancy probabilities.
        #[arg(long)]
        track_states: bool,
        /// Output stem; tables are written as <stem>-types.csv,
        /// <stem>-servers.csv, <stem>-delays.csv (default stem:
        /// <out-dir>/simulate).
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Heavy-traffic collapse probe: scaled MGF against its limit, scaled
    /// per-type/per-server means, and the distance of the scaled total
    /// queue to the exponential limit, along a load grid.
    Heavy {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value = "0.9,0.99,0.999")]
        loads: String,
        /// MGF test point, applied to every job type.
        #[arg(long, default_value_t = 1.0)]
        t: f64,
        /// Also simulate sojourn/waiting times at each load.
        #[arg(long)]
        sim: bool,
        #[arg(long, default_value_t = 2e5)]
        sim_horizon: f64,
        #[arg(long, default_value_t = 1)]
        sim_seed: u64,
        #[arg(long, default_value_t = 4)]
        sim_replications: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Light-traffic comparison: alpha coefficients of the model against a
    /// baseline graph (default: the uniform complete graph).
    Light {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 6)]
        qmax: usize,
        /// Baseline model file or fixture name (default: uniform complete
        /// graph on the same servers).
        #[arg(long)]
        baseline: Option<String>,
        /// Enumeration budget (number of sequences visited).
        #[arg(long, default_value_t = 100_000_000)]
        budget: u128,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Four-server stochastic dominance: complete-graph tails below the
    /// homogeneous-ring tails over a load grid, plus ring-heterogeneity gap
    /// data.
    Dominance {
        #[arg(
            long,
            default_value = "0.05,0.1,0.15,0.2,0.25,0.3,0.35,0.4,0.45,0.5,0.55,0.6,0.65,0.7,0.75,0.8,0.85,0.9,0.95"
        )]
        loads: String,
        #[arg(long, default_value_t = 50)]
        qmax: usize,
        /// Heterogeneity values for the ring-gap observation.
        #[arg(long, default_value = "0.55,0.6,0.7,0.8,0.9,0.95")]
        eps: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Worked example: the four-server ring, a concrete state, and its
    /// stationary probability.
    Demo {
        /// Load (fraction of the average speed) at which to evaluate.
        #[arg(long, default_value_t = 0.8)]
        load: f64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .is_err()
        {
            eprintln!("warning: thread pool already initialized; --threads ignored");
        }
    }
    match commands::dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
