//! Batch command-line entry point: simulate datasets, run location
//! estimates, fit local regressions, and reproduce the benchmark tables.
//! Every command is deterministic given its inputs and `--seed`; results go
//! to files or standard output as machine-readable CSV/JSON, while
//! human-oriented summaries go to standard error.

mod estimate;
mod io;
mod regress;
mod reproduce;
mod simulate;

use clap::{Parser, Subcommand};
use exmedian::error::Error;

#[derive(Parser)]
#[command(
    name = "exmedian",
    version,
    about = "Robust extrinsic statistics on embedded manifolds",
    propagate_version = true
)]
struct Cli {
    /// Root seed for every random draw; there is no other entropy source.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,

    /// Worker threads for grid cells and query points (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate the datasets described by an experiment spec, with a manifest.
    Simulate(simulate::SimulateArgs),
    /// Extrinsic mean or median of one dataset, as JSON.
    Estimate(estimate::EstimateArgs),
    /// Local regression of manifold responses on Euclidean covariates.
    Regress(regress::RegressArgs),
    /// Re-run a benchmark study grid and write its result tables.
    Reproduce(reproduce::ReproduceArgs),
}

/// 0 success (including flagged non-convergence), 2 input or schema errors,
/// 3 mathematical degeneracy.
fn exit_code(e: &Error) -> i32 {
    match e {
        Error::FocalPoint(_) => 3,
        _ => 2,
    }
}

fn main() {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: could not size the worker pool: {e}");
            std::process::exit(2);
        }
    }
    let result = match cli.command {
        Command::Simulate(args) => simulate::run(&args, cli.seed),
        Command::Estimate(args) => estimate::run(&args),
        Command::Regress(args) => regress::run(&args, cli.seed),
        Command::Reproduce(args) => reproduce::run(&args, cli.seed),
    };
    if let Err(e) = result {
        eprintln!("error: {e}");
        std::process::exit(exit_code(&e));
    }
}
