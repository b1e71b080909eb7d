//! `reproduce`: run the benchmark studies end to end and write their
//! result tables as CSV plus JSON (rows together with any cell issues).

use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};

use exmedian::error::{Error, Result};
use exmedian::metrics::{
    breakdown_curves, regression_table, run_experiment, stable_location_table, vm_location_table,
    ExperimentSpec, RunOutcome,
};

use crate::io::write_atomic;

#[derive(Args)]
pub struct ReproduceArgs {
    /// Which study to run.
    #[arg(value_enum)]
    pub target: Target,

    /// Directory the tables are written into.
    #[arg(long, default_value = "results")]
    pub out: PathBuf,

    /// Override the repetition count of every cell (the full studies use 20).
    #[arg(long)]
    pub reps: Option<u32>,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Target {
    /// Circle location studies: von Mises and wrapped stable grids.
    #[value(name = "table1")]
    Table1,
    /// Shape regression study over three sample sizes.
    #[value(name = "table2")]
    Table2,
    /// Contamination sweep behind the breakdown curves.
    #[value(name = "fig4-curves")]
    Fig4Curves,
}

pub fn run(args: &ReproduceArgs, seed: u64) -> Result<()> {
    let jobs: Vec<(ExperimentSpec, &str)> = match args.target {
        Target::Table1 => vec![
            (vm_location_table(), "table1-circle-vm"),
            (stable_location_table(), "table1-circle-stable"),
        ],
        Target::Table2 => vec![(regression_table(vec![50, 100, 200]), "table2-shape-regression")],
        Target::Fig4Curves => vec![(breakdown_curves(), "fig4-breakdown")],
    };

    for (mut spec, stem) in jobs {
        if let Some(reps) = args.reps {
            set_reps(&mut spec, reps);
        }
        let outcome = run_experiment(&spec, seed)?;
        write_outcome(&args.out, stem, &outcome)?;
        eprintln!(
            "{stem}: {} result rows, {} cell issues -> {}",
            outcome.table.rows.len(),
            outcome.issues.len(),
            args.out.join(stem).display()
        );
    }
    Ok(())
}

fn set_reps(spec: &mut ExperimentSpec, reps: u32) {
    match spec {
        ExperimentSpec::CircleVonMises(s) => s.reps = reps,
        ExperimentSpec::CircleStable(s) => s.reps = reps,
        ExperimentSpec::ShapeLocation(s) => s.reps = reps,
        ExperimentSpec::ShapeRegression(s) => s.reps = reps,
        ExperimentSpec::Breakdown(s) => s.reps = reps,
    }
}

fn write_outcome(out: &Path, stem: &str, outcome: &RunOutcome) -> Result<()> {
    let csv = outcome.table.to_csv_string()?;
    write_atomic(&out.join(format!("{stem}.csv")), csv.as_bytes())?;
    let json = serde_json::to_vec_pretty(outcome).map_err(|e| Error::Io(e.to_string()))?;
    write_atomic(&out.join(format!("{stem}.json")), &json)?;
    Ok(())
}
