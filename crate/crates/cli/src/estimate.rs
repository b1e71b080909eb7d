//! `estimate`: read one dataset, compute the extrinsic median or mean,
//! and emit the estimate as JSON.

use std::path::PathBuf;

use clap::{Args, ValueEnum};
use serde::Serialize;

use exmedian::error::Result;
use exmedian::shape::read_landmarks_csv;
use exmedian::sphere::{angle_to_point, point_to_angle, Angle};
use exmedian::{
    extrinsic_mean, extrinsic_median, to_preshape, ManifoldPoint, Termination, Variant,
    WeiszfeldConfig,
};

use crate::io::{read_angles_csv, write_atomic};

#[derive(Args)]
pub struct EstimateArgs {
    /// Dataset file: an angle CSV for the circle, a landmark CSV for shapes.
    #[arg(long)]
    pub data: PathBuf,

    #[arg(long, value_enum)]
    pub manifold: Manifold,

    #[arg(long, value_enum, default_value_t = Estimator::Median)]
    pub estimator: Estimator,

    /// Solver used for the median.
    #[arg(long, value_enum, default_value_t = SolverChoice::Plain)]
    pub variant: SolverChoice,

    /// Stopping threshold on iterate displacement.
    #[arg(long, default_value_t = 1e-8)]
    pub epsilon: f64,

    #[arg(long, default_value_t = 10_000)]
    pub max_iters: usize,

    /// Write the JSON here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Manifold {
    Circle,
    Shape,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
pub enum Estimator {
    Median,
    Mean,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum SolverChoice {
    /// Weiszfeld iteration with the data-point anchor rule.
    Plain,
    /// Accelerated gradient descent on the smoothed objective.
    Fast,
}

impl SolverChoice {
    pub fn variant(self) -> Variant {
        match self {
            SolverChoice::Plain => Variant::Plain,
            SolverChoice::Fast => Variant::SmoothedAccelerated,
        }
    }
}

#[derive(Serialize)]
#[serde(rename_all = "kebab-case")]
struct EstimateOutput {
    manifold: &'static str,
    estimator: &'static str,
    estimate: EstimateValue,
    /// Margin between the ambient optimum and the set where projection
    /// degenerates: the norm on the circle, the relative eigenvalue gap on
    /// shape space.  Small values flag a nearly ill-posed estimate.
    focal_gap: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    solver: Option<SolverSummary>,
}

#[derive(Serialize)]
#[serde(untagged)]
pub enum EstimateValue {
    Angle { angle: f64 },
    Landmarks { landmarks: Vec<[f64; 2]> },
}

#[derive(Serialize)]
#[serde(rename_all = "kebab-case")]
struct SolverSummary {
    iterations: usize,
    objective: f64,
    converged: bool,
    termination: Termination,
}

pub fn run(args: &EstimateArgs) -> Result<()> {
    let points = load_points(args)?;
    let (estimate, gap, solver) = match args.estimator {
        Estimator::Median => {
            let cfg = WeiszfeldConfig {
                epsilon: args.epsilon,
                max_iters: args.max_iters,
                variant: args.variant.variant(),
                ..WeiszfeldConfig::default()
            };
            let report = extrinsic_median(&points, &cfg)?;
            let summary = SolverSummary {
                iterations: report.solver.iterations,
                objective: *report.solver.objective_trace.last().unwrap_or(&f64::NAN),
                converged: report.solver.converged,
                termination: report.solver.termination,
            };
            (render(&report.point), report.gap, Some(summary))
        }
        Estimator::Mean => {
            let (point, gap) = extrinsic_mean(&points)?;
            (render(&point), gap, None)
        }
    };

    let output = EstimateOutput {
        manifold: match args.manifold {
            Manifold::Circle => "circle",
            Manifold::Shape => "shape",
        },
        estimator: match args.estimator {
            Estimator::Median => "median",
            Estimator::Mean => "mean",
        },
        estimate,
        focal_gap: gap,
        solver,
    };
    let mut body = serde_json::to_vec_pretty(&output)
        .map_err(|e| exmedian::Error::Io(e.to_string()))?;
    body.push(b'\n');
    match &args.out {
        Some(path) => write_atomic(path, &body)?,
        None => {
            use std::io::Write;
            std::io::stdout().write_all(&body)?;
        }
    }

    if let Some(s) = &output.solver {
        if !s.converged {
            eprintln!(
                "warning: solver stopped after {} iterations without meeting \
                 the displacement threshold",
                s.iterations
            );
        } else {
            eprintln!("solved in {} iterations on {} points", s.iterations, points.len());
        }
    } else {
        eprintln!("averaged {} points", points.len());
    }
    Ok(())
}

fn load_points(args: &EstimateArgs) -> Result<Vec<ManifoldPoint>> {
    match args.manifold {
        Manifold::Circle => Ok(read_angles_csv(&args.data)?
            .into_iter()
            .map(|t| ManifoldPoint::Sphere(angle_to_point(Angle::wrap(t))))
            .collect()),
        Manifold::Shape => read_landmarks_csv(&args.data)?
            .iter()
            .map(|c| Ok(ManifoldPoint::Shape(to_preshape(c)?)))
            .collect(),
    }
}

pub fn render(point: &ManifoldPoint) -> EstimateValue {
    match point {
        ManifoldPoint::Sphere(p) => EstimateValue::Angle {
            angle: point_to_angle(p).expect("circle estimates stay on the circle").radians(),
        },
        ManifoldPoint::Shape(u) => EstimateValue::Landmarks {
            landmarks: u.coords().iter().map(|z| [z.re, z.im]).collect(),
        },
        ManifoldPoint::Spd(_) => unreachable!("the loaders build circle and shape points only"),
    }
}
