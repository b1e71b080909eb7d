//! `regress`: local extrinsic regression over a covariate file, robust
//! (median) or plain (mean), with optional bandwidth cross-validation.

use std::path::PathBuf;

use clap::{ArgGroup, Args, ValueEnum};
use serde::Serialize;

use exmedian::error::Result;
use exmedian::shape::read_landmarks_csv;
use exmedian::sphere::{angle_to_point, Angle};
use exmedian::{
    cv_bandwidth, elr_fit, relr_fit, relr_fit_fast, to_preshape, CvConfig, CvReport, FitMethod,
    KernelFamily, KernelSpec, ManifoldPoint, RegressionDataset, WeiszfeldConfig,
};

use crate::estimate::{render, EstimateValue, Manifold, SolverChoice};
use crate::io::{read_angles_csv, read_covariates_csv, write_atomic};

#[derive(Args)]
#[command(group = ArgGroup::new("smoothing").required(true))]
pub struct RegressArgs {
    /// Training covariates (CSV, one row per observation).
    #[arg(long)]
    pub covariates: PathBuf,

    /// Responses: an angle CSV for the circle, a landmark CSV for shapes.
    #[arg(long)]
    pub responses: PathBuf,

    #[arg(long, value_enum)]
    pub manifold: Manifold,

    /// Query covariates; the fit is evaluated at the training rows when absent.
    #[arg(long)]
    pub eval: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = Method::Median)]
    pub method: Method,

    /// Solver used for the median fits.
    #[arg(long, value_enum, default_value_t = SolverChoice::Plain)]
    pub variant: SolverChoice,

    #[arg(long, value_enum, default_value_t = Kernel::Gaussian)]
    pub kernel: Kernel,

    /// Fixed kernel bandwidth.
    #[arg(long, group = "smoothing")]
    pub bandwidth: Option<f64>,

    /// Comma-separated bandwidth grid to cross-validate instead.
    #[arg(long, group = "smoothing", value_delimiter = ',')]
    pub cv: Option<Vec<f64>>,

    /// Folds for cross-validation.
    #[arg(long, default_value_t = 5)]
    pub folds: usize,

    #[arg(long, default_value_t = 1e-8)]
    pub epsilon: f64,

    #[arg(long, default_value_t = 10_000)]
    pub max_iters: usize,

    /// Write the JSON here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
pub enum Method {
    Median,
    Mean,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Kernel {
    Gaussian,
    Epanechnikov,
}

impl Kernel {
    fn family(self) -> KernelFamily {
        match self {
            Kernel::Gaussian => KernelFamily::Gaussian,
            Kernel::Epanechnikov => KernelFamily::Epanechnikov,
        }
    }
}

#[derive(Serialize)]
#[serde(rename_all = "kebab-case")]
struct RegressOutput {
    manifold: &'static str,
    method: &'static str,
    kernel: KernelOut,
    #[serde(skip_serializing_if = "Option::is_none")]
    cv: Option<CvReport>,
    points: Vec<PointOut>,
}

#[derive(Serialize)]
#[serde(rename_all = "kebab-case")]
struct KernelOut {
    family: &'static str,
    bandwidth: f64,
}

#[derive(Serialize)]
#[serde(rename_all = "kebab-case")]
struct PointOut {
    index: usize,
    covariates: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    estimate: Option<EstimateValue>,
    #[serde(skip_serializing_if = "Option::is_none")]
    iterations: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    converged: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

pub fn run(args: &RegressArgs, seed: u64) -> Result<()> {
    let covariates = read_covariates_csv(&args.covariates)?;
    let responses = load_responses(args)?;
    let eval = match &args.eval {
        Some(path) => read_covariates_csv(path)?,
        None => covariates.clone(),
    };
    let data = RegressionDataset::new(covariates, responses)?;

    let weiszfeld = WeiszfeldConfig {
        epsilon: args.epsilon,
        max_iters: args.max_iters,
        variant: args.variant.variant(),
        ..WeiszfeldConfig::default()
    };
    let family = args.kernel.family();

    let (bandwidth, cv) = match &args.cv {
        Some(grid) => {
            let method = match args.method {
                Method::Median => FitMethod::Median,
                Method::Mean => FitMethod::Mean,
            };
            let config = CvConfig {
                folds: args.folds,
                weiszfeld: weiszfeld.clone(),
                ..CvConfig::new(grid.clone(), method, family, seed)
            };
            let report = cv_bandwidth(&data, &config)?;
            (report.chosen, Some(report))
        }
        None => (args.bandwidth.expect("clap enforces bandwidth xor cv"), None),
    };
    let kernel = KernelSpec::new(family, bandwidth)?;

    let fit = match args.method {
        Method::Median => match args.variant {
            SolverChoice::Plain => relr_fit(&data, &eval, &kernel, &weiszfeld)?,
            SolverChoice::Fast => relr_fit_fast(&data, &eval, &kernel, &weiszfeld)?,
        },
        Method::Mean => elr_fit(&data, &eval, &kernel)?,
    };

    let mut failures = 0usize;
    let points: Vec<PointOut> = fit
        .estimates
        .iter()
        .zip(&eval)
        .enumerate()
        .map(|(index, (estimate, x0))| match estimate {
            Ok(est) => PointOut {
                index,
                covariates: x0.clone(),
                estimate: Some(render(&est.point)),
                iterations: est.solver.as_ref().map(|s| s.iterations),
                converged: est.solver.as_ref().map(|s| s.converged),
                error: None,
            },
            Err(e) => {
                failures += 1;
                PointOut {
                    index,
                    covariates: x0.clone(),
                    estimate: None,
                    iterations: None,
                    converged: None,
                    error: Some(e.to_string()),
                }
            }
        })
        .collect();

    let output = RegressOutput {
        manifold: match args.manifold {
            Manifold::Circle => "circle",
            Manifold::Shape => "shape",
        },
        method: match args.method {
            Method::Median => "median",
            Method::Mean => "mean",
        },
        kernel: KernelOut {
            family: match args.kernel {
                Kernel::Gaussian => "gaussian",
                Kernel::Epanechnikov => "epanechnikov",
            },
            bandwidth,
        },
        cv,
        points,
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

    if failures == 0 {
        eprintln!("fitted {} query points", output.points.len());
    } else {
        eprintln!(
            "fitted {} query points; {failures} failed locally and carry error records",
            output.points.len()
        );
    }
    Ok(())
}

fn load_responses(args: &RegressArgs) -> Result<Vec<ManifoldPoint>> {
    match args.manifold {
        Manifold::Circle => Ok(read_angles_csv(&args.responses)?
            .into_iter()
            .map(|t| ManifoldPoint::Sphere(angle_to_point(Angle::wrap(t))))
            .collect()),
        Manifold::Shape => read_landmarks_csv(&args.responses)?
            .iter()
            .map(|c| Ok(ManifoldPoint::Shape(to_preshape(c)?)))
            .collect(),
    }
}
