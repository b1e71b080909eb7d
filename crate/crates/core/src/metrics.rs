//! Experiment harness: error metrics, the tabular result format, the JSON
//! experiment schema, and the cell-by-cell drivers behind the benchmark
//! tables and breakdown curves.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimators::{extrinsic_mean, extrinsic_median, EstimatorKind};
use crate::kernel::{KernelFamily, KernelSpec};
use crate::manifold::{extrinsic_distance, ManifoldPoint};
use crate::relr::{cv_bandwidth, elr_fit, relr_fit, CvConfig, CvLoss, FitMethod, RegressionFit};
use crate::shape::full_procrustes_distance;
use crate::simgen::{
    cell_rng, coherent_outlier_mean, contaminate_angles, contaminate_shapes,
    generate_shape_regression, sample_von_mises, sample_wrapped_stable, ContaminationMechanism,
    ContaminationSpec, ShapeGenSpec, WrappedStableSpec,
};
use crate::sphere::{angle_to_point, Angle};
use crate::weiszfeld::WeiszfeldConfig;

// ─── Comparison metrics ─────────────────────────────────────────────────────

/// The comparison metric native to each manifold: full Procrustes distance
/// for planar shapes, the ambient chord distance otherwise.
pub fn comparison_distance(a: &ManifoldPoint, b: &ManifoldPoint) -> Result<f64> {
    match (a, b) {
        (ManifoldPoint::Shape(u), ManifoldPoint::Shape(v)) => {
            if u.k() != v.k() {
                return Err(Error::InvalidInput("landmark counts differ".into()));
            }
            Ok(full_procrustes_distance(u, v))
        }
        _ => extrinsic_distance(a, b),
    }
}

/// Mean (unsquared) comparison distance between paired fits and references.
pub fn md_obs(fits: &[ManifoldPoint], reference: &[ManifoldPoint]) -> Result<f64> {
    paired_distances(fits, reference)
        .map(|ds| ds.iter().sum::<f64>() / ds.len() as f64)
}

/// Root mean squared comparison distance between paired fits and references.
pub fn rmse_true(fits: &[ManifoldPoint], reference: &[ManifoldPoint]) -> Result<f64> {
    paired_distances(fits, reference)
        .map(|ds| (ds.iter().map(|d| d * d).sum::<f64>() / ds.len() as f64).sqrt())
}

fn paired_distances(fits: &[ManifoldPoint], reference: &[ManifoldPoint]) -> Result<Vec<f64>> {
    if fits.is_empty() || fits.len() != reference.len() {
        return Err(Error::InvalidInput(format!(
            "{} fits against {} references",
            fits.len(),
            reference.len()
        )));
    }
    fits.iter()
        .zip(reference)
        .map(|(f, r)| comparison_distance(f, r))
        .collect()
}

// ─── Result tables ──────────────────────────────────────────────────────────

/// One aggregated experiment cell.  Grid coordinates that do not apply to a
/// scenario stay `None` and serialize as empty CSV fields.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub scenario: String,
    pub n: Option<usize>,
    pub r: Option<f64>,
    pub alpha: Option<f64>,
    pub tau: Option<f64>,
    pub estimator: String,
    pub metric: String,
    pub value: f64,
    pub stderr: f64,
    pub reps: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ResultTable {
    pub rows: Vec<ResultRow>,
}

impl ResultTable {
    pub fn push(&mut self, row: ResultRow) {
        self.rows.push(row);
    }

    pub fn extend(&mut self, other: ResultTable) {
        self.rows.extend(other.rows);
    }

    /// CSV with the fixed column order
    /// `scenario,n,r,alpha,tau,estimator,metric,value,stderr,reps`.
    pub fn to_csv_string(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for row in &self.rows {
            w.serialize(row)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
    }

    pub fn from_csv_str(text: &str) -> Result<ResultTable> {
        let mut rows = Vec::new();
        let mut r = csv::Reader::from_reader(text.as_bytes());
        for record in r.deserialize() {
            rows.push(record?);
        }
        Ok(ResultTable { rows })
    }

    pub fn to_json_string(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// The single row matching the given coordinates (floats compared to
    /// 1e-12), if any.
    pub fn lookup(
        &self,
        scenario: &str,
        estimator: &str,
        metric: &str,
        n: Option<usize>,
        r: Option<f64>,
        alpha: Option<f64>,
        tau: Option<f64>,
    ) -> Option<&ResultRow> {
        fn close(a: Option<f64>, b: Option<f64>) -> bool {
            match (a, b) {
                (None, None) => true,
                (Some(x), Some(y)) => (x - y).abs() < 1e-12,
                _ => false,
            }
        }
        self.rows.iter().find(|row| {
            row.scenario == scenario
                && row.estimator == estimator
                && row.metric == metric
                && row.n == n
                && close(row.r, r)
                && close(row.alpha, alpha)
                && close(row.tau, tau)
        })
    }
}

fn mean_stderr(values: &[f64]) -> (f64, f64) {
    let n = values.len();
    let mean = values.iter().sum::<f64>() / n as f64;
    if n < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1) as f64;
    (mean, (var / n as f64).sqrt())
}

// ─── Experiment schema ──────────────────────────────────────────────────────

/// Location study on the circle: von Mises signal with replace-angle
/// contamination over an (n, rate) grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct CircleVmExperiment {
    pub mu: f64,
    pub kappa: f64,
    pub mu_out: f64,
    pub sigma_out: f64,
    pub n_grid: Vec<usize>,
    pub rate_grid: Vec<f64>,
    pub reps: u32,
}

/// Location study on the circle under wrapped stable noise over an
/// (alpha, tau, n) grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct CircleStableExperiment {
    pub mu: f64,
    #[serde(default)]
    pub beta: f64,
    pub alpha_grid: Vec<f64>,
    pub tau_grid: Vec<f64>,
    pub n_grid: Vec<usize>,
    pub reps: u32,
}

/// Location study on shape space: i.i.d. shapes with a configuration-space
/// contamination mechanism; reports how far each estimator moves from its
/// own clean-sample value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct ShapeLocationExperiment {
    pub shape: ShapeGenSpec,
    pub n: usize,
    pub rate_grid: Vec<f64>,
    pub mechanism: ContaminationMechanism,
    pub reps: u32,
}

/// Shape-valued local regression with coherent outlier contamination and
/// cross-validated bandwidths.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct ShapeRegressionExperiment {
    pub shape: ShapeGenSpec,
    pub n_grid: Vec<usize>,
    pub rate_grid: Vec<f64>,
    /// Isotropic scale of the complex-normal offset.
    pub outlier_scale: f64,
    /// Norm of the offset mean.
    pub outlier_strength: f64,
    /// Overlap in [0, 1] between the offset mean and the mid-curve shape.
    pub outlier_mix: f64,
    pub bandwidth_grid: Vec<f64>,
    #[serde(default = "default_folds")]
    pub folds: usize,
    /// Score the non-robust fit's cross-validation with squared loss.
    #[serde(default)]
    pub squared_elr_loss: bool,
    pub reps: u32,
}

fn default_folds() -> usize {
    5
}

/// Contamination sweep on the circle reporting each estimator's drift from
/// its clean-sample value as the rate grows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct BreakdownExperiment {
    pub mu: f64,
    pub kappa: f64,
    pub mu_out: f64,
    pub sigma_out: f64,
    pub n: usize,
    pub levels: Vec<f64>,
    pub reps: u32,
}

/// Top-level experiment description, one scenario per run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentSpec {
    CircleVonMises(CircleVmExperiment),
    CircleStable(CircleStableExperiment),
    ShapeLocation(ShapeLocationExperiment),
    ShapeRegression(ShapeRegressionExperiment),
    Breakdown(BreakdownExperiment),
}

impl ExperimentSpec {
    pub fn scenario_label(&self) -> &'static str {
        match self {
            ExperimentSpec::CircleVonMises(_) => "circle-von-mises",
            ExperimentSpec::CircleStable(_) => "circle-stable",
            ExperimentSpec::ShapeLocation(_) => "shape-location",
            ExperimentSpec::ShapeRegression(_) => "shape-regression",
            ExperimentSpec::Breakdown(_) => "breakdown",
        }
    }
}

// ─── Run harness ────────────────────────────────────────────────────────────

/// A repetition that failed; the run records it and keeps going.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CellIssue {
    pub cell: String,
    pub rep: u32,
    pub message: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunOutcome {
    pub table: ResultTable,
    pub issues: Vec<CellIssue>,
}

/// One repetition's measurements: (estimator, metric, value) triples.
type RepMeasurements = Vec<(&'static str, &'static str, f64)>;

/// Runs every repetition of one cell in parallel, aggregates each
/// (estimator, metric) series into a row, and records failures.
fn run_cell<F>(
    outcome: &mut RunOutcome,
    scenario: &str,
    cell_key: &str,
    coords: (Option<usize>, Option<f64>, Option<f64>, Option<f64>),
    reps: u32,
    seed: u64,
    rep_fn: F,
) where
    F: Fn(u32, &mut rand_chacha::ChaCha8Rng) -> Result<RepMeasurements> + Sync,
{
    let results: Vec<(u32, Result<RepMeasurements>)> = (0..reps)
        .into_par_iter()
        .map(|rep| {
            let mut rng = cell_rng(seed, cell_key, rep);
            (rep, rep_fn(rep, &mut rng))
        })
        .collect();
    let mut series: Vec<((&'static str, &'static str), Vec<f64>)> = Vec::new();
    for (rep, res) in results {
        match res {
            Ok(measurements) => {
                for (estimator, metric, value) in measurements {
                    match series.iter_mut().find(|(k, _)| *k == (estimator, metric)) {
                        Some((_, vs)) => vs.push(value),
                        None => series.push(((estimator, metric), vec![value])),
                    }
                }
            }
            Err(err) => outcome.issues.push(CellIssue {
                cell: cell_key.to_string(),
                rep,
                message: err.to_string(),
            }),
        }
    }
    let (n, r, alpha, tau) = coords;
    for ((estimator, metric), values) in series {
        let (value, stderr) = mean_stderr(&values);
        outcome.table.push(ResultRow {
            scenario: scenario.to_string(),
            n,
            r,
            alpha,
            tau,
            estimator: estimator.to_string(),
            metric: metric.to_string(),
            value,
            stderr,
            reps: values.len(),
        });
    }
}

fn circle_points(angles: &[f64]) -> Vec<ManifoldPoint> {
    angles
        .iter()
        .map(|&a| ManifoldPoint::Sphere(angle_to_point(Angle::wrap(a))))
        .collect()
}

/// Chord errors of both location estimators against the direction of `mu`.
fn both_location_errors(
    sample: &[ManifoldPoint],
    truth: &ManifoldPoint,
    cfg: &WeiszfeldConfig,
) -> Result<RepMeasurements> {
    let (mean, _) = extrinsic_mean(sample)?;
    let median = extrinsic_median(sample, cfg)?;
    Ok(vec![
        (
            EstimatorKind::ExtrinsicMean.label(),
            "direction-error",
            comparison_distance(&mean, truth)?,
        ),
        (
            EstimatorKind::ExtrinsicMedian.label(),
            "direction-error",
            comparison_distance(&median.point, truth)?,
        ),
    ])
}

fn run_circle_vm(spec: &CircleVmExperiment, seed: u64, outcome: &mut RunOutcome) {
    let cfg = WeiszfeldConfig::default();
    let truth = ManifoldPoint::Sphere(angle_to_point(Angle::wrap(spec.mu)));
    for &n in &spec.n_grid {
        for &rate in &spec.rate_grid {
            let key = format!("vm/n={n}/r={rate}");
            let contamination = ContaminationSpec {
                rate,
                mechanism: ContaminationMechanism::ReplaceAngles {
                    mu_out: spec.mu_out,
                    sigma: spec.sigma_out,
                },
            };
            run_cell(
                outcome,
                "circle-von-mises",
                &key,
                (Some(n), Some(rate), None, None),
                spec.reps,
                seed,
                |_, rng| {
                    let clean = sample_von_mises(spec.mu, spec.kappa, n, rng)?;
                    let dirty = contaminate_angles(&clean, &contamination, rng)?;
                    both_location_errors(&circle_points(&dirty), &truth, &cfg)
                },
            );
        }
    }
}

fn run_circle_stable(spec: &CircleStableExperiment, seed: u64, outcome: &mut RunOutcome) {
    let cfg = WeiszfeldConfig::default();
    let truth = ManifoldPoint::Sphere(angle_to_point(Angle::wrap(spec.mu)));
    for &tau in &spec.tau_grid {
        for &n in &spec.n_grid {
            for &alpha in &spec.alpha_grid {
                let key = format!("stable/tau={tau}/n={n}/alpha={alpha}");
                let law = WrappedStableSpec { alpha, tau, beta: spec.beta, mu: spec.mu };
                run_cell(
                    outcome,
                    "circle-stable",
                    &key,
                    (Some(n), None, Some(alpha), Some(tau)),
                    spec.reps,
                    seed,
                    |_, rng| {
                        let angles = sample_wrapped_stable(&law, n, rng)?;
                        both_location_errors(&circle_points(&angles), &truth, &cfg)
                    },
                );
            }
        }
    }
}

fn run_shape_location(spec: &ShapeLocationExperiment, seed: u64, outcome: &mut RunOutcome) {
    let cfg = WeiszfeldConfig::default();
    for &rate in &spec.rate_grid {
        let key = format!("shape-loc/n={}/r={rate}", spec.n);
        let contamination =
            ContaminationSpec { rate, mechanism: spec.mechanism.clone() };
        run_cell(
            outcome,
            "shape-location",
            &key,
            (Some(spec.n), Some(rate), None, None),
            spec.reps,
            seed,
            |_, rng| {
                let sample = generate_shape_regression(&spec.shape, spec.n, rng)?;
                let dirty = contaminate_shapes(&sample.configurations, &contamination, rng)?;
                let clean_pts: Vec<ManifoldPoint> = sample
                    .responses
                    .iter()
                    .cloned()
                    .map(ManifoldPoint::Shape)
                    .collect();
                let dirty_pts: Vec<ManifoldPoint> = dirty
                    .preshapes
                    .iter()
                    .cloned()
                    .map(ManifoldPoint::Shape)
                    .collect();
                let (clean_mean, _) = extrinsic_mean(&clean_pts)?;
                let clean_median = extrinsic_median(&clean_pts, &cfg)?;
                let (dirty_mean, _) = extrinsic_mean(&dirty_pts)?;
                let dirty_median = extrinsic_median(&dirty_pts, &cfg)?;
                Ok(vec![
                    (
                        EstimatorKind::ExtrinsicMean.label(),
                        "shift-from-clean",
                        comparison_distance(&dirty_mean, &clean_mean)?,
                    ),
                    (
                        EstimatorKind::ExtrinsicMedian.label(),
                        "shift-from-clean",
                        comparison_distance(&dirty_median.point, &clean_median.point)?,
                    ),
                ])
            },
        );
    }
}

fn run_shape_regression(spec: &ShapeRegressionExperiment, seed: u64, outcome: &mut RunOutcome) {
    for &n in &spec.n_grid {
        for &rate in &spec.rate_grid {
            let key = format!("shape-reg/n={n}/r={rate}");
            run_cell(
                outcome,
                "shape-regression",
                &key,
                (Some(n), Some(rate), None, None),
                spec.reps,
                seed,
                |_, rng| regression_rep(spec, n, rate, rng),
            );
        }
    }
}

fn regression_rep(
    spec: &ShapeRegressionExperiment,
    n: usize,
    rate: f64,
    rng: &mut rand_chacha::ChaCha8Rng,
) -> Result<RepMeasurements> {
    let sample = generate_shape_regression(&spec.shape, n, rng)?;
    let mu = coherent_outlier_mean(&spec.shape, spec.outlier_strength, spec.outlier_mix)?;
    let contamination = ContaminationSpec {
        rate,
        mechanism: ContaminationMechanism::AddComplexNormal {
            mu,
            scale: spec.outlier_scale,
        },
    };
    let dirty = contaminate_shapes(&sample.configurations, &contamination, rng)?;
    let data = sample.dataset_with(&dirty.preshapes)?;
    let truth: Vec<ManifoldPoint> =
        sample.truth.iter().cloned().map(ManifoldPoint::Shape).collect();
    let observed: Vec<ManifoldPoint> = data.responses.clone();
    let cv_seed: u64 = rng.random();

    let mut out = Vec::new();
    for method in [FitMethod::Median, FitMethod::Mean] {
        let mut cv = CvConfig::new(
            spec.bandwidth_grid.clone(),
            method,
            KernelFamily::Gaussian,
            cv_seed,
        );
        cv.folds = spec.folds;
        if method == FitMethod::Mean && spec.squared_elr_loss {
            cv.loss = CvLoss::Squared;
        }
        let report = cv_bandwidth(&data, &cv)?;
        let kernel = KernelSpec::new(KernelFamily::Gaussian, report.chosen)?;
        let fit: RegressionFit = match method {
            FitMethod::Median => {
                relr_fit(&data, &data.covariates, &kernel, &cv.weiszfeld)?
            }
            FitMethod::Mean => elr_fit(&data, &data.covariates, &kernel)?,
        };
        let points = fit.points()?;
        let label = match method {
            FitMethod::Median => "relr",
            FitMethod::Mean => "elr",
        };
        out.push((label, "rmse-true", rmse_true(&points, &truth)?));
        out.push((label, "md-obs", md_obs(&points, &observed)?));
        out.push((label, "cv-bandwidth", report.chosen));
    }
    Ok(out)
}

fn run_breakdown(spec: &BreakdownExperiment, seed: u64, outcome: &mut RunOutcome) {
    let cfg = WeiszfeldConfig::default();
    for &level in &spec.levels {
        let key = format!("breakdown/n={}/level={level}", spec.n);
        let contamination = ContaminationSpec {
            rate: level,
            mechanism: ContaminationMechanism::ReplaceAngles {
                mu_out: spec.mu_out,
                sigma: spec.sigma_out,
            },
        };
        run_cell(
            outcome,
            "breakdown",
            &key,
            (Some(spec.n), Some(level), None, None),
            spec.reps,
            seed,
            |_, rng| {
                let clean = sample_von_mises(spec.mu, spec.kappa, spec.n, rng)?;
                let dirty = contaminate_angles(&clean, &contamination, rng)?;
                let clean_pts = circle_points(&clean);
                let dirty_pts = circle_points(&dirty);
                let (clean_mean, _) = extrinsic_mean(&clean_pts)?;
                let clean_median = extrinsic_median(&clean_pts, &cfg)?;
                let (dirty_mean, _) = extrinsic_mean(&dirty_pts)?;
                let dirty_median = extrinsic_median(&dirty_pts, &cfg)?;
                Ok(vec![
                    (
                        EstimatorKind::ExtrinsicMean.label(),
                        "shift-from-clean",
                        comparison_distance(&dirty_mean, &clean_mean)?,
                    ),
                    (
                        EstimatorKind::ExtrinsicMedian.label(),
                        "shift-from-clean",
                        comparison_distance(&dirty_median.point, &clean_median.point)?,
                    ),
                ])
            },
        );
    }
}

/// Runs an experiment under a single global seed.  Every cell repetition
/// draws from its own derived RNG, so results do not depend on scheduling;
/// failed repetitions become issues and the run continues.
pub fn run_experiment(spec: &ExperimentSpec, seed: u64) -> Result<RunOutcome> {
    let mut outcome = RunOutcome { table: ResultTable::default(), issues: Vec::new() };
    match spec {
        ExperimentSpec::CircleVonMises(s) => run_circle_vm(s, seed, &mut outcome),
        ExperimentSpec::CircleStable(s) => run_circle_stable(s, seed, &mut outcome),
        ExperimentSpec::ShapeLocation(s) => run_shape_location(s, seed, &mut outcome),
        ExperimentSpec::ShapeRegression(s) => run_shape_regression(s, seed, &mut outcome),
        ExperimentSpec::Breakdown(s) => run_breakdown(s, seed, &mut outcome),
    }
    Ok(outcome)
}

/// Distance of each estimator from its clean value across contamination
/// levels — the breakdown-curve operation as a single call.
pub fn breakdown_curve(spec: &BreakdownExperiment, seed: u64) -> Result<RunOutcome> {
    run_experiment(&ExperimentSpec::Breakdown(spec.clone()), seed)
}

// ─── Canonical study specifications ─────────────────────────────────────────

/// Von Mises location study over the benchmark (n, rate) grid.
pub fn vm_location_table() -> ExperimentSpec {
    ExperimentSpec::CircleVonMises(CircleVmExperiment {
        mu: 0.0,
        kappa: 2400.0,
        mu_out: 0.7,
        sigma_out: 0.1,
        n_grid: vec![10, 50, 100, 200],
        rate_grid: vec![0.0, 0.1, 0.2, 0.4],
        reps: 20,
    })
}

/// Wrapped stable location study over the benchmark (tau, n, alpha) grid.
pub fn stable_location_table() -> ExperimentSpec {
    ExperimentSpec::CircleStable(CircleStableExperiment {
        mu: 0.0,
        beta: 0.0,
        alpha_grid: vec![0.1, 0.5, 1.0, 2.0],
        tau_grid: vec![0.1, 0.2],
        n_grid: vec![10, 50, 100, 200],
        reps: 20,
    })
}

/// The benchmark shape-regression generator settings.
pub fn regression_shape_spec() -> ShapeGenSpec {
    ShapeGenSpec {
        landmarks: 10,
        covariate_dim: 3,
        lower: 0.0,
        upper: 2.0,
        angle_noise: 0.05,
        radial_noise: 0.01,
        flatten_curve: false,
    }
}

/// Shape regression study; `n_grid` is a parameter so callers can run the
/// full table or a single panel.
pub fn regression_table(n_grid: Vec<usize>) -> ExperimentSpec {
    ExperimentSpec::ShapeRegression(ShapeRegressionExperiment {
        shape: regression_shape_spec(),
        n_grid,
        rate_grid: vec![0.0, 0.05, 0.1, 0.2, 0.3],
        outlier_scale: 0.3,
        outlier_strength: 3.0,
        outlier_mix: 0.3,
        bandwidth_grid: geometric_grid(0.2, 2.0, 6),
        folds: 5,
        squared_elr_loss: false,
        reps: 20,
    })
}

/// Shape location study: 50-landmark i.i.d. shapes with six landmarks
/// replaced by far-away coordinates.
pub fn shape_contamination_table() -> ExperimentSpec {
    ExperimentSpec::ShapeLocation(ShapeLocationExperiment {
        shape: ShapeGenSpec {
            landmarks: 50,
            covariate_dim: 1,
            lower: 0.0,
            upper: 2.0,
            angle_noise: 0.05,
            radial_noise: 0.01,
            flatten_curve: true,
        },
        n: 100,
        rate_grid: vec![0.1, 0.2, 0.3, 0.4],
        mechanism: ContaminationMechanism::CorruptLandmarks {
            indices: vec![9, 10, 11, 12, 13, 14],
            mu: 1000.0,
            sigma: 5.0,
        },
        reps: 20,
    })
}

/// Contamination sweep behind the breakdown curves.
pub fn breakdown_curves() -> ExperimentSpec {
    ExperimentSpec::Breakdown(BreakdownExperiment {
        mu: 0.0,
        kappa: 2400.0,
        mu_out: 0.7,
        sigma_out: 0.1,
        n: 100,
        levels: vec![0.0, 0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45, 0.5],
        reps: 20,
    })
}

/// Geometric grid from `lo` to `hi` inclusive.
pub fn geometric_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    assert!(count >= 2 && lo > 0.0 && hi > lo);
    let ratio = (hi / lo).powf(1.0 / (count - 1) as f64);
    (0..count).map(|i| lo * ratio.powi(i as i32)).collect()
}
