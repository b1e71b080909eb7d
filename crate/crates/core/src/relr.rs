//! Local regression with manifold-valued responses: at each query point the
//! responses are combined under kernel weights, either by the robust
//! Fermat–Weber route or by the projected weighted mean, with seeded K-fold
//! cross-validation for the bandwidth.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimators::{extrinsic_mean_weighted, extrinsic_median_weighted};
use crate::kernel::{kernel_weights, KernelFamily, KernelSpec};
use crate::manifold::{extrinsic_distance, ManifoldDescriptor, ManifoldPoint};
use crate::weiszfeld::{Init, Variant, WeiszfeldConfig, WeiszfeldReport};

// ─── Dataset ────────────────────────────────────────────────────────────────

/// Paired covariates and manifold-valued responses.
#[derive(Debug, Clone)]
pub struct RegressionDataset {
    pub covariates: Vec<Vec<f64>>,
    pub responses: Vec<ManifoldPoint>,
}

impl RegressionDataset {
    pub fn new(covariates: Vec<Vec<f64>>, responses: Vec<ManifoldPoint>) -> Result<Self> {
        if covariates.is_empty() {
            return Err(Error::InvalidInput("empty regression dataset".into()));
        }
        if covariates.len() != responses.len() {
            return Err(Error::InvalidInput(format!(
                "{} covariates but {} responses",
                covariates.len(),
                responses.len()
            )));
        }
        let p = covariates[0].len();
        if p == 0 || covariates.iter().any(|x| x.len() != p) {
            return Err(Error::InvalidInput(
                "covariates must share one positive dimension".into(),
            ));
        }
        if covariates.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("non-finite covariate".into()));
        }
        let descriptor = responses[0].descriptor();
        if responses.iter().any(|r| r.descriptor() != descriptor) {
            return Err(Error::InvalidInput(
                "responses mix points from different manifolds".into(),
            ));
        }
        Ok(RegressionDataset { covariates, responses })
    }

    pub fn len(&self) -> usize {
        self.covariates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.covariates.is_empty()
    }

    pub fn covariate_dim(&self) -> usize {
        self.covariates[0].len()
    }

    pub fn descriptor(&self) -> ManifoldDescriptor {
        self.responses[0].descriptor()
    }

    fn subset(&self, keep: &[usize]) -> RegressionDataset {
        RegressionDataset {
            covariates: keep.iter().map(|&i| self.covariates[i].clone()).collect(),
            responses: keep.iter().map(|&i| self.responses[i].clone()).collect(),
        }
    }
}

// ─── Pointwise fits ─────────────────────────────────────────────────────────

/// One fitted location: the projected point, the projection gap, and the
/// solver report when the robust route produced it.
#[derive(Debug, Clone)]
pub struct LocalEstimate {
    pub point: ManifoldPoint,
    pub gap: f64,
    pub solver: Option<WeiszfeldReport>,
}

/// Fits across a set of query points.  Individual failures (an empty kernel
/// neighborhood, a focal projection) are kept per point rather than
/// aborting the sweep.
#[derive(Debug)]
pub struct RegressionFit {
    pub estimates: Vec<std::result::Result<LocalEstimate, Error>>,
}

impl RegressionFit {
    /// All fitted points, failing on the first pointwise error.
    pub fn points(&self) -> Result<Vec<ManifoldPoint>> {
        self.estimates
            .iter()
            .map(|e| match e {
                Ok(est) => Ok(est.point.clone()),
                Err(err) => Err(err.clone()),
            })
            .collect()
    }

    pub fn error_count(&self) -> usize {
        self.estimates.iter().filter(|e| e.is_err()).count()
    }

    /// Total solver iterations across successful robust fits.
    pub fn total_iterations(&self) -> usize {
        self.estimates
            .iter()
            .filter_map(|e| e.as_ref().ok())
            .filter_map(|e| e.solver.as_ref())
            .map(|r| r.iterations)
            .sum()
    }
}

/// Keeps only strictly positive kernel weights (a compact kernel zeroes out
/// far responses; dropping them is exact and keeps the solver's weight
/// validation meaningful).
fn support(weights: &[f64]) -> (Vec<usize>, Vec<f64>) {
    let mut idx = Vec::new();
    let mut kept = Vec::new();
    for (i, &w) in weights.iter().enumerate() {
        if w > 0.0 {
            idx.push(i);
            kept.push(w);
        }
    }
    (idx, kept)
}

fn robust_fit_at(
    data: &RegressionDataset,
    x0: &[f64],
    kernel: &KernelSpec,
    cfg: &WeiszfeldConfig,
) -> std::result::Result<LocalEstimate, Error> {
    let w = kernel_weights(&data.covariates, x0, kernel)?;
    let (idx, w) = support(&w);
    let responses: Vec<ManifoldPoint> = idx.iter().map(|&i| data.responses[i].clone()).collect();
    let report = extrinsic_median_weighted(&responses, &w, cfg)?;
    Ok(LocalEstimate { point: report.point, gap: report.gap, solver: Some(report.solver) })
}

fn mean_fit_at(
    data: &RegressionDataset,
    x0: &[f64],
    kernel: &KernelSpec,
) -> std::result::Result<LocalEstimate, Error> {
    let w = kernel_weights(&data.covariates, x0, kernel)?;
    let (idx, w) = support(&w);
    let responses: Vec<ManifoldPoint> = idx.iter().map(|&i| data.responses[i].clone()).collect();
    let (point, gap) = extrinsic_mean_weighted(&responses, &w)?;
    Ok(LocalEstimate { point, gap, solver: None })
}

fn validate_eval(data: &RegressionDataset, eval: &[Vec<f64>]) -> Result<()> {
    let p = data.covariate_dim();
    if eval.iter().any(|x| x.len() != p) {
        return Err(Error::InvalidInput(
            "query point dimension does not match the covariates".into(),
        ));
    }
    Ok(())
}

/// Robust local regression: kernel-weighted extrinsic median at each query
/// point.
pub fn relr_fit(
    data: &RegressionDataset,
    eval: &[Vec<f64>],
    kernel: &KernelSpec,
    cfg: &WeiszfeldConfig,
) -> Result<RegressionFit> {
    cfg.validate()?;
    validate_eval(data, eval)?;
    let estimates = eval
        .par_iter()
        .map(|x0| robust_fit_at(data, x0, kernel, cfg))
        .collect();
    Ok(RegressionFit { estimates })
}

/// Robust local regression through the smoothed accelerated solver.  The
/// variant and the anchored init are forced; epsilon and the iteration
/// budget are taken from `cfg`.
pub fn relr_fit_fast(
    data: &RegressionDataset,
    eval: &[Vec<f64>],
    kernel: &KernelSpec,
    cfg: &WeiszfeldConfig,
) -> Result<RegressionFit> {
    let fast_cfg = WeiszfeldConfig {
        variant: Variant::SmoothedAccelerated,
        init: Init::VardiZhang,
        ..cfg.clone()
    };
    relr_fit(data, eval, kernel, &fast_cfg)
}

/// Non-robust local regression: kernel-weighted projected mean at each
/// query point.
pub fn elr_fit(
    data: &RegressionDataset,
    eval: &[Vec<f64>],
    kernel: &KernelSpec,
) -> Result<RegressionFit> {
    validate_eval(data, eval)?;
    let estimates = eval.par_iter().map(|x0| mean_fit_at(data, x0, kernel)).collect();
    Ok(RegressionFit { estimates })
}

// ─── Bandwidth cross-validation ─────────────────────────────────────────────

/// Which fitting route cross-validation scores.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FitMethod {
    Median,
    Mean,
}

/// Validation loss: mean extrinsic distance, or its square.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CvLoss {
    Unsquared,
    Squared,
}

#[derive(Debug, Clone)]
pub struct CvConfig {
    pub folds: usize,
    pub grid: Vec<f64>,
    pub method: FitMethod,
    pub loss: CvLoss,
    pub family: KernelFamily,
    /// Seed for the fold-assignment shuffle.
    pub seed: u64,
    pub weiszfeld: WeiszfeldConfig,
}

impl CvConfig {
    pub fn new(grid: Vec<f64>, method: FitMethod, family: KernelFamily, seed: u64) -> Self {
        CvConfig {
            folds: 5,
            grid,
            method,
            loss: CvLoss::Unsquared,
            family,
            seed,
            weiszfeld: WeiszfeldConfig::default(),
        }
    }
}

/// Score of one candidate bandwidth.  `penalized` counts validation points
/// whose fit failed and was charged the worst observed score of its fold.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CvRow {
    pub bandwidth: f64,
    pub score: f64,
    pub penalized: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CvReport {
    pub chosen: f64,
    pub rows: Vec<CvRow>,
}

/// Seeded K-fold bandwidth selection.  Folds are a deterministic shuffle of
/// the sample; the chosen bandwidth is the grid argmin of the mean
/// validation loss, with exact ties going to the smaller bandwidth.
pub fn cv_bandwidth(data: &RegressionDataset, cv: &CvConfig) -> Result<CvReport> {
    let n = data.len();
    if cv.folds < 2 {
        return Err(Error::InvalidInput("cross-validation needs at least 2 folds".into()));
    }
    if n < cv.folds {
        return Err(Error::InvalidInput(format!(
            "{n} samples cannot fill {} folds",
            cv.folds
        )));
    }
    if cv.grid.is_empty() {
        return Err(Error::InvalidInput("empty bandwidth grid".into()));
    }
    if cv.grid.iter().any(|&h| !(h > 0.0) || !h.is_finite()) {
        return Err(Error::InvalidInput("bandwidths must be positive and finite".into()));
    }
    let mut grid = cv.grid.clone();
    grid.sort_by(f64::total_cmp);
    grid.dedup();

    let mut order: Vec<usize> = (0..n).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(cv.seed);
    order.shuffle(&mut rng);

    let mut score_sum = vec![0.0_f64; grid.len()];
    let mut penalized = vec![0usize; grid.len()];

    for fold in 0..cv.folds {
        let val_idx: Vec<usize> = order[fold..].iter().step_by(cv.folds).copied().collect();
        let train_idx: Vec<usize> = order
            .iter()
            .enumerate()
            .filter(|(pos, _)| pos % cv.folds != fold)
            .map(|(_, &i)| i)
            .collect();
        let train = data.subset(&train_idx);
        // Per validation point, the loss under every candidate bandwidth.
        let losses: Vec<Vec<std::result::Result<f64, Error>>> = val_idx
            .par_iter()
            .map(|&i| {
                let x0 = &data.covariates[i];
                let truth = &data.responses[i];
                grid.iter()
                    .map(|&h| {
                        let kernel = KernelSpec::new(cv.family, h)?;
                        let est = match cv.method {
                            FitMethod::Median => {
                                robust_fit_at(&train, x0, &kernel, &cv.weiszfeld)?
                            }
                            FitMethod::Mean => mean_fit_at(&train, x0, &kernel)?,
                        };
                        let d = extrinsic_distance(&est.point, truth)?;
                        Ok(match cv.loss {
                            CvLoss::Unsquared => d,
                            CvLoss::Squared => d * d,
                        })
                    })
                    .collect()
            })
            .collect();
        for (hi, _) in grid.iter().enumerate() {
            let ok: Vec<f64> = losses
                .iter()
                .filter_map(|per_point| per_point[hi].as_ref().ok())
                .copied()
                .collect();
            let failed = losses.len() - ok.len();
            if ok.is_empty() {
                score_sum[hi] = f64::INFINITY;
                penalized[hi] += failed;
                continue;
            }
            let worst = ok.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            score_sum[hi] += ok.iter().sum::<f64>() + failed as f64 * worst;
            penalized[hi] += failed;
        }
    }

    let rows: Vec<CvRow> = grid
        .iter()
        .zip(&score_sum)
        .zip(&penalized)
        .map(|((&bandwidth, &sum), &pen)| CvRow {
            bandwidth,
            score: sum / n as f64,
            penalized: pen,
        })
        .collect();
    let mut best = 0;
    for (i, row) in rows.iter().enumerate() {
        if row.score < rows[best].score {
            best = i;
        }
    }
    if !rows[best].score.is_finite() {
        return Err(Error::EmptyNeighborhood);
    }
    Ok(CvReport { chosen: rows[best].bandwidth, rows })
}
