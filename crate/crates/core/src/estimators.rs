//! Extrinsic location estimators: push the sample through the embedding,
//! average (or robustly center) in the ambient space, and project back.

use serde::{Deserialize, Serialize};

use crate::ambient::{self, AmbientPoint};
use crate::error::{Error, Result};
use crate::manifold::{self, ManifoldPoint};
use crate::weiszfeld::{fermat_weber_solve, WeiszfeldConfig, WeiszfeldReport};

/// Which location estimator an experiment cell uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EstimatorKind {
    ExtrinsicMean,
    ExtrinsicMedian,
}

impl EstimatorKind {
    pub fn label(self) -> &'static str {
        match self {
            EstimatorKind::ExtrinsicMean => "extrinsic-mean",
            EstimatorKind::ExtrinsicMedian => "extrinsic-median",
        }
    }
}

/// Result of a median fit: the projected point, the projection gap at the
/// ambient minimizer, and the full solver report.
#[derive(Debug, Clone)]
pub struct MedianReport {
    pub point: ManifoldPoint,
    pub gap: f64,
    pub solver: WeiszfeldReport,
}

fn embed_sample(points: &[ManifoldPoint]) -> Result<Vec<AmbientPoint>> {
    if points.is_empty() {
        return Err(Error::InvalidInput("empty sample".into()));
    }
    let descriptor = points[0].descriptor();
    for p in points {
        if p.descriptor() != descriptor {
            return Err(Error::InvalidInput(
                "sample mixes points from different manifolds".into(),
            ));
        }
    }
    Ok(points.iter().map(manifold::embed).collect())
}

/// Weighted extrinsic mean: projected weighted ambient average.
pub fn extrinsic_mean_weighted(
    points: &[ManifoldPoint],
    weights: &[f64],
) -> Result<(ManifoldPoint, f64)> {
    let embedded = embed_sample(points)?;
    let mean = ambient::ambient_mean(&embedded, weights)?;
    manifold::project(&points[0].descriptor(), &mean)
}

/// Extrinsic mean with uniform weights.
pub fn extrinsic_mean(points: &[ManifoldPoint]) -> Result<(ManifoldPoint, f64)> {
    extrinsic_mean_weighted(points, &ambient::uniform_weights(points.len().max(1)))
}

/// Weighted extrinsic median: projected ambient Fermat–Weber point.
pub fn extrinsic_median_weighted(
    points: &[ManifoldPoint],
    weights: &[f64],
    cfg: &WeiszfeldConfig,
) -> Result<MedianReport> {
    let embedded = embed_sample(points)?;
    let solver = fermat_weber_solve(&embedded, weights, cfg)?;
    let (point, gap) = manifold::project(&points[0].descriptor(), &solver.solution)?;
    Ok(MedianReport { point, gap, solver })
}

/// Extrinsic median with uniform weights.
pub fn extrinsic_median(points: &[ManifoldPoint], cfg: &WeiszfeldConfig) -> Result<MedianReport> {
    extrinsic_median_weighted(points, &ambient::uniform_weights(points.len().max(1)), cfg)
}
