//! Ambient-space primitives: flat real vectors with a layout tag, weighted
//! means, and the descriptor that ties a manifold to its embedding space.
//!
//! Complex entries are stored as interleaved `(re, im)` pairs so every
//! solver in this crate operates on plain `f64` slices; the Hermitian
//! matrix layout is a view over that flat storage, not a separate type.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tol;

// ─── Layouts and descriptors ────────────────────────────────────────────────

/// How the flat coordinate array of an [`AmbientPoint`] is to be read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Layout {
    /// Plain vector in ℝ^D.
    RealVector,
    /// k×k complex Hermitian matrix, row-major, each entry interleaved as
    /// `(re, im)`; D = 2k² real scalars.
    HermitianMatrix(usize),
}

/// A point of the embedding space ℝ^D.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AmbientPoint {
    pub coords: Vec<f64>,
    pub layout: Layout,
}

impl AmbientPoint {
    pub fn real(coords: Vec<f64>) -> Self {
        AmbientPoint { coords, layout: Layout::RealVector }
    }

    pub fn hermitian(coords: Vec<f64>, k: usize) -> Result<Self> {
        if coords.len() != 2 * k * k {
            return Err(Error::InvalidInput(format!(
                "hermitian layout for k={k} needs {} scalars, got {}",
                2 * k * k,
                coords.len()
            )));
        }
        let p = AmbientPoint { coords, layout: Layout::HermitianMatrix(k) };
        p.check_hermitian()?;
        Ok(p)
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Complex entry (i, j) of a Hermitian-layout point.
    pub fn entry(&self, i: usize, j: usize) -> (f64, f64) {
        let k = match self.layout {
            Layout::HermitianMatrix(k) => k,
            Layout::RealVector => panic!("entry() requires a matrix layout"),
        };
        let off = 2 * (i * k + j);
        (self.coords[off], self.coords[off + 1])
    }

    /// Verifies A = A* entrywise for matrix layouts; no-op for vectors.
    pub fn check_hermitian(&self) -> Result<()> {
        let Layout::HermitianMatrix(k) = self.layout else {
            return Ok(());
        };
        for i in 0..k {
            for j in i..k {
                let (are, aim) = self.entry(i, j);
                let (bre, bim) = self.entry(j, i);
                if (are - bre).abs() > tol::HERMITIAN || (aim + bim).abs() > tol::HERMITIAN {
                    return Err(Error::InvalidInput(format!(
                        "matrix is not Hermitian at ({i},{j})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn is_finite(&self) -> bool {
        self.coords.iter().all(|c| c.is_finite())
    }
}

/// Which manifold a set of points lives on, together with the dimensions
/// that fix its embedding space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ManifoldDescriptor {
    /// Unit sphere S^d ⊂ ℝ^{d+1}.
    Sphere { dim: usize },
    /// Planar shapes with k landmarks, embedded as k×k Hermitian matrices.
    PlanarShape { landmarks: usize },
    /// Symmetric positive definite p×p matrices under the log map.
    Spd { size: usize },
}

impl ManifoldDescriptor {
    /// Number of real scalars in the flat ambient representation.
    pub fn ambient_dim(&self) -> usize {
        match *self {
            ManifoldDescriptor::Sphere { dim } => dim + 1,
            ManifoldDescriptor::PlanarShape { landmarks } => 2 * landmarks * landmarks,
            ManifoldDescriptor::Spd { size } => size * (size + 1) / 2,
        }
    }

    pub fn ambient_layout(&self) -> Layout {
        match *self {
            ManifoldDescriptor::PlanarShape { landmarks } => Layout::HermitianMatrix(landmarks),
            _ => Layout::RealVector,
        }
    }
}

/// Result of projecting an ambient point onto the embedded image.
///
/// `gap` quantifies how far the input was from the focal set: the norm of
/// the mean for the sphere, the relative eigenvalue gap for shapes. Larger
/// is safer; the projection errors out below the per-manifold threshold.
#[derive(Debug, Clone)]
pub struct ProjectionResult {
    pub point: AmbientPoint,
    pub gap: f64,
}

// ─── Flat-vector arithmetic ─────────────────────────────────────────────────

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

pub fn axpy(y: &mut [f64], alpha: f64, x: &[f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

pub fn scale(y: &mut [f64], alpha: f64) {
    for yi in y.iter_mut() {
        *yi *= alpha;
    }
}

// ─── Weighted means ─────────────────────────────────────────────────────────

/// Weighted arithmetic mean in ℝ^D.
///
/// Weights must be nonnegative and sum to one within [`tol::WEIGHT_SUM`].
pub fn ambient_mean(points: &[AmbientPoint], weights: &[f64]) -> Result<AmbientPoint> {
    if points.is_empty() {
        return Err(Error::InvalidInput("mean of an empty point list".into()));
    }
    if points.len() != weights.len() {
        return Err(Error::InvalidInput(format!(
            "{} points but {} weights",
            points.len(),
            weights.len()
        )));
    }
    let layout = points[0].layout;
    let d = points[0].dim();
    if points.iter().any(|p| p.layout != layout || p.dim() != d) {
        return Err(Error::InvalidInput("mixed ambient layouts in mean".into()));
    }
    if weights.iter().any(|&w| !(w >= 0.0) || !w.is_finite()) {
        return Err(Error::InvalidInput("weights must be finite and nonnegative".into()));
    }
    let total: f64 = weights.iter().sum();
    if (total - 1.0).abs() > tol::WEIGHT_SUM {
        return Err(Error::InvalidInput(format!(
            "weights sum to {total}, expected 1"
        )));
    }
    let mut coords = vec![0.0; d];
    for (p, &w) in points.iter().zip(weights) {
        axpy(&mut coords, w, &p.coords);
    }
    Ok(AmbientPoint { coords, layout })
}

/// Uniform weights 1/n.
pub fn uniform_weights(n: usize) -> Vec<f64> {
    vec![1.0 / n as f64; n]
}
