//! Symmetric positive definite matrices under the log-Euclidean embedding:
//! matrix log into the flat space of symmetric matrices, matrix exp back.
//! The image is all of Sym(p), so projection is trivial and there are no
//! focal points on this manifold.

use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::ambient::{AmbientPoint, Layout};
use crate::error::{Error, Result};

/// A p×p real symmetric positive definite matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpdPoint {
    matrix: Vec<Vec<f64>>,
}

impl SpdPoint {
    /// Validates symmetry and positive definiteness.
    pub fn new(matrix: Vec<Vec<f64>>) -> Result<Self> {
        let p = matrix.len();
        if p == 0 || matrix.iter().any(|row| row.len() != p) {
            return Err(Error::InvalidInput("matrix must be square and nonempty".into()));
        }
        for i in 0..p {
            for j in (i + 1)..p {
                if (matrix[i][j] - matrix[j][i]).abs() > 1e-12 {
                    return Err(Error::InvalidInput(format!(
                        "matrix is not symmetric at ({i},{j})"
                    )));
                }
            }
        }
        let point = SpdPoint { matrix };
        let eig = point.eigen();
        if eig.eigenvalues.iter().any(|&l| l <= 1e-12) {
            return Err(Error::InvalidInput(
                "matrix is not positive definite".into(),
            ));
        }
        Ok(point)
    }

    pub fn size(&self) -> usize {
        self.matrix.len()
    }

    /// The p×p identity matrix.
    pub fn identity(p: usize) -> Self {
        let matrix = (0..p)
            .map(|i| (0..p).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
            .collect();
        SpdPoint { matrix }
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.matrix
    }

    fn eigen(&self) -> SymmetricEigen<f64, nalgebra::Dyn> {
        let p = self.size();
        let m = DMatrix::from_fn(p, p, |i, j| self.matrix[i][j]);
        SymmetricEigen::new(m)
    }
}

/// Flattens a symmetric matrix to p(p+1)/2 scalars with off-diagonals
/// scaled by √2, so the flat Euclidean norm equals the Frobenius norm.
fn flatten_symmetric(m: &DMatrix<f64>) -> Vec<f64> {
    let p = m.nrows();
    let mut out = Vec::with_capacity(p * (p + 1) / 2);
    for i in 0..p {
        out.push(m[(i, i)]);
        for j in (i + 1)..p {
            out.push(std::f64::consts::SQRT_2 * m[(i, j)]);
        }
    }
    out
}

fn unflatten_symmetric(v: &[f64], p: usize) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(p, p);
    let mut idx = 0;
    for i in 0..p {
        m[(i, i)] = v[idx];
        idx += 1;
        for j in (i + 1)..p {
            let x = v[idx] / std::f64::consts::SQRT_2;
            m[(i, j)] = x;
            m[(j, i)] = x;
            idx += 1;
        }
    }
    m
}

/// Dimension p recovered from a flat length D = p(p+1)/2.
fn size_from_flat_len(len: usize) -> Result<usize> {
    let mut p = 1;
    while p * (p + 1) / 2 < len {
        p += 1;
    }
    if p * (p + 1) / 2 != len {
        return Err(Error::InvalidInput(format!(
            "flat length {len} is not a triangular number"
        )));
    }
    Ok(p)
}

/// Embeds an SPD matrix as the flat coordinates of its matrix logarithm.
pub fn spd_embed(x: &SpdPoint) -> AmbientPoint {
    let eig = x.eigen();
    let logl = DMatrix::from_diagonal(&eig.eigenvalues.map(|l| l.ln()));
    let log = &eig.eigenvectors * logl * eig.eigenvectors.transpose();
    AmbientPoint { coords: flatten_symmetric(&log), layout: Layout::RealVector }
}

/// Matrix exponential of the symmetrized flat input: the inverse of the
/// embedding, defined on all of the ambient space.
pub fn spd_unembed_project(y: &AmbientPoint) -> Result<SpdPoint> {
    let p = size_from_flat_len(y.coords.len())?;
    let sym = unflatten_symmetric(&y.coords, p);
    let eig = SymmetricEigen::new(sym);
    let expl = DMatrix::from_diagonal(&eig.eigenvalues.map(|l| l.exp()));
    let exp = &eig.eigenvectors * expl * eig.eigenvectors.transpose();
    let matrix: Vec<Vec<f64>> = (0..p)
        .map(|i| (0..p).map(|j| (exp[(i, j)] + exp[(j, i)]) / 2.0).collect())
        .collect();
    SpdPoint::new(matrix)
}

/// Log-Euclidean distance ‖log X₁ − log X₂‖_F, computed through the
/// embedding.
pub fn spd_distance(a: &SpdPoint, b: &SpdPoint) -> f64 {
    let ea = spd_embed(a);
    let eb = spd_embed(b);
    crate::ambient::dist(&ea.coords, &eb.coords)
}

/// Reads SPD samples from a JSON list of row-major p×p matrices.
pub fn read_spd_json(text: &str) -> Result<Vec<SpdPoint>> {
    let raw: Vec<Vec<Vec<f64>>> = serde_json::from_str(text)?;
    raw.into_iter().map(SpdPoint::new).collect()
}
