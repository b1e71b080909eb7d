//! Product smoothing kernels on covariate space.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum KernelFamily {
    Gaussian,
    Epanechnikov,
}

impl KernelFamily {
    /// One-dimensional profile K(z).
    fn profile(self, z: f64) -> f64 {
        match self {
            KernelFamily::Gaussian => (-0.5 * z * z).exp(),
            KernelFamily::Epanechnikov => {
                if z.abs() <= 1.0 {
                    0.75 * (1.0 - z * z)
                } else {
                    0.0
                }
            }
        }
    }
}

/// Isotropic product kernel: bandwidth h applied to every covariate
/// coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelSpec {
    pub family: KernelFamily,
    pub bandwidth: f64,
}

impl KernelSpec {
    pub fn new(family: KernelFamily, bandwidth: f64) -> Result<Self> {
        if !(bandwidth > 0.0) || !bandwidth.is_finite() {
            return Err(Error::InvalidInput(format!(
                "bandwidth must be positive and finite, got {bandwidth}"
            )));
        }
        Ok(KernelSpec { family, bandwidth })
    }
}

/// Kernel weights of the covariates around `x0`, renormalized to sum to 1.
///
/// Every raw weight being zero (a compactly supported kernel with no
/// neighbors in range) is reported as `EmptyNeighborhood` rather than
/// returning a 0/0 vector.
pub fn kernel_weights(
    covariates: &[Vec<f64>],
    x0: &[f64],
    spec: &KernelSpec,
) -> Result<Vec<f64>> {
    if covariates.is_empty() {
        return Err(Error::InvalidInput("no covariates given".into()));
    }
    let p = x0.len();
    if covariates.iter().any(|x| x.len() != p) {
        return Err(Error::InvalidInput(
            "covariate dimension does not match the query point".into(),
        ));
    }
    let h = spec.bandwidth;
    let det_scale = h.powi(p as i32).recip();
    let mut weights = Vec::with_capacity(covariates.len());
    for x in covariates {
        let mut k = det_scale;
        for (xj, x0j) in x.iter().zip(x0) {
            k *= spec.family.profile((xj - x0j) / h);
        }
        weights.push(k);
    }
    let total: f64 = weights.iter().sum();
    if !(total > 0.0) || !total.is_finite() {
        return Err(Error::EmptyNeighborhood);
    }
    for w in &mut weights {
        *w /= total;
    }
    Ok(weights)
}
