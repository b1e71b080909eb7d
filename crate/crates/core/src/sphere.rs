//! Unit sphere S^d: inclusion embedding, normalization projection, angular
//! coordinates on S¹, and the great-circle Exp/Log maps backing the
//! intrinsic-median baseline.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::ambient::{self, AmbientPoint, ProjectionResult};
use crate::error::{Error, Result};
use crate::tol;
use crate::weiszfeld::{Termination, WeiszfeldConfig};

// ─── Points and angles ──────────────────────────────────────────────────────

/// A unit vector in ℝ^{d+1}.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpherePoint {
    unit: Vec<f64>,
}

impl SpherePoint {
    /// Builds a point after verifying the unit-norm invariant.
    pub fn new(unit: Vec<f64>) -> Result<Self> {
        let n = ambient::norm(&unit);
        if (n - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidInput(format!(
                "sphere point has norm {n}, expected 1"
            )));
        }
        Ok(SpherePoint { unit })
    }

    /// Normalizes an arbitrary nonzero vector onto the sphere.
    pub fn from_direction(v: &[f64]) -> Result<Self> {
        let n = ambient::norm(v);
        if n < tol::SPHERE_FOCAL_NORM {
            return Err(Error::FocalPoint("zero direction".into()));
        }
        Ok(SpherePoint { unit: v.iter().map(|x| x / n).collect() })
    }

    pub fn coords(&self) -> &[f64] {
        &self.unit
    }

    /// Sphere dimension d (ambient dimension minus one).
    pub fn dim(&self) -> usize {
        self.unit.len() - 1
    }
}

/// An angle in [0, 2π), the native coordinate on S¹.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Angle(f64);

impl Angle {
    /// Wraps any real angle into [0, 2π).
    pub fn wrap(theta: f64) -> Self {
        Angle(theta.rem_euclid(TAU))
    }

    pub fn radians(self) -> f64 {
        self.0
    }
}

/// (cos θ, sin θ)ᵀ.
pub fn angle_to_point(theta: Angle) -> SpherePoint {
    let t = theta.radians();
    SpherePoint { unit: vec![t.cos(), t.sin()] }
}

/// Inverse of [`angle_to_point`]; requires a point on S¹.
pub fn point_to_angle(p: &SpherePoint) -> Result<Angle> {
    if p.unit.len() != 2 {
        return Err(Error::InvalidInput(format!(
            "angular coordinates need S¹, got ambient dimension {}",
            p.unit.len()
        )));
    }
    Ok(Angle::wrap(p.unit[1].atan2(p.unit[0])))
}

// ─── Embedding and projection ───────────────────────────────────────────────

/// The inclusion embedding: native coordinates are already ambient.
pub fn sphere_embed(p: &SpherePoint) -> AmbientPoint {
    AmbientPoint::real(p.unit.clone())
}

/// Radial projection μ ↦ μ/‖μ‖ with gap = ‖μ‖.
pub fn sphere_project(mu: &AmbientPoint) -> Result<ProjectionResult> {
    let n = ambient::norm(&mu.coords);
    if n < tol::SPHERE_FOCAL_NORM {
        return Err(Error::FocalPoint(
            "ambient mean has vanishing norm; direction undefined".into(),
        ));
    }
    let coords = mu.coords.iter().map(|x| x / n).collect();
    Ok(ProjectionResult { point: AmbientPoint::real(coords), gap: n })
}

pub fn sphere_unembed(p: &AmbientPoint) -> Result<SpherePoint> {
    SpherePoint::new(p.coords.clone())
}

// ─── Great-circle geometry ──────────────────────────────────────────────────

/// Exponential map: follows the great circle from `base` in direction `v`
/// (a tangent vector, orthogonal to `base`) for arc length ‖v‖.
pub fn sphere_exp(base: &SpherePoint, v: &[f64]) -> Result<SpherePoint> {
    if v.len() != base.unit.len() {
        return Err(Error::InvalidInput("tangent dimension mismatch".into()));
    }
    let radial = ambient::dot(&base.unit, v);
    if radial.abs() > 1e-10 {
        return Err(Error::InvalidInput(format!(
            "tangent vector has radial component {radial}"
        )));
    }
    let t = ambient::norm(v);
    if t == 0.0 {
        return Ok(base.clone());
    }
    let (s, c) = t.sin_cos();
    let out: Vec<f64> = base
        .unit
        .iter()
        .zip(v)
        .map(|(b, vi)| c * b + s * vi / t)
        .collect();
    // Renormalize to absorb rounding drift before the invariant check.
    SpherePoint::from_direction(&out)
}

/// Logarithm map: the tangent vector at `base` pointing along the minimal
/// great circle to `q`, with norm equal to the geodesic distance.
pub fn sphere_log(base: &SpherePoint, q: &SpherePoint) -> Result<Vec<f64>> {
    let c = ambient::dot(&base.unit, &q.unit).clamp(-1.0, 1.0);
    if c < -1.0 + 1e-12 {
        return Err(Error::DegenerateInput(
            "log map undefined for antipodal points".into(),
        ));
    }
    let theta = c.acos();
    // Component of q orthogonal to base.
    let mut perp: Vec<f64> = q
        .unit
        .iter()
        .zip(&base.unit)
        .map(|(qi, bi)| qi - c * bi)
        .collect();
    let pn = ambient::norm(&perp);
    if pn < 1e-15 {
        return Ok(vec![0.0; base.unit.len()]);
    }
    ambient::scale(&mut perp, theta / pn);
    Ok(perp)
}

// ─── Intrinsic median baseline ──────────────────────────────────────────────

/// Geodesic-median iteration on the sphere, used as a benchmark baseline.
///
/// Each step maps the data into the tangent space at the current iterate,
/// takes the inverse-distance-weighted tangent direction, and follows the
/// geodesic by `alpha` times that vector, halving `alpha` whenever the
/// objective fails to decrease.  Stops when the geodesic step norm drops
/// below `cfg.epsilon`.  An iterate colliding with a data point is resolved
/// by the same anchored optimality test as the ambient solver: the point is
/// kept if no descent direction exists there, otherwise the iterate is
/// nudged along the negative subgradient.
pub fn intrinsic_median_sphere(
    data: &[SpherePoint],
    alpha: f64,
    cfg: &WeiszfeldConfig,
) -> Result<(SpherePoint, usize, Termination)> {
    if data.is_empty() {
        return Err(Error::InvalidInput("intrinsic median of no points".into()));
    }
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::InvalidInput(format!("step alpha {alpha} outside (0,1]")));
    }
    let geodesic_objective = |m: &SpherePoint| -> f64 {
        data.iter()
            .map(|x| ambient::dot(m.coords(), x.coords()).clamp(-1.0, 1.0).acos())
            .sum()
    };
    // Start at the normalized ambient mean; fall back to the first point if
    // the mean is focal (e.g. perfectly balanced antipodes).
    let dim = data[0].unit.len();
    let mut mean = vec![0.0; dim];
    for x in data {
        ambient::axpy(&mut mean, 1.0 / data.len() as f64, x.coords());
    }
    let mut m = SpherePoint::from_direction(&mean).unwrap_or_else(|_| data[0].clone());
    let mut step = alpha;
    for t in 1..=cfg.max_iters {
        // Inverse-distance-weighted tangent direction.
        let mut v = vec![0.0; dim];
        let mut wsum = 0.0;
        let mut collision = None;
        for (i, x) in data.iter().enumerate() {
            let log = sphere_log(&m, x)?;
            let d = ambient::norm(&log);
            if d < 1e-14 {
                collision = Some(i);
                continue;
            }
            ambient::axpy(&mut v, 1.0 / d, &log);
            wsum += 1.0 / d;
        }
        if let Some(i) = collision {
            // Subgradient test at the data point: ‖Σ_{j≠i} log/d‖ ≤ w_i
            // (uniform weights 1) means x_i is the median.
            if ambient::norm(&v) <= 1.0 {
                return Ok((data[i].clone(), t, Termination::DataPointOptimal));
            }
        }
        if wsum == 0.0 {
            // All data at the current point: it is the median.
            return Ok((m, t, Termination::DataPointOptimal));
        }
        ambient::scale(&mut v, step / wsum);
        let proposal = sphere_exp(&m, &v)?;
        if geodesic_objective(&proposal) > geodesic_objective(&m) && step > 1e-8 {
            step *= 0.5;
            continue;
        }
        let moved = ambient::dist(proposal.coords(), m.coords());
        m = proposal;
        if moved < cfg.epsilon {
            return Ok((m, t, Termination::Displacement));
        }
    }
    Ok((m, cfg.max_iters, Termination::MaxIters))
}
