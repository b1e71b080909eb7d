//! Unified manifold dispatch: one point type covering every supported
//! manifold, with embed/project/distance routed by descriptor so the
//! estimators can stay generic.

use serde::{Deserialize, Serialize};

use crate::ambient::{self, AmbientPoint};
use crate::error::{Error, Result};

pub use crate::ambient::ManifoldDescriptor;
use crate::shape::{self, Preshape};
use crate::spd::{self, SpdPoint};
use crate::sphere::{self, SpherePoint};

/// A point on one of the supported manifolds, in native coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum ManifoldPoint {
    Sphere(SpherePoint),
    Shape(Preshape),
    Spd(SpdPoint),
}

impl ManifoldPoint {
    /// The descriptor this point naturally belongs to.
    pub fn descriptor(&self) -> ManifoldDescriptor {
        match self {
            ManifoldPoint::Sphere(p) => ManifoldDescriptor::Sphere { dim: p.dim() },
            ManifoldPoint::Shape(p) => ManifoldDescriptor::PlanarShape { landmarks: p.k() },
            ManifoldPoint::Spd(p) => ManifoldDescriptor::Spd { size: p.size() },
        }
    }

    pub fn matches(&self, desc: &ManifoldDescriptor) -> bool {
        self.descriptor() == *desc
    }
}

/// Embeds a native point into its ambient space.
pub fn embed(p: &ManifoldPoint) -> AmbientPoint {
    match p {
        ManifoldPoint::Sphere(s) => sphere::sphere_embed(s),
        ManifoldPoint::Shape(s) => shape::vw_embed(s),
        ManifoldPoint::Spd(s) => spd::spd_embed(s),
    }
}

/// Projects an ambient point onto the embedded image and pulls it back to
/// native coordinates.  Returns the focal gap alongside the point.
pub fn project(desc: &ManifoldDescriptor, y: &AmbientPoint) -> Result<(ManifoldPoint, f64)> {
    match desc {
        ManifoldDescriptor::Sphere { dim } => {
            if y.coords.len() != dim + 1 {
                return Err(Error::InvalidInput(format!(
                    "sphere S^{dim} expects ambient dimension {}, got {}",
                    dim + 1,
                    y.coords.len()
                )));
            }
            let r = sphere::sphere_project(y)?;
            Ok((ManifoldPoint::Sphere(sphere::sphere_unembed(&r.point)?), r.gap))
        }
        ManifoldDescriptor::PlanarShape { landmarks } => {
            if y.coords.len() != desc.ambient_dim() {
                return Err(Error::InvalidInput(format!(
                    "shape space with {landmarks} landmarks expects {} scalars, got {}",
                    desc.ambient_dim(),
                    y.coords.len()
                )));
            }
            let r = shape::shape_project(y)?;
            Ok((ManifoldPoint::Shape(shape::shape_unembed(&r.point)?), r.gap))
        }
        ManifoldDescriptor::Spd { .. } => {
            let p = spd::spd_unembed_project(y)?;
            Ok((ManifoldPoint::Spd(p), f64::INFINITY))
        }
    }
}

/// Extrinsic distance ‖J(a) − J(b)‖ in the shared ambient space.
pub fn extrinsic_distance(a: &ManifoldPoint, b: &ManifoldPoint) -> Result<f64> {
    if a.descriptor() != b.descriptor() {
        return Err(Error::InvalidInput(
            "points do not belong to the same manifold".into(),
        ));
    }
    let ea = embed(a);
    let eb = embed(b);
    Ok(ambient::dist(&ea.coords, &eb.coords))
}

/// Membership check: does the ambient point lie on the embedded image?
/// Used by invariant tests; tolerance from the central list.
pub fn on_embedded_image(desc: &ManifoldDescriptor, y: &AmbientPoint) -> bool {
    match desc {
        ManifoldDescriptor::Sphere { .. } => {
            (ambient::norm(&y.coords) - 1.0).abs() < crate::tol::MEMBERSHIP
        }
        ManifoldDescriptor::PlanarShape { landmarks } => {
            let k = *landmarks;
            // Rank-one trace-one Hermitian: P² = P and tr P = 1.
            let trace: f64 = (0..k).map(|i| y.entry(i, i).0).sum();
            if (trace - 1.0).abs() > crate::tol::MEMBERSHIP {
                return false;
            }
            // Frobenius norm of P² − P.
            let mut residue = 0.0;
            for i in 0..k {
                for j in 0..k {
                    let (mut re, mut im) = (0.0, 0.0);
                    for l in 0..k {
                        let (a_re, a_im) = y.entry(i, l);
                        let (b_re, b_im) = y.entry(l, j);
                        re += a_re * b_re - a_im * b_im;
                        im += a_re * b_im + a_im * b_re;
                    }
                    let (p_re, p_im) = y.entry(i, j);
                    residue += (re - p_re).powi(2) + (im - p_im).powi(2);
                }
            }
            residue.sqrt() < crate::tol::MEMBERSHIP
        }
        ManifoldDescriptor::Spd { .. } => true,
    }
}
