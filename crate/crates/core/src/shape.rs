//! Kendall planar shape space: preshapes, the rank-one Hermitian embedding,
//! projection through the leading eigenvector, and the full Procrustes
//! distance.  Landmark files round-trip through CSV and JSON.

use std::io::Write;
use std::path::Path;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::ambient::{AmbientPoint, Layout, ProjectionResult};
use crate::error::{Error, Result};
use crate::tol;

// ─── Configurations and preshapes ───────────────────────────────────────────

/// Raw landmark data: k complex numbers, k ≥ 3.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlanarConfiguration {
    pub landmarks: Vec<Complex64>,
}

impl PlanarConfiguration {
    pub fn new(landmarks: Vec<Complex64>) -> Result<Self> {
        if landmarks.len() < 3 {
            return Err(Error::InvalidInput(format!(
                "a planar configuration needs at least 3 landmarks, got {}",
                landmarks.len()
            )));
        }
        Ok(PlanarConfiguration { landmarks })
    }

    pub fn k(&self) -> usize {
        self.landmarks.len()
    }
}

/// A centered, unit-norm complex k-vector: the representative of a shape
/// up to rotation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Preshape {
    u: Vec<Complex64>,
}

impl Preshape {
    /// Validates the centering and unit-norm invariants.
    pub fn new(u: Vec<Complex64>) -> Result<Self> {
        let s: Complex64 = u.iter().sum();
        if s.norm() > tol::MEMBERSHIP {
            return Err(Error::InvalidInput(format!(
                "preshape is not centered (component sum norm {})",
                s.norm()
            )));
        }
        let n: f64 = u.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if (n - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidInput(format!(
                "preshape has norm {n}, expected 1"
            )));
        }
        Ok(Preshape { u })
    }

    pub fn coords(&self) -> &[Complex64] {
        &self.u
    }

    pub fn k(&self) -> usize {
        self.u.len()
    }
}

/// Centers and normalizes a configuration: u = (z − ⟨z⟩)/‖z − ⟨z⟩‖.
pub fn to_preshape(cfg: &PlanarConfiguration) -> Result<Preshape> {
    let k = cfg.k();
    let mean: Complex64 = cfg.landmarks.iter().sum::<Complex64>() / k as f64;
    let centered: Vec<Complex64> = cfg.landmarks.iter().map(|z| z - mean).collect();
    let n: f64 = centered.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if n < 1e-12 {
        return Err(Error::DegenerateInput(
            "all landmarks coincide; preshape undefined".into(),
        ));
    }
    let u: Vec<Complex64> = centered.into_iter().map(|z| z / n).collect();
    Ok(Preshape { u })
}

/// Re-centers and re-normalizes an arbitrary complex vector, used when a
/// corruption mechanism knocks a response off the preshape sphere.
pub fn renormalize(u: &[Complex64]) -> Result<Preshape> {
    to_preshape(&PlanarConfiguration { landmarks: u.to_vec() })
}

// ─── Embedding ──────────────────────────────────────────────────────────────

/// The rank-one Hermitian embedding u ↦ uu*, which forgets rotation.
pub fn vw_embed(p: &Preshape) -> AmbientPoint {
    let k = p.k();
    let mut coords = vec![0.0; 2 * k * k];
    for i in 0..k {
        for j in 0..k {
            let e = p.u[i] * p.u[j].conj();
            let off = 2 * (i * k + j);
            coords[off] = e.re;
            coords[off + 1] = e.im;
        }
    }
    AmbientPoint { coords, layout: Layout::HermitianMatrix(k) }
}

/// Real 2k×2k symmetric representation [[X, −Y], [Y, X]] of the Hermitian
/// matrix X + iY, letting a real eigensolver recover complex eigenpairs.
fn real_representation(y: &AmbientPoint, k: usize) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(2 * k, 2 * k);
    for i in 0..k {
        for j in 0..k {
            let (re, im) = y.entry(i, j);
            m[(i, j)] = re;
            m[(i, j + k)] = -im;
            m[(i + k, j)] = im;
            m[(i + k, j + k)] = re;
        }
    }
    m
}

/// Projects a Hermitian ambient point onto the embedded image: γγ* for γ
/// the leading unit eigenvector.  The gap is (λ₁ − λ₂)/λ₁; below the focal
/// threshold the leading eigenvector is not unique and projection fails.
pub fn shape_project(y: &AmbientPoint) -> Result<ProjectionResult> {
    let Layout::HermitianMatrix(k) = y.layout else {
        return Err(Error::InvalidInput("shape projection needs a matrix layout".into()));
    };
    y.check_hermitian()?;
    let eig = SymmetricEigen::new(real_representation(y, k));
    // Each complex eigenvalue appears twice in the real representation
    // (phase freedom); sort descending and read λ₁ = m₁, λ₂ = m₃.
    let mut order: Vec<usize> = (0..2 * k).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let l1 = eig.eigenvalues[order[0]];
    let l2 = eig.eigenvalues[order[2]];
    let gap = (l1 - l2) / l1.max(tol::DISTANCE_CLAMP);
    if !(gap > tol::SHAPE_FOCAL_GAP) {
        return Err(Error::FocalPoint(format!(
            "leading eigenvalue gap {gap:.3e} below threshold; projection not unique"
        )));
    }
    let v = eig.eigenvectors.column(order[0]);
    let gamma: Vec<Complex64> = (0..k).map(|i| Complex64::new(v[i], v[i + k])).collect();
    let gn: f64 = gamma.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let gamma: Vec<Complex64> = gamma.into_iter().map(|z| z / gn).collect();
    let point = vw_embed(&Preshape { u: gamma });
    Ok(ProjectionResult { point, gap })
}

/// Recovers the preshape from an embedded rank-one matrix, re-centering and
/// fixing the phase so the first nonzero coordinate has argument zero.
pub fn shape_unembed(p: &AmbientPoint) -> Result<Preshape> {
    let Layout::HermitianMatrix(k) = p.layout else {
        return Err(Error::InvalidInput("shape unembed needs a matrix layout".into()));
    };
    // Leading eigenvector through the projector (already rank one up to
    // floating error, so this is cheap and self-correcting).
    let proj = shape_project(p)?;
    let mut gamma: Vec<Complex64> = Vec::with_capacity(k);
    // The projector's columns are γ·conj(γ_j); take the column with the
    // largest diagonal to read off γ stably.
    let mut best = 0;
    let mut best_diag = f64::MIN;
    for j in 0..k {
        let (re, _) = proj.point.entry(j, j);
        if re > best_diag {
            best_diag = re;
            best = j;
        }
    }
    for i in 0..k {
        let (re, im) = proj.point.entry(i, best);
        gamma.push(Complex64::new(re, im));
    }
    let n: f64 = gamma.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    for z in gamma.iter_mut() {
        *z /= n;
    }
    // Kill accumulated centering error, then canonicalize the phase.
    let mean: Complex64 = gamma.iter().sum::<Complex64>() / k as f64;
    let mut u: Vec<Complex64> = gamma.into_iter().map(|z| z - mean).collect();
    let un: f64 = u.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if un < 1e-12 {
        return Err(Error::DegenerateInput("unembedded shape is degenerate".into()));
    }
    for z in u.iter_mut() {
        *z /= un;
    }
    let lead = u
        .iter()
        .find(|z| z.norm() > 1e-12)
        .copied()
        .ok_or_else(|| Error::DegenerateInput("unembedded shape is zero".into()))?;
    let phase = lead.conj() / lead.norm();
    for z in u.iter_mut() {
        *z *= phase;
    }
    Ok(Preshape { u })
}

// ─── Distances ──────────────────────────────────────────────────────────────

/// Full Procrustes distance √(1 − |⟨a,b⟩|²), rotation-invariant, in [0,1].
///
/// Computed as the norm of the component of `b` orthogonal to `a`, which is
/// the same quantity but keeps full precision when the shapes nearly
/// coincide (the textbook form squares away half the digits).
pub fn full_procrustes_distance(a: &Preshape, b: &Preshape) -> f64 {
    let ip: Complex64 = a
        .u
        .iter()
        .zip(&b.u)
        .map(|(x, y)| x.conj() * y)
        .sum();
    let residual: f64 = a
        .u
        .iter()
        .zip(&b.u)
        .map(|(x, y)| (y - ip * x).norm_sqr())
        .sum();
    residual.sqrt().min(1.0)
}

// ─── Landmark files ─────────────────────────────────────────────────────────

/// Reads shapes from CSV with header `id,landmark,x,y`; landmark count must
/// be constant across ids.
pub fn read_landmarks_csv(path: &Path) -> Result<Vec<PlanarConfiguration>> {
    let mut reader = csv::Reader::from_path(path)?;
    let headers = reader.headers()?.clone();
    if headers.iter().collect::<Vec<_>>() != ["id", "landmark", "x", "y"] {
        return Err(Error::InvalidInput(format!(
            "landmark CSV header must be id,landmark,x,y, got {:?}",
            headers
        )));
    }
    let mut shapes: Vec<(String, Vec<(usize, Complex64)>)> = Vec::new();
    for record in reader.records() {
        let record = record?;
        let id = record.get(0).unwrap_or("").to_string();
        let parse = |i: usize, what: &str| -> Result<f64> {
            record
                .get(i)
                .ok_or_else(|| Error::InvalidInput(format!("missing {what}")))?
                .parse::<f64>()
                .map_err(|e| Error::InvalidInput(format!("bad {what}: {e}")))
        };
        let lm = parse(1, "landmark index")? as usize;
        let x = parse(2, "x")?;
        let y = parse(3, "y")?;
        match shapes.last_mut() {
            Some((last_id, rows)) if *last_id == id => rows.push((lm, Complex64::new(x, y))),
            _ => shapes.push((id, vec![(lm, Complex64::new(x, y))])),
        }
    }
    let mut out = Vec::with_capacity(shapes.len());
    let mut k_expected = None;
    for (id, mut rows) in shapes {
        rows.sort_by_key(|&(lm, _)| lm);
        let k = rows.len();
        if *k_expected.get_or_insert(k) != k {
            return Err(Error::InvalidInput(format!(
                "shape {id} has {k} landmarks; expected {}",
                k_expected.unwrap()
            )));
        }
        out.push(PlanarConfiguration::new(
            rows.into_iter().map(|(_, z)| z).collect(),
        )?);
    }
    if out.is_empty() {
        return Err(Error::InvalidInput("landmark CSV contains no shapes".into()));
    }
    Ok(out)
}

/// Writes shapes in the `id,landmark,x,y` CSV format.
pub fn write_landmarks_csv<W: Write>(w: W, shapes: &[PlanarConfiguration]) -> Result<()> {
    let mut writer = csv::Writer::from_writer(w);
    writer.write_record(["id", "landmark", "x", "y"])?;
    for (id, shape) in shapes.iter().enumerate() {
        for (lm, z) in shape.landmarks.iter().enumerate() {
            writer.write_record([
                id.to_string(),
                lm.to_string(),
                format!("{:.17e}", z.re),
                format!("{:.17e}", z.im),
            ])?;
        }
    }
    writer.flush()?;
    Ok(())
}

/// Reads shapes from a JSON array of arrays of [x, y] pairs.
pub fn read_landmarks_json(text: &str) -> Result<Vec<PlanarConfiguration>> {
    let raw: Vec<Vec<[f64; 2]>> = serde_json::from_str(text)?;
    raw.into_iter()
        .map(|shape| {
            PlanarConfiguration::new(
                shape
                    .into_iter()
                    .map(|[x, y]| Complex64::new(x, y))
                    .collect(),
            )
        })
        .collect()
}
