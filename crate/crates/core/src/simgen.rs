//! Simulation generators: circular samples (von Mises and wrapped stable),
//! planar-shape regression data, and the contamination mechanisms.  Every
//! generator is a pure function of its spec and a named, versioned RNG, so
//! runs are byte-reproducible from a seed.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::relr::RegressionDataset;
use crate::shape::{to_preshape, PlanarConfiguration, Preshape};
use crate::manifold::ManifoldPoint;

/// Version tag stamped into run manifests; bump on any change that alters
/// generated bytes for a fixed seed.
pub const GENERATOR_VERSION: &str = "1";
/// The RNG family behind every generator.
pub const RNG_NAME: &str = "chacha8";

// ─── Seeding ────────────────────────────────────────────────────────────────

/// Derives an independent 256-bit seed for one experiment cell repetition
/// from the global seed, a cell key string, and the repetition index.
pub fn cell_seed(global: u64, key: &str, rep: u32) -> [u8; 32] {
    let mut hasher = Sha256::new();
    hasher.update(global.to_le_bytes());
    hasher.update(key.as_bytes());
    hasher.update(rep.to_le_bytes());
    hasher.finalize().into()
}

/// The per-cell RNG: ChaCha8 keyed by `cell_seed`.
pub fn cell_rng(global: u64, key: &str, rep: u32) -> ChaCha8Rng {
    ChaCha8Rng::from_seed(cell_seed(global, key, rep))
}

fn wrap(theta: f64) -> f64 {
    let w = theta.rem_euclid(TAU);
    if w == TAU {
        0.0
    } else {
        w
    }
}

// ─── Circular samplers ──────────────────────────────────────────────────────

/// Draws `n` angles in [0, 2π) from the von Mises law with mean direction
/// `mu` and concentration `kappa` (rejection sampling; `kappa = 0` is the
/// uniform law).
pub fn sample_von_mises(mu: f64, kappa: f64, n: usize, rng: &mut ChaCha8Rng) -> Result<Vec<f64>> {
    if !(kappa >= 0.0) || !kappa.is_finite() {
        return Err(Error::InvalidInput(format!(
            "concentration must be finite and nonnegative, got {kappa}"
        )));
    }
    if kappa < 1e-12 {
        return Ok((0..n).map(|_| wrap(rng.random::<f64>() * TAU)).collect());
    }
    let tau = 1.0 + (1.0 + 4.0 * kappa * kappa).sqrt();
    let rho = (tau - (2.0 * tau).sqrt()) / (2.0 * kappa);
    let r = (1.0 + rho * rho) / (2.0 * rho);
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let f = loop {
            let u1: f64 = rng.random();
            let u2: f64 = rng.random();
            let z = (PI * u1).cos();
            let f = (1.0 + r * z) / (r + z);
            let c = kappa * (r - f);
            if c * (2.0 - c) - u2 > 0.0 || (c / u2).ln() + 1.0 - c >= 0.0 {
                break f;
            }
        };
        let u3: f64 = rng.random();
        let theta = if u3 - 0.5 >= 0.0 {
            mu + f.clamp(-1.0, 1.0).acos()
        } else {
            mu - f.clamp(-1.0, 1.0).acos()
        };
        out.push(wrap(theta));
    }
    Ok(out)
}

/// Wrapped stable law on the circle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct WrappedStableSpec {
    /// Stability index in (0, 2].
    pub alpha: f64,
    /// Scale, nonnegative; zero degenerates to the point mass at `mu`.
    pub tau: f64,
    /// Skewness in [−1, 1].
    #[serde(default)]
    pub beta: f64,
    /// Location angle.
    #[serde(default)]
    pub mu: f64,
}

impl WrappedStableSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha <= 2.0) {
            return Err(Error::InvalidInput(format!(
                "stability index must lie in (0, 2], got {}",
                self.alpha
            )));
        }
        if !(self.tau >= 0.0) || !self.tau.is_finite() {
            return Err(Error::InvalidInput(format!(
                "scale must be finite and nonnegative, got {}",
                self.tau
            )));
        }
        if !(-1.0..=1.0).contains(&self.beta) {
            return Err(Error::InvalidInput(format!(
                "skewness must lie in [-1, 1], got {}",
                self.beta
            )));
        }
        if !self.mu.is_finite() {
            return Err(Error::InvalidInput("location must be finite".into()));
        }
        Ok(())
    }
}

/// One standard stable draw (unit scale, zero location) by the
/// Chambers–Mallows–Stuck construction.
fn standard_stable(alpha: f64, beta: f64, rng: &mut ChaCha8Rng) -> f64 {
    let u = PI * (rng.random::<f64>() - 0.5);
    let w: f64 = Exp1.sample(rng);
    if (alpha - 1.0).abs() < 1e-12 {
        let a = PI / 2.0 + beta * u;
        (2.0 / PI) * (a * u.tan() - beta * ((PI / 2.0 * w * u.cos()) / a).ln())
    } else {
        let zeta = -beta * (PI * alpha / 2.0).tan();
        let xi = (-zeta).atan() / alpha;
        let factor = (1.0 + zeta * zeta).powf(1.0 / (2.0 * alpha));
        factor * (alpha * (u + xi)).sin() / u.cos().powf(1.0 / alpha)
            * ((u - alpha * (u + xi)).cos() / w).powf((1.0 - alpha) / alpha)
    }
}

/// Draws `n` angles in [0, 2π) from the wrapped stable law.
pub fn sample_wrapped_stable(
    spec: &WrappedStableSpec,
    n: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<f64>> {
    spec.validate()?;
    if spec.tau == 0.0 {
        return Ok(vec![wrap(spec.mu); n]);
    }
    let shift = if (spec.alpha - 1.0).abs() < 1e-12 {
        spec.mu + (2.0 / PI) * spec.beta * spec.tau * spec.tau.ln()
    } else {
        spec.mu
    };
    Ok((0..n)
        .map(|_| wrap(spec.tau * standard_stable(spec.alpha, spec.beta, rng) + shift))
        .collect())
}

/// Density of the wrapped stable law, by its Fourier series truncated where
/// the coefficients drop below 1e-12.
pub fn wrapped_stable_density(spec: &WrappedStableSpec, theta: f64) -> Result<f64> {
    spec.validate()?;
    if spec.tau == 0.0 {
        return Err(Error::InvalidInput(
            "zero scale has no density (point mass)".into(),
        ));
    }
    let terms = wrapped_stable_series_len(spec)?;
    let mut sum = 1.0;
    for m in 1..=terms {
        let mf = m as f64;
        let amp = (-(spec.tau * mf).powf(spec.alpha)).exp();
        let phase = if (spec.alpha - 1.0).abs() < 1e-12 {
            spec.mu * mf - (2.0 / PI) * spec.beta * spec.tau * mf * mf.ln()
        } else {
            spec.mu * mf + spec.beta * (PI * spec.alpha / 2.0).tan() * (spec.tau * mf).powf(spec.alpha)
        };
        sum += 2.0 * amp * (mf * theta - phase).cos();
    }
    Ok(sum / TAU)
}

/// Number of Fourier terms with coefficient magnitude at least 1e-12.
pub fn wrapped_stable_series_len(spec: &WrappedStableSpec) -> Result<usize> {
    let cutoff = (12.0 * std::f64::consts::LN_10).powf(1.0 / spec.alpha) / spec.tau;
    if !cutoff.is_finite() || cutoff > 1e7 {
        return Err(Error::InvalidInput(
            "density series would need more than 1e7 terms at this scale".into(),
        ));
    }
    Ok(cutoff.ceil() as usize)
}

// ─── Contamination ──────────────────────────────────────────────────────────

/// How contaminated observations are produced.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub enum ContaminationMechanism {
    /// Replace selected angles with draws from N(`mu_out`, `sigma`²), wrapped.
    #[serde(rename_all = "kebab-case")]
    ReplaceAngles { mu_out: f64, sigma: f64 },
    /// Add a complex normal offset with mean vector `mu` (one [re, im] pair
    /// per landmark) and isotropic scale `scale` to selected configurations.
    #[serde(rename_all = "kebab-case")]
    AddComplexNormal { mu: Vec<[f64; 2]>, scale: f64 },
    /// Replace the listed landmark coordinates of selected configurations
    /// with N(`mu`, `sigma`²) draws in both components.
    #[serde(rename_all = "kebab-case")]
    CorruptLandmarks {
        indices: Vec<usize>,
        #[serde(default = "default_corrupt_mu")]
        mu: f64,
        #[serde(default = "default_corrupt_sigma")]
        sigma: f64,
    },
}

fn default_corrupt_mu() -> f64 {
    1000.0
}

fn default_corrupt_sigma() -> f64 {
    5.0
}

/// Contamination rate plus mechanism.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContaminationSpec {
    /// Fraction of observations to corrupt, in [0, 0.5].
    pub rate: f64,
    pub mechanism: ContaminationMechanism,
}

impl ContaminationSpec {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=0.5).contains(&self.rate) {
            return Err(Error::InvalidInput(format!(
                "contamination rate must lie in [0, 0.5], got {}",
                self.rate
            )));
        }
        match &self.mechanism {
            ContaminationMechanism::ReplaceAngles { sigma, .. } => {
                if !(*sigma >= 0.0) {
                    return Err(Error::InvalidInput("angle noise scale must be nonnegative".into()));
                }
            }
            ContaminationMechanism::AddComplexNormal { scale, .. } => {
                if !(*scale >= 0.0) {
                    return Err(Error::InvalidInput("offset scale must be nonnegative".into()));
                }
            }
            ContaminationMechanism::CorruptLandmarks { indices, sigma, .. } => {
                if indices.is_empty() {
                    return Err(Error::InvalidInput("no landmarks selected to corrupt".into()));
                }
                if !(*sigma >= 0.0) {
                    return Err(Error::InvalidInput("landmark noise scale must be nonnegative".into()));
                }
            }
        }
        Ok(())
    }

    fn count(&self, n: usize) -> usize {
        (self.rate * n as f64).ceil() as usize
    }
}

fn pick_indices(n: usize, m: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    rand::seq::index::sample(rng, n, m).into_vec()
}

/// Replaces ⌈rate·n⌉ angles (chosen without replacement) with wrapped
/// normal draws; the sample size stays fixed.
pub fn contaminate_angles(
    angles: &[f64],
    spec: &ContaminationSpec,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<f64>> {
    spec.validate()?;
    let ContaminationMechanism::ReplaceAngles { mu_out, sigma } = &spec.mechanism else {
        return Err(Error::InvalidInput(
            "angle samples take the replace-angles mechanism".into(),
        ));
    };
    let mut out = angles.to_vec();
    let m = spec.count(out.len());
    if m == 0 {
        return Ok(out);
    }
    for i in pick_indices(out.len(), m, rng) {
        let z: f64 = StandardNormal.sample(rng);
        out[i] = wrap(mu_out + sigma * z);
    }
    Ok(out)
}

/// Contaminated planar configurations, already re-normalized to preshapes,
/// with the corrupted indices recorded.
#[derive(Debug, Clone)]
pub struct ContaminatedShapes {
    pub preshapes: Vec<Preshape>,
    pub corrupted: Vec<usize>,
}

/// Applies a shape-space mechanism to ⌈rate·n⌉ configurations (chosen
/// without replacement) and re-normalizes everything to preshapes.
pub fn contaminate_shapes(
    configs: &[PlanarConfiguration],
    spec: &ContaminationSpec,
    rng: &mut ChaCha8Rng,
) -> Result<ContaminatedShapes> {
    spec.validate()?;
    if configs.is_empty() {
        return Err(Error::InvalidInput("no configurations given".into()));
    }
    let k = configs[0].landmarks.len();
    if configs.iter().any(|c| c.landmarks.len() != k) {
        return Err(Error::InvalidInput("configurations differ in landmark count".into()));
    }
    match &spec.mechanism {
        ContaminationMechanism::ReplaceAngles { .. } => {
            return Err(Error::InvalidInput(
                "shape samples take a shape-space mechanism, not replace-angles".into(),
            ));
        }
        ContaminationMechanism::AddComplexNormal { mu, .. } => {
            if mu.len() != k {
                return Err(Error::InvalidInput(format!(
                    "offset mean has {} entries for {k} landmarks",
                    mu.len()
                )));
            }
        }
        ContaminationMechanism::CorruptLandmarks { indices, .. } => {
            if let Some(&bad) = indices.iter().find(|&&i| i >= k) {
                return Err(Error::InvalidInput(format!(
                    "landmark index {bad} out of range for {k} landmarks"
                )));
            }
        }
    }
    let mut configs = configs.to_vec();
    let m = spec.count(configs.len());
    let mut corrupted = pick_indices(configs.len(), m, rng);
    corrupted.sort_unstable();
    for &i in &corrupted {
        let z = &mut configs[i].landmarks;
        match &spec.mechanism {
            ContaminationMechanism::ReplaceAngles { .. } => unreachable!(),
            ContaminationMechanism::AddComplexNormal { mu, scale } => {
                let s = scale / 2.0_f64.sqrt();
                for (zj, mj) in z.iter_mut().zip(mu) {
                    let re: f64 = StandardNormal.sample(rng);
                    let im: f64 = StandardNormal.sample(rng);
                    *zj += Complex64::new(mj[0] + s * re, mj[1] + s * im);
                }
            }
            ContaminationMechanism::CorruptLandmarks { indices, mu, sigma } => {
                for &j in indices {
                    let re: f64 = StandardNormal.sample(rng);
                    let im: f64 = StandardNormal.sample(rng);
                    z[j] = Complex64::new(mu + sigma * re, mu + sigma * im);
                }
            }
        }
    }
    let preshapes = configs
        .iter()
        .map(to_preshape)
        .collect::<Result<Vec<_>>>()?;
    Ok(ContaminatedShapes { preshapes, corrupted })
}

// ─── Shape regression generator ─────────────────────────────────────────────

/// Landmark-curve regression model: covariates X ~ U(lower, upper)^p drive
/// an index t = Σ X_j; landmark j of the response has angle
/// j/2 + (j/k²)·t and radius 0.1 + (j/k²)·t, with independent normal noise
/// on both.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct ShapeGenSpec {
    pub landmarks: usize,
    pub covariate_dim: usize,
    pub lower: f64,
    pub upper: f64,
    pub angle_noise: f64,
    pub radial_noise: f64,
    /// Test hook: zero the index coefficients, making responses i.i.d.
    /// around the base shape.
    #[serde(default)]
    pub flatten_curve: bool,
}

impl ShapeGenSpec {
    pub fn validate(&self) -> Result<()> {
        if self.landmarks < 3 {
            return Err(Error::InvalidInput(format!(
                "need at least 3 landmarks, got {}",
                self.landmarks
            )));
        }
        if self.covariate_dim == 0 {
            return Err(Error::InvalidInput("covariate dimension must be positive".into()));
        }
        if !(self.lower < self.upper) {
            return Err(Error::InvalidInput(format!(
                "covariate range [{}, {}] is empty",
                self.lower, self.upper
            )));
        }
        if !(self.angle_noise >= 0.0) || !(self.radial_noise >= 0.0) {
            return Err(Error::InvalidInput("noise scales must be nonnegative".into()));
        }
        Ok(())
    }

    fn slope(&self, j: usize) -> f64 {
        if self.flatten_curve {
            0.0
        } else {
            j as f64 / (self.landmarks * self.landmarks) as f64
        }
    }

    fn noiseless_config(&self, t: f64) -> PlanarConfiguration {
        let landmarks = (1..=self.landmarks)
            .map(|j| {
                let beta = self.slope(j);
                let phi = j as f64 / 2.0 + beta * t;
                let gamma = 0.1 + beta * t;
                Complex64::from_polar(gamma, phi)
            })
            .collect();
        PlanarConfiguration { landmarks }
    }
}

/// Noise-free shape at index value t.
pub fn shape_curve_point(spec: &ShapeGenSpec, t: f64) -> Result<Preshape> {
    spec.validate()?;
    to_preshape(&spec.noiseless_config(t))
}

/// Mean offset for coherent contamination: a complex landmark vector of
/// norm `strength` mixing the mid-curve shape (weight √mix) with a regular
/// polygon component orthogonalized against it.  Returned as [re, im]
/// pairs ready for the add-complex-normal mechanism.
pub fn coherent_outlier_mean(
    spec: &ShapeGenSpec,
    strength: f64,
    mix: f64,
) -> Result<Vec<[f64; 2]>> {
    spec.validate()?;
    if !(0.0..=1.0).contains(&mix) {
        return Err(Error::InvalidInput(format!("mix must lie in [0, 1], got {mix}")));
    }
    if !(strength >= 0.0) || !strength.is_finite() {
        return Err(Error::InvalidInput("offset strength must be nonnegative".into()));
    }
    let k = spec.landmarks;
    let t_mid = spec.covariate_dim as f64 * (spec.lower + spec.upper) / 2.0;
    let u_mid = shape_curve_point(spec, t_mid)?;
    let u_mid = u_mid.coords().to_vec();
    let polygon = PlanarConfiguration {
        landmarks: (1..=k)
            .map(|j| Complex64::from_polar(1.0, TAU * j as f64 / k as f64))
            .collect(),
    };
    let polygon = to_preshape(&polygon)?;
    let ip: Complex64 = u_mid
        .iter()
        .zip(polygon.coords())
        .map(|(a, b)| a.conj() * b)
        .sum();
    let mut ortho: Vec<Complex64> = polygon
        .coords()
        .iter()
        .zip(&u_mid)
        .map(|(p, u)| p - ip * u)
        .collect();
    let norm = ortho.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if norm < 1e-12 {
        return Err(Error::DegenerateInput(
            "polygon component coincides with the mid-curve shape".into(),
        ));
    }
    for z in &mut ortho {
        *z /= norm;
    }
    Ok(u_mid
        .iter()
        .zip(&ortho)
        .map(|(u, w)| {
            let z = strength * (mix.sqrt() * u + (1.0 - mix).sqrt() * w);
            [z.re, z.im]
        })
        .collect())
}

/// One generated shape-regression sample: covariates, raw configurations
/// (kept so contamination can act before normalization), the preshaped
/// responses, and the noise-free truth per observation.
#[derive(Debug, Clone)]
pub struct ShapeRegressionSample {
    pub covariates: Vec<Vec<f64>>,
    pub configurations: Vec<PlanarConfiguration>,
    pub responses: Vec<Preshape>,
    pub truth: Vec<Preshape>,
}

impl ShapeRegressionSample {
    /// Bundles the covariates with the given responses (clean or
    /// contaminated) into a dataset.
    pub fn dataset_with(&self, responses: &[Preshape]) -> Result<RegressionDataset> {
        RegressionDataset::new(
            self.covariates.clone(),
            responses.iter().cloned().map(ManifoldPoint::Shape).collect(),
        )
    }

    pub fn dataset(&self) -> Result<RegressionDataset> {
        self.dataset_with(&self.responses)
    }
}

/// Draws `n` observations from the landmark-curve model.
pub fn generate_shape_regression(
    spec: &ShapeGenSpec,
    n: usize,
    rng: &mut ChaCha8Rng,
) -> Result<ShapeRegressionSample> {
    spec.validate()?;
    if n == 0 {
        return Err(Error::InvalidInput("sample size must be positive".into()));
    }
    let k = spec.landmarks;
    let width = spec.upper - spec.lower;
    let mut covariates = Vec::with_capacity(n);
    let mut configurations = Vec::with_capacity(n);
    let mut responses = Vec::with_capacity(n);
    let mut truth = Vec::with_capacity(n);
    for _ in 0..n {
        let x: Vec<f64> = (0..spec.covariate_dim)
            .map(|_| spec.lower + width * rng.random::<f64>())
            .collect();
        let t: f64 = x.iter().sum();
        let mut landmarks = Vec::with_capacity(k);
        for j in 1..=k {
            let beta = spec.slope(j);
            let phi_noise: f64 = StandardNormal.sample(rng);
            let gam_noise: f64 = StandardNormal.sample(rng);
            let phi = j as f64 / 2.0 + beta * t + spec.angle_noise * phi_noise;
            let gamma = 0.1 + beta * t + spec.radial_noise * gam_noise;
            landmarks.push(Complex64::from_polar(gamma, phi));
        }
        let config = PlanarConfiguration { landmarks };
        responses.push(to_preshape(&config)?);
        truth.push(shape_curve_point(spec, t)?);
        configurations.push(config);
        covariates.push(x);
    }
    Ok(ShapeRegressionSample { covariates, configurations, responses, truth })
}
