//! Weighted Fermat–Weber solvers: the classic Weiszfeld iteration with the
//! anchored initialization and optimality test, and the smoothed
//! accelerated variant with its momentum schedule, plus the certificate
//! machinery that checks both convergence bounds against a high-precision
//! reference solve.

use serde::{Deserialize, Serialize};

use crate::ambient::{self, AmbientPoint};
use crate::error::{Error, Result};
use crate::tol;

// ─── Configuration and reports ──────────────────────────────────────────────

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    Plain,
    SmoothedAccelerated,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Init {
    VardiZhang,
    Centroid,
    Explicit(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeiszfeldConfig {
    /// Stopping threshold on iterate displacement.
    pub epsilon: f64,
    pub max_iters: usize,
    pub variant: Variant,
    pub init: Init,
    /// Keep the full iterate sequence in the report (off by default; the
    /// sequence is only needed by diagnostics such as the Fejér check).
    #[serde(default)]
    pub record_iterates: bool,
}

impl Default for WeiszfeldConfig {
    fn default() -> Self {
        WeiszfeldConfig {
            epsilon: 1e-8,
            max_iters: 10_000,
            variant: Variant::Plain,
            init: Init::VardiZhang,
            record_iterates: false,
        }
    }
}

impl WeiszfeldConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0) {
            return Err(Error::InvalidInput(format!(
                "epsilon must be positive, got {}",
                self.epsilon
            )));
        }
        if self.max_iters == 0 {
            return Err(Error::InvalidInput("max_iters must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Termination {
    /// Iterate displacement dropped below epsilon.
    Displacement,
    /// Iteration budget exhausted without convergence.
    MaxIters,
    /// A data point passed the anchored optimality test.
    DataPointOptimal,
}

/// Full solve trace.  `objective_trace[0]` is the objective at the initial
/// point and entry t is the objective after iteration t.  The accelerated
/// variant additionally records its surrogate objective per iterate in
/// `smoothed_trace` for bound certification.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WeiszfeldReport {
    pub solution: AmbientPoint,
    pub objective_trace: Vec<f64>,
    pub smoothed_trace: Option<Vec<f64>>,
    /// Iterate coordinates, aligned with `objective_trace`; present only
    /// when the config asked for them.
    pub iterate_trace: Option<Vec<Vec<f64>>>,
    pub iterations: usize,
    pub converged: bool,
    pub termination: Termination,
    /// The configuration the solve ran under, kept so certificates can
    /// check their preconditions.
    pub config: WeiszfeldConfig,
}

// ─── Objective ──────────────────────────────────────────────────────────────

/// f(y) = Σ w_i ‖y − x_i‖.
pub fn objective(points: &[AmbientPoint], weights: &[f64], y: &[f64]) -> f64 {
    points
        .iter()
        .zip(weights)
        .map(|(p, &w)| w * ambient::dist(&p.coords, y))
        .sum()
}

// ─── Anchored initialization ────────────────────────────────────────────────

/// The anchored starting point: from the data point with least objective, a
/// single exact line-search step along the negative subgradient.
#[derive(Debug, Clone)]
pub struct VzInit {
    pub y0: Vec<f64>,
    /// Index of the anchor data point (lowest objective, ties to the
    /// lowest index).
    pub anchor: usize,
    /// Norm of the off-anchor gradient R at the anchor.
    pub r_norm: f64,
    /// Total weight sitting at the anchor location (duplicates included).
    pub anchor_weight: f64,
    /// L(anchor) = Σ w_i/‖anchor − x_i‖ over points away from the anchor.
    pub l_anchor: f64,
    /// True when ‖R‖ ≤ anchor weight: the anchor itself is the minimizer.
    pub anchor_optimal: bool,
}

/// Computes the anchored initialization for a weighted instance.
pub fn vardi_zhang_init(points: &[AmbientPoint], weights: &[f64]) -> VzInit {
    let n = points.len();
    let mut best = 0;
    let mut best_f = f64::INFINITY;
    for i in 0..n {
        let f = objective(points, weights, &points[i].coords);
        if f < best_f {
            best_f = f;
            best = i;
        }
    }
    let anchor = &points[best].coords;
    let d = anchor.len();
    let mut r = vec![0.0; d];
    let mut l_anchor = 0.0;
    let mut anchor_weight = 0.0;
    for (p, &w) in points.iter().zip(weights) {
        let dist = ambient::dist(&p.coords, anchor);
        if dist < tol::DISTANCE_CLAMP {
            anchor_weight += w;
        } else {
            for (rj, (aj, pj)) in r.iter_mut().zip(anchor.iter().zip(&p.coords)) {
                *rj += w * (aj - pj) / dist;
            }
            l_anchor += w / dist;
        }
    }
    let r_norm = ambient::norm(&r);
    if r_norm <= anchor_weight {
        return VzInit {
            y0: anchor.clone(),
            anchor: best,
            r_norm,
            anchor_weight,
            l_anchor,
            anchor_optimal: true,
        };
    }
    let t = (r_norm - anchor_weight) / l_anchor;
    let mut y0 = anchor.clone();
    ambient::axpy(&mut y0, -t / r_norm, &r);
    VzInit { y0, anchor: best, r_norm, anchor_weight, l_anchor, anchor_optimal: false }
}

// ─── Smoothed surrogate ─────────────────────────────────────────────────────

/// Per-point smoothing radii and the gradient Lipschitz constant of the
/// smoothed objective.  Radii are the objective excesses of the data points
/// over the starting point, which the anchored init keeps nonnegative.
#[derive(Debug, Clone)]
pub struct SmoothedProblem {
    pub b: Vec<f64>,
    pub lipschitz: f64,
}

pub fn smoothed_problem(points: &[AmbientPoint], weights: &[f64], y0: &[f64]) -> SmoothedProblem {
    let f0 = objective(points, weights, y0);
    let b: Vec<f64> = points
        .iter()
        .map(|p| (objective(points, weights, &p.coords) - f0).max(0.0))
        .collect();
    let lipschitz: f64 = b
        .iter()
        .zip(weights)
        .filter(|(&bi, _)| bi > 0.0)
        .map(|(&bi, &w)| w / bi)
        .sum();
    SmoothedProblem { b, lipschitz }
}

/// Surrogate value: each distance below its radius is replaced by the
/// quadratic cap d²/2b + b/2, making the function smooth while staying an
/// upper bound that is exact outside every smoothing ball.
pub fn smoothed_objective(
    points: &[AmbientPoint],
    weights: &[f64],
    sp: &SmoothedProblem,
    y: &[f64],
) -> f64 {
    points
        .iter()
        .zip(weights)
        .zip(&sp.b)
        .map(|((p, &w), &b)| {
            let d = ambient::dist(&p.coords, y);
            if d >= b {
                w * d
            } else {
                w * (d * d / (2.0 * b) + b / 2.0)
            }
        })
        .sum()
}

/// Gradient of the surrogate: the usual unit directions, with the
/// denominator floored at the smoothing radius inside each ball.
pub fn smoothed_gradient(
    points: &[AmbientPoint],
    weights: &[f64],
    sp: &SmoothedProblem,
    y: &[f64],
) -> Vec<f64> {
    let mut g = vec![0.0; y.len()];
    for ((p, &w), &b) in points.iter().zip(weights).zip(&sp.b) {
        let d = ambient::dist(&p.coords, y);
        if d < tol::DISTANCE_CLAMP {
            // At the kink the zero subgradient is the right choice.
            continue;
        }
        let denom = d.max(b);
        for (gj, (yj, pj)) in g.iter_mut().zip(y.iter().zip(&p.coords)) {
            *gj += w * (yj - pj) / denom;
        }
    }
    g
}

// ─── Degenerate geometry ────────────────────────────────────────────────────

/// Detects a point cloud of affine rank ≤ 1 and returns the exact weighted
/// median along the line: the first point, in canonical line order, whose
/// cumulative weight reaches one half.
fn colinear_median(points: &[AmbientPoint], weights: &[f64]) -> Option<usize> {
    let n = points.len();
    let base = &points[0].coords;
    let mut far = 0;
    let mut far_dist = 0.0;
    for (i, p) in points.iter().enumerate() {
        let d = ambient::dist(&p.coords, base);
        if d > far_dist {
            far_dist = d;
            far = i;
        }
    }
    if far_dist < tol::DISTANCE_CLAMP {
        // All points coincide.
        return Some(0);
    }
    let mut u: Vec<f64> = points[far]
        .coords
        .iter()
        .zip(base)
        .map(|(a, b)| (a - b) / far_dist)
        .collect();
    // Canonical orientation: first nonzero component positive, so the line
    // order (and the tie-break below) is deterministic.
    if let Some(c) = u.iter().find(|c| c.abs() > 1e-15) {
        if *c < 0.0 {
            ambient::scale(&mut u, -1.0);
        }
    }
    let mut ts = Vec::with_capacity(n);
    for p in points {
        let diff: Vec<f64> = p.coords.iter().zip(base).map(|(a, b)| a - b).collect();
        let t = ambient::dot(&diff, &u);
        let mut residue = 0.0;
        for (dj, uj) in diff.iter().zip(&u) {
            residue += (dj - t * uj) * (dj - t * uj);
        }
        if residue.sqrt() > tol::COLINEAR_REL * far_dist.max(1.0) {
            return None;
        }
        ts.push(t);
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| ts[a].total_cmp(&ts[b]).then(a.cmp(&b)));
    let mut acc = 0.0;
    for &i in &order {
        acc += weights[i];
        if acc >= 0.5 {
            return Some(i);
        }
    }
    Some(*order.last().unwrap())
}

// ─── Solver ─────────────────────────────────────────────────────────────────

fn validate_problem(points: &[AmbientPoint], weights: &[f64]) -> Result<()> {
    if points.is_empty() {
        return Err(Error::InvalidInput("no points given".into()));
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
        return Err(Error::InvalidInput("mixed point layouts".into()));
    }
    if points.iter().any(|p| !p.is_finite()) {
        return Err(Error::InvalidInput("non-finite point coordinates".into()));
    }
    if weights.iter().any(|&w| !(w > 0.0) || !w.is_finite()) {
        return Err(Error::InvalidInput("weights must be positive and finite".into()));
    }
    let total: f64 = weights.iter().sum();
    if (total - 1.0).abs() > tol::WEIGHT_SUM {
        return Err(Error::InvalidInput(format!(
            "weights sum to {total}, expected 1"
        )));
    }
    Ok(())
}

fn data_point_report(
    points: &[AmbientPoint],
    weights: &[f64],
    idx: usize,
    cfg: &WeiszfeldConfig,
) -> WeiszfeldReport {
    let f = objective(points, weights, &points[idx].coords);
    WeiszfeldReport {
        solution: points[idx].clone(),
        objective_trace: vec![f],
        smoothed_trace: None,
        iterate_trace: cfg.record_iterates.then(|| vec![points[idx].coords.clone()]),
        iterations: 0,
        converged: true,
        termination: Termination::DataPointOptimal,
        config: cfg.clone(),
    }
}

/// Minimizes Σ w_i ‖y − x_i‖ with the configured variant.
///
/// Colinear clouds (affine rank ≤ 1) are solved exactly as a 1-D weighted
/// median instead of iterating.  An iterate landing on a data point is
/// resolved by the anchored optimality test: the point is returned as
/// optimal when no descent direction exists there, otherwise the iterate
/// steps off along the negative subgradient.
pub fn fermat_weber_solve(
    points: &[AmbientPoint],
    weights: &[f64],
    cfg: &WeiszfeldConfig,
) -> Result<WeiszfeldReport> {
    cfg.validate()?;
    validate_problem(points, weights)?;
    if points.len() == 1 {
        return Ok(data_point_report(points, weights, 0, cfg));
    }
    if let Some(idx) = colinear_median(points, weights) {
        return Ok(data_point_report(points, weights, idx, cfg));
    }
    match cfg.variant {
        Variant::Plain => solve_plain(points, weights, cfg),
        Variant::SmoothedAccelerated => solve_accelerated(points, weights, cfg),
    }
}

fn initial_point(points: &[AmbientPoint], weights: &[f64], cfg: &WeiszfeldConfig) -> Result<Vec<f64>> {
    match &cfg.init {
        Init::VardiZhang => Ok(vardi_zhang_init(points, weights).y0),
        Init::Centroid => {
            let d = points[0].dim();
            let mut y = vec![0.0; d];
            for (p, &w) in points.iter().zip(weights) {
                ambient::axpy(&mut y, w, &p.coords);
            }
            Ok(y)
        }
        Init::Explicit(y) => {
            if y.len() != points[0].dim() {
                return Err(Error::InvalidInput(format!(
                    "explicit init has dimension {}, expected {}",
                    y.len(),
                    points[0].dim()
                )));
            }
            Ok(y.clone())
        }
    }
}

/// Outcome of the anchored test when an iterate collides with a data point.
enum Collision {
    Optimal(usize),
    PushedOff(Vec<f64>),
}

fn resolve_collision(points: &[AmbientPoint], weights: &[f64], idx: usize) -> Collision {
    let anchor = &points[idx].coords;
    let d = anchor.len();
    let mut r = vec![0.0; d];
    let mut w_here = 0.0;
    let mut l = 0.0;
    for (p, &w) in points.iter().zip(weights) {
        let dist = ambient::dist(&p.coords, anchor);
        if dist < tol::DISTANCE_CLAMP {
            w_here += w;
        } else {
            for (rj, (aj, pj)) in r.iter_mut().zip(anchor.iter().zip(&p.coords)) {
                *rj += w * (aj - pj) / dist;
            }
            l += w / dist;
        }
    }
    let r_norm = ambient::norm(&r);
    if r_norm <= w_here {
        return Collision::Optimal(idx);
    }
    let t = (r_norm - w_here) / l;
    let mut y = anchor.clone();
    ambient::axpy(&mut y, -t / r_norm, &r);
    Collision::PushedOff(y)
}

fn solve_plain(
    points: &[AmbientPoint],
    weights: &[f64],
    cfg: &WeiszfeldConfig,
) -> Result<WeiszfeldReport> {
    if matches!(cfg.init, Init::VardiZhang) {
        let vz = vardi_zhang_init(points, weights);
        if vz.anchor_optimal {
            return Ok(data_point_report(points, weights, vz.anchor, cfg));
        }
    }
    let mut y = initial_point(points, weights, cfg)?;
    let d = y.len();
    let mut trace = vec![objective(points, weights, &y)];
    let mut iterates = cfg.record_iterates.then(|| vec![y.clone()]);
    let layout = points[0].layout;
    let mut termination = Termination::MaxIters;
    let mut converged = false;
    let mut iterations = cfg.max_iters;
    let mut num = vec![0.0; d];
    for t in 1..=cfg.max_iters {
        num.iter_mut().for_each(|v| *v = 0.0);
        let mut den = 0.0;
        let mut collision = None;
        for (i, (p, &w)) in points.iter().zip(weights).enumerate() {
            let dist = ambient::dist(&p.coords, &y);
            if dist < tol::DISTANCE_CLAMP {
                collision = Some(i);
                break;
            }
            ambient::axpy(&mut num, w / dist, &p.coords);
            den += w / dist;
        }
        if let Some(idx) = collision {
            match resolve_collision(points, weights, idx) {
                Collision::Optimal(i) => {
                    trace.push(objective(points, weights, &points[i].coords));
                    if let Some(it) = iterates.as_mut() {
                        it.push(points[i].coords.clone());
                    }
                    return Ok(WeiszfeldReport {
                        solution: points[i].clone(),
                        objective_trace: trace,
                        smoothed_trace: None,
                        iterate_trace: iterates,
                        iterations: t,
                        converged: true,
                        termination: Termination::DataPointOptimal,
                        config: cfg.clone(),
                    });
                }
                Collision::PushedOff(next) => {
                    y = next;
                    trace.push(objective(points, weights, &y));
                    if let Some(it) = iterates.as_mut() {
                        it.push(y.clone());
                    }
                    continue;
                }
            }
        }
        let mut displacement = 0.0;
        for (yj, nj) in y.iter_mut().zip(&num) {
            let next = nj / den;
            displacement += (next - *yj) * (next - *yj);
            *yj = next;
        }
        trace.push(objective(points, weights, &y));
        if let Some(it) = iterates.as_mut() {
            it.push(y.clone());
        }
        if displacement.sqrt() < cfg.epsilon {
            termination = Termination::Displacement;
            converged = true;
            iterations = t;
            break;
        }
    }
    Ok(WeiszfeldReport {
        solution: AmbientPoint { coords: y, layout },
        objective_trace: trace,
        smoothed_trace: None,
        iterate_trace: iterates,
        iterations,
        converged,
        termination,
        config: cfg.clone(),
    })
}

fn solve_accelerated(
    points: &[AmbientPoint],
    weights: &[f64],
    cfg: &WeiszfeldConfig,
) -> Result<WeiszfeldReport> {
    if !matches!(cfg.init, Init::VardiZhang) {
        return Err(Error::InvalidInput(
            "the smoothed accelerated variant requires the vardi-zhang init \
             (the smoothing radii are nonnegative only from the anchored start)"
                .into(),
        ));
    }
    let vz = vardi_zhang_init(points, weights);
    if vz.anchor_optimal {
        let mut report = data_point_report(points, weights, vz.anchor, cfg);
        report.smoothed_trace = Some(report.objective_trace.clone());
        return Ok(report);
    }
    let sp = smoothed_problem(points, weights, &vz.y0);
    if !(sp.lipschitz > 0.0) {
        return Err(Error::DegenerateInput(
            "smoothed objective has no curvature: all smoothing radii vanish".into(),
        ));
    }
    let layout = points[0].layout;
    let mut y = vz.y0.clone();
    let mut u = vz.y0.clone();
    let mut s = 1.0_f64;
    let mut trace = vec![objective(points, weights, &y)];
    let mut strace = vec![smoothed_objective(points, weights, &sp, &y)];
    let mut iterates = cfg.record_iterates.then(|| vec![y.clone()]);
    let mut termination = Termination::MaxIters;
    let mut converged = false;
    let mut iterations = cfg.max_iters;
    for t in 1..=cfg.max_iters {
        let g = smoothed_gradient(points, weights, &sp, &u);
        let mut y_next = u.clone();
        ambient::axpy(&mut y_next, -1.0 / sp.lipschitz, &g);
        let s_next = (1.0 + (1.0 + 4.0 * s * s).sqrt()) / 2.0;
        let momentum = (s - 1.0) / s_next;
        let mut displacement = 0.0;
        for ((un, yn), yo) in u.iter_mut().zip(&y_next).zip(&y) {
            *un = yn + momentum * (yn - yo);
            displacement += (yn - yo) * (yn - yo);
        }
        y = y_next;
        s = s_next;
        trace.push(objective(points, weights, &y));
        strace.push(smoothed_objective(points, weights, &sp, &y));
        if let Some(it) = iterates.as_mut() {
            it.push(y.clone());
        }
        // A displacement stall can be a momentum artifact, so the stop also
        // requires the scaled gradient norm of the surrogate to be small.
        let gy = smoothed_gradient(points, weights, &sp, &y);
        let gnorm = ambient::norm(&gy) / sp.lipschitz;
        if displacement.sqrt() < cfg.epsilon && gnorm < cfg.epsilon {
            termination = Termination::Displacement;
            converged = true;
            iterations = t;
            break;
        }
    }
    Ok(WeiszfeldReport {
        solution: AmbientPoint { coords: y, layout },
        objective_trace: trace,
        smoothed_trace: Some(strace),
        iterate_trace: iterates,
        iterations,
        converged,
        termination,
        config: cfg.clone(),
    })
}

/// Reference solve used as the `f*` oracle by the certificates.
pub fn reference_solve(points: &[AmbientPoint], weights: &[f64]) -> Result<WeiszfeldReport> {
    fermat_weber_solve(
        points,
        weights,
        &WeiszfeldConfig {
            epsilon: tol::REFERENCE_EPSILON,
            max_iters: tol::REFERENCE_MAX_ITERS,
            variant: Variant::Plain,
            init: Init::VardiZhang,
            record_iterates: false,
        },
    )
}

// ─── Convergence certificates ───────────────────────────────────────────────

/// Per-iteration comparison of the objective gap against a theoretical
/// bound.  `holds` is true when every recorded iterate satisfies its bound
/// within the certificate slack.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConvergenceCertificate {
    pub bound_trace: Vec<f64>,
    pub gap_trace: Vec<f64>,
    pub holds: bool,
}

/// Certifies the anchored-init sublinear bound for a plain solve:
/// f(y^t) − f* ≤ L(anchor)·‖y⁰ − y*‖² / (t·(‖R‖ − w_anchor)²).
pub fn check_sublinear_bound(
    points: &[AmbientPoint],
    weights: &[f64],
    report: &WeiszfeldReport,
    reference: &AmbientPoint,
) -> Result<ConvergenceCertificate> {
    if report.config.variant != Variant::Plain {
        return Err(Error::InvalidInput(
            "sublinear certificate applies to the plain variant".into(),
        ));
    }
    if !matches!(report.config.init, Init::VardiZhang) {
        return Err(Error::InvalidInput(
            "sublinear certificate requires the anchored init; other starting \
             points carry no anchor constants"
                .into(),
        ));
    }
    let vz = vardi_zhang_init(points, weights);
    let f_star = objective(points, weights, &reference.coords);
    if vz.anchor_optimal {
        // The bound's denominator vanishes; with the anchor optimal there
        // are no iterates to certify.
        return Ok(ConvergenceCertificate { bound_trace: vec![], gap_trace: vec![], holds: true });
    }
    let r0 = ambient::dist(&vz.y0, &reference.coords);
    let denom = (vz.r_norm - vz.anchor_weight).powi(2);
    let mut bound_trace = Vec::with_capacity(report.objective_trace.len().saturating_sub(1));
    let mut gap_trace = Vec::with_capacity(bound_trace.capacity());
    let mut holds = true;
    for (t, &f) in report.objective_trace.iter().enumerate().skip(1) {
        let bound = vz.l_anchor * r0 * r0 / (t as f64 * denom);
        let gap = f - f_star;
        holds &= gap <= bound + tol::CERTIFICATE_SLACK;
        bound_trace.push(bound);
        gap_trace.push(gap);
    }
    Ok(ConvergenceCertificate { bound_trace, gap_trace, holds })
}

/// Certifies the accelerated variant's bounds: the surrogate gap
/// f̃(y^t) − f* ≤ 2·L_s·‖y⁰ − y*‖²/(t+1)², and the derived plain-objective
/// bound 4·‖y⁰ − y*‖²·L(anchor)/((t+1)·(‖R‖ − w_anchor))².
pub fn check_accelerated_bound(
    points: &[AmbientPoint],
    weights: &[f64],
    report: &WeiszfeldReport,
    reference: &AmbientPoint,
) -> Result<ConvergenceCertificate> {
    if report.config.variant != Variant::SmoothedAccelerated {
        return Err(Error::InvalidInput(
            "accelerated certificate needs a smoothed-variant report".into(),
        ));
    }
    let Some(strace) = &report.smoothed_trace else {
        return Err(Error::InvalidInput(
            "accelerated report is missing its surrogate trace".into(),
        ));
    };
    let vz = vardi_zhang_init(points, weights);
    let f_star = objective(points, weights, &reference.coords);
    if vz.anchor_optimal {
        return Ok(ConvergenceCertificate { bound_trace: vec![], gap_trace: vec![], holds: true });
    }
    let sp = smoothed_problem(points, weights, &vz.y0);
    let r0 = ambient::dist(&vz.y0, &reference.coords);
    let anchor_denom = (vz.r_norm - vz.anchor_weight).powi(2);
    let mut bound_trace = Vec::with_capacity(strace.len().saturating_sub(1));
    let mut gap_trace = Vec::with_capacity(bound_trace.capacity());
    let mut holds = true;
    for (t, &fs) in strace.iter().enumerate().skip(1) {
        let tp1 = (t + 1) as f64;
        let bound = 2.0 * sp.lipschitz * r0 * r0 / (tp1 * tp1);
        let gap = fs - f_star;
        holds &= gap <= bound + tol::CERTIFICATE_SLACK;
        bound_trace.push(bound);
        gap_trace.push(gap);

        let derived_bound = 4.0 * r0 * r0 * vz.l_anchor / (tp1 * tp1 * anchor_denom);
        let f_gap = report.objective_trace[t] - f_star;
        holds &= f_gap <= derived_bound + tol::CERTIFICATE_SLACK;
    }
    Ok(ConvergenceCertificate { bound_trace, gap_trace, holds })
}
