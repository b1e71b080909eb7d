//! Shared helpers for the integration suites: random instance builders,
//! brute-force oracles, and the structural property checks that both the
//! per-property suite and the summary gate execute.

#![allow(dead_code)]

use exmedian::ambient::{self, AmbientPoint};
use exmedian::manifold::{self, ManifoldDescriptor, ManifoldPoint};
use exmedian::shape::{full_procrustes_distance, shape_project, to_preshape, vw_embed, Preshape};
use exmedian::simgen::{
    cell_rng, contaminate_angles, generate_shape_regression, sample_von_mises,
    sample_wrapped_stable, ContaminationMechanism, ContaminationSpec, ShapeGenSpec,
    WrappedStableSpec,
};
use exmedian::sphere::{angle_to_point, point_to_angle, Angle, SpherePoint};
use exmedian::spd::{spd_distance, SpdPoint};
use exmedian::weiszfeld::{
    fermat_weber_solve, objective, reference_solve, smoothed_gradient, smoothed_objective,
    smoothed_problem, vardi_zhang_init, Variant, WeiszfeldConfig,
};
use exmedian::{extrinsic_median, uniform_weights, PlanarConfiguration};

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub const SEEDS: [u64; 3] = [17, 211, 5309];

pub fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_unit(rng: &mut ChaCha8Rng, d: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..d).map(|_| rng.sample(StandardNormal)).collect();
        let n = ambient::norm(&v);
        if n > 1e-6 {
            return v.into_iter().map(|x| x / n).collect();
        }
    }
}

pub fn random_weights(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..n).map(|_| rng.random_range(0.1..1.0)).collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|w| w / total).collect()
}

pub fn random_cloud(rng: &mut ChaCha8Rng, n: usize, d: usize) -> Vec<AmbientPoint> {
    (0..n)
        .map(|_| {
            AmbientPoint::real((0..d).map(|_| rng.sample::<f64, _>(StandardNormal)).collect())
        })
        .collect()
}

pub fn random_preshape(rng: &mut ChaCha8Rng, k: usize) -> Preshape {
    loop {
        let u: Vec<Complex64> = (0..k)
            .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        let mean = u.iter().sum::<Complex64>() / k as f64;
        let centered: Vec<Complex64> = u.into_iter().map(|z| z - mean).collect();
        let n: f64 = centered.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if n > 1e-6 {
            return Preshape::new(centered.into_iter().map(|z| z / n).collect()).unwrap();
        }
    }
}

pub fn hermitian_ambient(m: &DMatrix<Complex64>) -> AmbientPoint {
    let k = m.nrows();
    let mut coords = vec![0.0; 2 * k * k];
    for i in 0..k {
        for j in 0..k {
            coords[2 * (i * k + j)] = m[(i, j)].re;
            coords[2 * (i * k + j) + 1] = m[(i, j)].im;
        }
    }
    AmbientPoint::hermitian(coords, k).unwrap()
}

pub fn ambient_to_matrix(p: &AmbientPoint, k: usize) -> DMatrix<Complex64> {
    DMatrix::from_fn(k, k, |i, j| {
        let (re, im) = p.entry(i, j);
        Complex64::new(re, im)
    })
}

/// Random unitary from the QR factorization of a complex Gaussian matrix.
pub fn random_unitary(rng: &mut ChaCha8Rng, k: usize) -> DMatrix<Complex64> {
    let g = DMatrix::from_fn(k, k, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    g.qr().q()
}

// ─── Brute-force oracles ────────────────────────────────────────────────────

/// Exhaustive 2-D minimization: coarse grid over a bounding box, then
/// repeated shrink-and-refine around the best cell until the cell size
/// drops below `resolution`.
pub fn grid_argmin_2d(points: &[AmbientPoint], weights: &[f64], resolution: f64) -> Vec<f64> {
    let xs: Vec<f64> = points.iter().map(|p| p.coords[0]).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.coords[1]).collect();
    let pad = 0.05;
    let mut lo = [
        xs.iter().cloned().fold(f64::INFINITY, f64::min) - pad,
        ys.iter().cloned().fold(f64::INFINITY, f64::min) - pad,
    ];
    let mut hi = [
        xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max) + pad,
        ys.iter().cloned().fold(f64::NEG_INFINITY, f64::max) + pad,
    ];
    let cells = 40usize;
    let mut best = [0.5 * (lo[0] + hi[0]), 0.5 * (lo[1] + hi[1])];
    loop {
        let step = [(hi[0] - lo[0]) / cells as f64, (hi[1] - lo[1]) / cells as f64];
        let mut best_f = f64::INFINITY;
        for i in 0..=cells {
            for j in 0..=cells {
                let y = [lo[0] + i as f64 * step[0], lo[1] + j as f64 * step[1]];
                let f = objective(points, weights, &y);
                if f < best_f {
                    best_f = f;
                    best = y;
                }
            }
        }
        if step[0].max(step[1]) < resolution {
            return best.to_vec();
        }
        // Shrink to a window of ±2 cells around the winner; the objective is
        // convex, so the minimizer cannot hide outside it.
        for a in 0..2 {
            lo[a] = best[a] - 2.0 * step[a];
            hi[a] = best[a] + 2.0 * step[a];
        }
    }
}

/// Objective minimized along the ray ρ·(cos θ, sin θ), ρ ≥ 0, by ternary
/// search (the objective is convex along any line).
pub fn ray_minimum(points: &[AmbientPoint], weights: &[f64], theta: f64, tol: f64) -> f64 {
    let u = [theta.cos(), theta.sin()];
    let f = |r: f64| objective(points, weights, &[r * u[0], r * u[1]]);
    let (mut lo, mut hi) = (0.0_f64, 1.5_f64);
    while hi - lo > tol {
        let m1 = lo + (hi - lo) / 3.0;
        let m2 = hi - (hi - lo) / 3.0;
        if f(m1) < f(m2) {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    f(0.5 * (lo + hi))
}

/// The angle of the unconstrained planar minimizer, recovered without any
/// iterative solver: sweep all angles at a coarse resolution with an exact
/// inner line search on the radius, then refine the winning window at
/// 1e-5 angular resolution.
pub fn angular_grid_argmin(points: &[AmbientPoint], weights: &[f64]) -> f64 {
    let tau = std::f64::consts::TAU;
    let coarse_step = 2e-3;
    let mut best_t = 0.0;
    let mut best_f = f64::INFINITY;
    let mut t = 0.0;
    while t < tau {
        let f = ray_minimum(points, weights, t, 1e-6);
        if f < best_f {
            best_f = f;
            best_t = t;
        }
        t += coarse_step;
    }
    let mut fine_best_t = best_t;
    let mut fine_best_f = f64::INFINITY;
    let fine_step = 1e-5;
    let mut t = best_t - 2.0 * coarse_step;
    while t <= best_t + 2.0 * coarse_step {
        let f = ray_minimum(points, weights, t, 1e-12);
        if f < fine_best_f {
            fine_best_f = f;
            fine_best_t = t;
        }
        t += fine_step;
    }
    fine_best_t.rem_euclid(tau)
}

/// Random planar instances: the iterative solver must land within 1e-3 of
/// the exhaustive grid minimizer on every one.
pub fn check_solver_against_planar_grid(instances: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(4242);
    for instance in 0..instances {
        let n = rng.random_range(3..30);
        let points: Vec<AmbientPoint> = (0..n)
            .map(|_| {
                AmbientPoint::real(vec![
                    rng.sample::<f64, _>(StandardNormal),
                    rng.sample::<f64, _>(StandardNormal),
                ])
            })
            .collect();
        let raw: Vec<f64> = (0..n).map(|_| rng.random_range(0.2..1.0)).collect();
        let total: f64 = raw.iter().sum();
        let weights: Vec<f64> = raw.into_iter().map(|w| w / total).collect();
        let report = fermat_weber_solve(
            &points,
            &weights,
            &WeiszfeldConfig { epsilon: 1e-12, max_iters: 500_000, ..Default::default() },
        )
        .unwrap();
        let oracle = grid_argmin_2d(&points, &weights, 1e-5);
        let d = ambient::dist(&report.solution.coords, &oracle);
        assert!(
            d < 1e-3,
            "instance {instance}: solver at {:?} but grid oracle at {oracle:?} (dist {d})",
            report.solution.coords
        );
    }
}

/// Clustered circular instances with outliers: the circle median's angle
/// must match the angular sweep oracle to 1e-4 radians on every one.
pub fn check_circle_median_against_angular_grid(instances: u64) {
    let tau = std::f64::consts::TAU;
    for instance in 0..instances {
        let mut rng = ChaCha8Rng::seed_from_u64(900 + instance);
        let n = rng.random_range(15..80);
        let center: f64 = rng.random_range(0.0..tau);
        let spread: f64 = rng.random_range(0.05..0.5);
        let mut thetas: Vec<f64> = (0..n)
            .map(|_| center + spread * rng.sample::<f64, _>(StandardNormal))
            .collect();
        let n_out = n / 4;
        for t in thetas.iter_mut().take(n_out) {
            *t = center + 1.5 + 0.3 * rng.sample::<f64, _>(StandardNormal);
        }
        let data: Vec<ManifoldPoint> = thetas
            .iter()
            .map(|&t| ManifoldPoint::Sphere(angle_to_point(Angle::wrap(t))))
            .collect();
        let report = extrinsic_median(
            &data,
            &WeiszfeldConfig { epsilon: 1e-12, max_iters: 500_000, ..Default::default() },
        )
        .unwrap();
        let ManifoldPoint::Sphere(p) = &report.point else { panic!() };
        let solver_angle = point_to_angle(p).unwrap().radians();

        let embedded: Vec<AmbientPoint> =
            thetas.iter().map(|&t| AmbientPoint::real(vec![t.cos(), t.sin()])).collect();
        let oracle_angle = angular_grid_argmin(&embedded, &uniform_weights(n));
        let diff = (solver_angle - oracle_angle).rem_euclid(tau);
        let diff = diff.min(tau - diff);
        assert!(
            diff < 1e-4,
            "instance {instance}: solver angle {solver_angle} vs oracle {oracle_angle} (off {diff})"
        );
    }
}

// ─── Structural property checks ─────────────────────────────────────────────
// Each check panics with a descriptive message on violation, so it can back
// both an individual test and the all-at-once summary gate.

pub fn check_projection_idempotence(seed: u64) {
    let mut rng = rng_for(seed);
    for dim in [1usize, 2, 4] {
        let desc = ManifoldDescriptor::Sphere { dim };
        for _ in 0..3000 {
            let y = AmbientPoint::real(
                (0..dim + 1).map(|_| rng.sample::<f64, _>(StandardNormal)).collect(),
            );
            if ambient::norm(&y.coords) < 1e-6 {
                continue;
            }
            let (p1, gap) = manifold::project(&desc, &y).unwrap();
            assert!(gap > 0.0);
            let e1 = manifold::embed(&p1);
            assert!(manifold::on_embedded_image(&desc, &e1));
            let (p2, _) = manifold::project(&desc, &e1).unwrap();
            let d = manifold::extrinsic_distance(&p1, &p2).unwrap();
            assert!(d < 1e-10, "sphere projection moved an image point by {d}");
        }
    }
    let k = 6;
    let desc = ManifoldDescriptor::PlanarShape { landmarks: k };
    for _ in 0..300 {
        let mut m = DMatrix::<Complex64>::zeros(k, k);
        for _ in 0..3 {
            let u = random_preshape(&mut rng, k);
            let w: f64 = rng.random_range(0.05..1.0);
            for i in 0..k {
                for j in 0..k {
                    m[(i, j)] += Complex64::new(w, 0.0) * u.coords()[i] * u.coords()[j].conj();
                }
            }
        }
        let y = hermitian_ambient(&m);
        let Ok(r1) = shape_project(&y) else { continue };
        assert!(manifold::on_embedded_image(&desc, &r1.point));
        let r2 = shape_project(&r1.point).unwrap();
        let d = ambient::dist(&r1.point.coords, &r2.point.coords);
        assert!(d < 1e-10, "shape projection moved an image point by {d}");
    }
}

pub fn check_preshape_invariants(seed: u64) {
    let mut rng = rng_for(seed);
    for _ in 0..500 {
        let k = rng.random_range(3..12);
        let cfg = PlanarConfiguration::new(
            (0..k)
                .map(|_| Complex64::new(rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0)))
                .collect(),
        )
        .unwrap();
        let Ok(u) = to_preshape(&cfg) else { continue };
        let s: Complex64 = u.coords().iter().sum();
        assert!(s.norm() < 1e-12);
        let n: f64 = u.coords().iter().map(|z| z.norm_sqr()).sum();
        assert!((n - 1.0).abs() < 1e-12);
    }
}

pub fn check_embedding_similarity_invariance(seed: u64) {
    let mut rng = rng_for(seed);
    for _ in 0..200 {
        let k = rng.random_range(3..10);
        let landmarks: Vec<Complex64> = (0..k)
            .map(|_| Complex64::new(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0)))
            .collect();
        let base = PlanarConfiguration::new(landmarks.clone()).unwrap();
        let Ok(u0) = to_preshape(&base) else { continue };
        let shift = Complex64::new(rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0));
        let scale: f64 = rng.random_range(0.2..4.0);
        let phase = Complex64::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU));
        let moved = PlanarConfiguration::new(
            landmarks.iter().map(|z| (z + shift) * scale * phase).collect(),
        )
        .unwrap();
        let u1 = to_preshape(&moved).unwrap();
        let d = ambient::dist(&vw_embed(&u0).coords, &vw_embed(&u1).coords);
        assert!(d < 1e-10, "similarity transform moved the embedded point by {d}");
    }
}

pub fn check_procrustes_identity(seed: u64) {
    let mut rng = rng_for(seed);
    for _ in 0..300 {
        let k = rng.random_range(3..10);
        let a = random_preshape(&mut rng, k);
        let b = random_preshape(&mut rng, k);
        let rho = full_procrustes_distance(&a, &b);
        let emb = ambient::dist(&vw_embed(&a).coords, &vw_embed(&b).coords);
        assert!(
            (rho * rho - 0.5 * emb * emb).abs() < 1e-10,
            "squared distance mismatch: {} vs {}",
            rho * rho,
            0.5 * emb * emb
        );
    }
}

pub fn check_su_equivariance(seed: u64) {
    let mut rng = rng_for(seed);
    for _ in 0..30 {
        let k = rng.random_range(3..8);
        // Orthonormal basis of the centered subspace (Helmert columns).
        let mut basis = DMatrix::<Complex64>::zeros(k, k - 1);
        for j in 1..k {
            let norm = (j as f64 * (j + 1) as f64).sqrt();
            for i in 0..j {
                basis[(i, j - 1)] = Complex64::new(1.0 / norm, 0.0);
            }
            basis[(j, j - 1)] = Complex64::new(-(j as f64) / norm, 0.0);
        }
        let mut inner = random_unitary(&mut rng, k - 1);
        // Divide one column by the determinant's phase so det = 1 while
        // staying unitary.
        let det = inner.determinant();
        let phase_fix = det.conj() / det.norm();
        for i in 0..k - 1 {
            inner[(i, 0)] *= phase_fix;
        }
        // A = P_ones + B U B*: identity on the all-ones line, the random
        // unitary on its complement.
        let mut a = &basis * &inner * basis.adjoint();
        for i in 0..k {
            for j in 0..k {
                a[(i, j)] += Complex64::new(1.0 / k as f64, 0.0);
            }
        }
        let u = random_preshape(&mut rng, k);
        let uvec = DMatrix::from_fn(k, 1, |i, _| u.coords()[i]);
        let au = &a * &uvec;
        let rotated: Vec<Complex64> = (0..k).map(|i| au[(i, 0)]).collect();
        let sum: Complex64 = rotated.iter().sum();
        assert!(sum.norm() < 1e-10, "transform broke centering: {}", sum.norm());
        let rotated = Preshape::new(rotated).unwrap();
        let left = ambient_to_matrix(&vw_embed(&rotated), k);
        let right = &a * ambient_to_matrix(&vw_embed(&u), k) * a.adjoint();
        let diff = (&left - &right).norm();
        assert!(diff < 1e-10, "embedding did not commute, ‖Δ‖={diff}");
    }
}

/// Returns how many matrices were cross-checked.
pub fn check_power_iteration(seed: u64) -> usize {
    let mut rng = rng_for(seed);
    let mut checked = 0;
    for _ in 0..34 {
        let k = rng.random_range(3..8);
        // Random PSD with a guaranteed top gap so the oracle converges.
        let q = random_unitary(&mut rng, k);
        let mut lambda: Vec<f64> = (0..k).map(|_| rng.random_range(0.1..1.0)).collect();
        lambda.sort_by(|a, b| b.total_cmp(a));
        lambda[0] *= 1.5;
        let mut m = DMatrix::<Complex64>::zeros(k, k);
        for (idx, &l) in lambda.iter().enumerate() {
            let col = q.column(idx);
            for i in 0..k {
                for j in 0..k {
                    m[(i, j)] += Complex64::new(l, 0.0) * col[i] * col[j].conj();
                }
            }
        }
        // Oracle: plain power iteration, independent of the library
        // eigendecomposition.
        let mut v: Vec<Complex64> = (0..k)
            .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        for _ in 0..20_000 {
            let mut next = vec![Complex64::new(0.0, 0.0); k];
            for i in 0..k {
                for j in 0..k {
                    next[i] += m[(i, j)] * v[j];
                }
            }
            let n: f64 = next.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            for z in next.iter_mut() {
                *z /= n;
            }
            let residual: f64 = next
                .iter()
                .zip(&v)
                .map(|(a, b)| (a - b).norm_sqr())
                .sum::<f64>()
                .sqrt()
                .min(
                    next.iter()
                        .zip(&v)
                        .map(|(a, b)| (a + b).norm_sqr())
                        .sum::<f64>()
                        .sqrt(),
                );
            v = next;
            if residual < 1e-14 {
                break;
            }
        }
        let proj = shape_project(&hermitian_ambient(&m)).unwrap();
        let p = ambient_to_matrix(&proj.point, k);
        let mut pv = vec![Complex64::new(0.0, 0.0); k];
        for i in 0..k {
            for j in 0..k {
                pv[i] += p[(i, j)] * v[j];
            }
        }
        let cos2: f64 = v.iter().zip(&pv).map(|(a, b)| (a.conj() * b).re).sum();
        assert!(
            cos2.sqrt() > 1.0 - 1e-9,
            "eigenvector disagrees with power iteration, cos={}",
            cos2.sqrt()
        );
        checked += 1;
    }
    checked
}

pub fn check_triangle_inequality(seed: u64) {
    let mut rng = rng_for(seed);
    for _ in 0..300 {
        let mk = |rng: &mut ChaCha8Rng| {
            ManifoldPoint::Sphere(SpherePoint::new(random_unit(rng, 3)).unwrap())
        };
        let (a, b, c) = (mk(&mut rng), mk(&mut rng), mk(&mut rng));
        let ab = manifold::extrinsic_distance(&a, &b).unwrap();
        let bc = manifold::extrinsic_distance(&b, &c).unwrap();
        let ac = manifold::extrinsic_distance(&a, &c).unwrap();
        assert!(ac <= ab + bc + 1e-12);
    }
    let mut rng = rng_for(seed);
    for _ in 0..200 {
        let k = 5;
        let a = random_preshape(&mut rng, k);
        let b = random_preshape(&mut rng, k);
        let c = random_preshape(&mut rng, k);
        let ab = ambient::dist(&vw_embed(&a).coords, &vw_embed(&b).coords);
        let bc = ambient::dist(&vw_embed(&b).coords, &vw_embed(&c).coords);
        let ac = ambient::dist(&vw_embed(&a).coords, &vw_embed(&c).coords);
        assert!(ac <= ab + bc + 1e-12);
    }
}

pub fn check_sphere_rotation_isometry(seed: u64) {
    let mut rng = rng_for(seed);
    for _ in 0..200 {
        let theta: f64 = rng.random_range(0.0..std::f64::consts::TAU);
        let (c, s) = (theta.cos(), theta.sin());
        let rot2 = |v: &[f64]| vec![c * v[0] - s * v[1], s * v[0] + c * v[1]];
        let a = random_unit(&mut rng, 2);
        let b = random_unit(&mut rng, 2);
        let before = ambient::dist(&a, &b);
        let after = ambient::dist(&rot2(&a), &rot2(&b));
        assert!((before - after).abs() < 1e-10);
    }
}

pub fn check_circle_median_equivariance(seed: u64) {
    let mut rng = rng_for(seed);
    let n = 40;
    let thetas: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..1.2)).collect();
    let phi: f64 = rng.random_range(0.0..std::f64::consts::TAU);
    let cfg = WeiszfeldConfig { epsilon: 1e-12, ..Default::default() };
    let to_points = |ts: &[f64]| -> Vec<ManifoldPoint> {
        ts.iter().map(|&t| ManifoldPoint::Sphere(angle_to_point(Angle::wrap(t)))).collect()
    };
    let base = extrinsic_median(&to_points(&thetas), &cfg).unwrap();
    let rotated_data: Vec<f64> = thetas.iter().map(|&t| t + phi).collect();
    let rotated = extrinsic_median(&to_points(&rotated_data), &cfg).unwrap();
    let ManifoldPoint::Sphere(p0) = &base.point else { panic!() };
    let ManifoldPoint::Sphere(p1) = &rotated.point else { panic!() };
    let t0 = point_to_angle(p0).unwrap().radians();
    let t1 = point_to_angle(p1).unwrap().radians();
    let diff = (t1 - t0 - phi).rem_euclid(std::f64::consts::TAU);
    let diff = diff.min(std::f64::consts::TAU - diff);
    assert!(diff < 1e-8, "median did not follow the rotation (off by {diff})");
}

pub fn check_spd_distance_routes(seed: u64) {
    let mut rng = rng_for(seed);
    for _ in 0..100 {
        let p = if rng.random_bool(0.5) { 2 } else { 3 };
        let make = |rng: &mut ChaCha8Rng| -> SpdPoint {
            let g = DMatrix::<f64>::from_fn(p, p, |_, _| rng.sample(StandardNormal));
            let m = &g * g.transpose() + DMatrix::<f64>::identity(p, p) * 0.3;
            SpdPoint::new((0..p).map(|i| (0..p).map(|j| m[(i, j)]).collect()).collect()).unwrap()
        };
        let a = make(&mut rng);
        let b = make(&mut rng);
        // Independent route: two symmetric eigendecompositions, matrix logs,
        // Frobenius norm of the difference.
        let log_of = |x: &SpdPoint| -> DMatrix<f64> {
            let m = DMatrix::from_fn(p, p, |i, j| x.rows()[i][j]);
            let eig = m.symmetric_eigen();
            let mut out = DMatrix::<f64>::zeros(p, p);
            for idx in 0..p {
                let l = eig.eigenvalues[idx].ln();
                let v = eig.eigenvectors.column(idx);
                for i in 0..p {
                    for j in 0..p {
                        out[(i, j)] += l * v[i] * v[j];
                    }
                }
            }
            out
        };
        let direct = (log_of(&a) - log_of(&b)).norm();
        let packed = spd_distance(&a, &b);
        assert!(
            (direct - packed).abs() < 1e-10,
            "distance routes disagree: {direct} vs {packed}"
        );
    }
}

pub fn check_spd_median_pd(seed: u64) {
    let mut rng = rng_for(seed);
    let p = 3;
    let data: Vec<ManifoldPoint> = (0..15)
        .map(|_| {
            let g = DMatrix::<f64>::from_fn(p, p, |_, _| rng.sample(StandardNormal));
            let m = &g * g.transpose() + DMatrix::<f64>::identity(p, p) * 0.2;
            ManifoldPoint::Spd(
                SpdPoint::new((0..p).map(|i| (0..p).map(|j| m[(i, j)]).collect()).collect())
                    .unwrap(),
            )
        })
        .collect();
    let report = extrinsic_median(&data, &WeiszfeldConfig::default()).unwrap();
    let ManifoldPoint::Spd(m) = &report.point else { panic!() };
    assert!(SpdPoint::new(m.rows().to_vec()).is_ok());
}

pub fn check_monotone_trace_and_fejer(seed: u64) {
    let mut rng = rng_for(seed);
    for _ in 0..25 {
        let n = rng.random_range(5..60);
        let d = rng.random_range(2..8);
        let points = random_cloud(&mut rng, n, d);
        let weights = random_weights(&mut rng, n);
        let cfg =
            WeiszfeldConfig { epsilon: 1e-11, record_iterates: true, ..Default::default() };
        let report = fermat_weber_solve(&points, &weights, &cfg).unwrap();
        for pair in report.objective_trace.windows(2) {
            assert!(
                pair[1] <= pair[0] * (1.0 + 1e-12) + 1e-15,
                "objective rose from {} to {}",
                pair[0],
                pair[1]
            );
        }
        let reference = reference_solve(&points, &weights).unwrap();
        let star = &reference.solution.coords;
        let iterates = report.iterate_trace.as_ref().unwrap();
        let mut prev = f64::INFINITY;
        for y in iterates {
            let dist = ambient::dist(y, star);
            assert!(
                dist <= prev + 1e-12,
                "iterate moved away from the optimum: {dist} after {prev}"
            );
            prev = dist;
        }
    }
}

pub fn check_variant_agreement_flat(seed: u64) {
    let mut rng = rng_for(seed);
    for _ in 0..10 {
        let n = rng.random_range(8..50);
        let d = rng.random_range(2..6);
        let points = random_cloud(&mut rng, n, d);
        let weights = random_weights(&mut rng, n);
        let eps = 1e-10;
        let plain = fermat_weber_solve(
            &points,
            &weights,
            &WeiszfeldConfig { epsilon: eps, max_iters: 500_000, ..Default::default() },
        )
        .unwrap();
        let fast = fermat_weber_solve(
            &points,
            &weights,
            &WeiszfeldConfig {
                epsilon: eps,
                max_iters: 500_000,
                variant: Variant::SmoothedAccelerated,
                ..Default::default()
            },
        )
        .unwrap();
        let dist = ambient::dist(&plain.solution.coords, &fast.solution.coords);
        assert!(dist < 1e-6, "variants disagree by {dist}");
    }
}

pub fn check_variant_agreement_shapes(seed: u64) {
    let mut rng = rng_for(seed);
    let spec = ShapeGenSpec {
        landmarks: 8,
        covariate_dim: 1,
        lower: 0.0,
        upper: 2.0,
        angle_noise: 0.15,
        radial_noise: 0.05,
        flatten_curve: false,
    };
    let sample = generate_shape_regression(&spec, 30, &mut rng).unwrap();
    let data: Vec<ManifoldPoint> =
        sample.responses.iter().map(|u| ManifoldPoint::Shape(u.clone())).collect();
    let eps = 1e-10;
    let plain = extrinsic_median(
        &data,
        &WeiszfeldConfig { epsilon: eps, max_iters: 300_000, ..Default::default() },
    )
    .unwrap();
    let fast = extrinsic_median(
        &data,
        &WeiszfeldConfig {
            epsilon: eps,
            max_iters: 300_000,
            variant: Variant::SmoothedAccelerated,
            ..Default::default()
        },
    )
    .unwrap();
    let ManifoldPoint::Shape(a) = &plain.point else { panic!() };
    let ManifoldPoint::Shape(b) = &fast.point else { panic!() };
    let rho = full_procrustes_distance(a, b);
    assert!(rho < 1e-6, "shape medians disagree by {rho}");
}

pub fn check_uniform_weight_specialization(seed: u64) {
    let mut rng = rng_for(seed);
    let n = 30;
    let thetas: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..1.0)).collect();
    let points: Vec<ManifoldPoint> =
        thetas.iter().map(|&t| ManifoldPoint::Sphere(angle_to_point(Angle::wrap(t)))).collect();
    let cfg = WeiszfeldConfig { record_iterates: true, ..Default::default() };
    let report = extrinsic_median(&points, &cfg).unwrap();
    let embedded: Vec<AmbientPoint> = points.iter().map(manifold::embed).collect();
    let direct = fermat_weber_solve(&embedded, &uniform_weights(n), &cfg).unwrap();
    // Bit-identical sequences: the uniform-weight path is the exact same
    // arithmetic, not a parallel implementation.
    assert_eq!(report.solver.objective_trace, direct.objective_trace);
    assert_eq!(report.solver.iterate_trace, direct.iterate_trace);
}

/// Returns how many gradient evaluations were checked.
pub fn check_gradient_finite_differences(seed: u64) -> usize {
    let mut rng = rng_for(seed);
    let mut total = 0;
    for _ in 0..7 {
        let n = rng.random_range(6..30);
        let d = rng.random_range(2..6);
        let points = random_cloud(&mut rng, n, d);
        let weights = random_weights(&mut rng, n);
        let vz = vardi_zhang_init(&points, &weights);
        if vz.anchor_optimal {
            continue;
        }
        let sp = smoothed_problem(&points, &weights, &vz.y0);
        for _ in 0..5 {
            // Mix of generic positions and positions pulled inside a
            // smoothing ball, where the surrogate is quadratic.
            let y: Vec<f64> = if rng.random_bool(0.5) {
                (0..d).map(|_| rng.sample::<f64, _>(StandardNormal)).collect()
            } else {
                let i = rng.random_range(0..n);
                let radius = sp.b[i];
                let dir = random_unit(&mut rng, d);
                points[i].coords.iter().zip(&dir).map(|(c, u)| c + 0.31 * radius * u).collect()
            };
            let g = smoothed_gradient(&points, &weights, &sp, &y);
            let gnorm = ambient::norm(&g);
            if gnorm < 1e-8 {
                continue;
            }
            let h = 1e-6;
            let mut fd = vec![0.0; d];
            for j in 0..d {
                let mut yp = y.clone();
                let mut ym = y.clone();
                yp[j] += h;
                ym[j] -= h;
                fd[j] = (smoothed_objective(&points, &weights, &sp, &yp)
                    - smoothed_objective(&points, &weights, &sp, &ym))
                    / (2.0 * h);
            }
            let err: f64 =
                g.iter().zip(&fd).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt();
            assert!(err / gnorm < 1e-5, "gradient check failed: rel err {}", err / gnorm);
            total += 1;
        }
    }
    total
}

pub fn check_lipschitz_certificate(seed: u64) {
    let mut rng = rng_for(seed);
    let n = 25;
    let d = 4;
    let points = random_cloud(&mut rng, n, d);
    let weights = random_weights(&mut rng, n);
    let vz = vardi_zhang_init(&points, &weights);
    assert!(!vz.anchor_optimal);
    let sp = smoothed_problem(&points, &weights, &vz.y0);
    for _ in 0..3400 {
        let u: Vec<f64> = (0..d).map(|_| 3.0 * rng.sample::<f64, _>(StandardNormal)).collect();
        let v: Vec<f64> = (0..d).map(|_| 3.0 * rng.sample::<f64, _>(StandardNormal)).collect();
        let gu = smoothed_gradient(&points, &weights, &sp, &u);
        let gv = smoothed_gradient(&points, &weights, &sp, &v);
        let lhs: f64 =
            gu.iter().zip(&gv).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt();
        let rhs = sp.lipschitz * ambient::dist(&u, &v);
        assert!(
            lhs <= rhs * (1.0 + 1e-10) + 1e-12,
            "gradient jump {lhs} exceeds L·‖u−v‖ = {rhs}"
        );
    }
}

pub fn check_surrogate_bounds(seed: u64) {
    let mut rng = rng_for(seed);
    let n = 30;
    let d = 3;
    let points = random_cloud(&mut rng, n, d);
    let weights = random_weights(&mut rng, n);
    let vz = vardi_zhang_init(&points, &weights);
    assert!(!vz.anchor_optimal);
    let sp = smoothed_problem(&points, &weights, &vz.y0);
    for _ in 0..200 {
        let y: Vec<f64> = (0..d).map(|_| 2.0 * rng.sample::<f64, _>(StandardNormal)).collect();
        let f = objective(&points, &weights, &y);
        let fs = smoothed_objective(&points, &weights, &sp, &y);
        assert!(fs >= f - 1e-12);
    }
    let reference = reference_solve(&points, &weights).unwrap();
    let star = &reference.solution.coords;
    let gap =
        smoothed_objective(&points, &weights, &sp, star) - objective(&points, &weights, star);
    assert!(gap.abs() < 1e-9, "surrogate is not tight at the optimum: {gap}");
}

pub fn check_generator_determinism(seed: u64) {
    let a = sample_von_mises(0.3, 20.0, 50, &mut cell_rng(seed, "vm", 0)).unwrap();
    let b = sample_von_mises(0.3, 20.0, 50, &mut cell_rng(seed, "vm", 0)).unwrap();
    assert_eq!(a, b);
    let c = sample_von_mises(0.3, 20.0, 50, &mut cell_rng(seed, "vm", 1)).unwrap();
    assert_ne!(a, c);

    let spec = WrappedStableSpec { alpha: 1.3, tau: 0.4, beta: 0.0, mu: 0.0 };
    let a = sample_wrapped_stable(&spec, 64, &mut cell_rng(seed, "ws", 3)).unwrap();
    let b = sample_wrapped_stable(&spec, 64, &mut cell_rng(seed, "ws", 3)).unwrap();
    assert_eq!(a, b);
    let other_key = sample_wrapped_stable(&spec, 64, &mut cell_rng(seed, "ws2", 3)).unwrap();
    assert_ne!(a, other_key);

    let contamination = ContaminationSpec {
        rate: 0.2,
        mechanism: ContaminationMechanism::ReplaceAngles { mu_out: 1.0, sigma: 0.1 },
    };
    let base: Vec<f64> = (0..40).map(|i| i as f64 * 0.01).collect();
    let a = contaminate_angles(&base, &contamination, &mut cell_rng(seed, "c", 7)).unwrap();
    let b = contaminate_angles(&base, &contamination, &mut cell_rng(seed, "c", 7)).unwrap();
    assert_eq!(a, b);

    let shape_spec = ShapeGenSpec {
        landmarks: 6,
        covariate_dim: 2,
        lower: 0.0,
        upper: 2.0,
        angle_noise: 0.05,
        radial_noise: 0.01,
        flatten_curve: false,
    };
    let s1 = generate_shape_regression(&shape_spec, 12, &mut cell_rng(seed, "shape", 2)).unwrap();
    let s2 = generate_shape_regression(&shape_spec, 12, &mut cell_rng(seed, "shape", 2)).unwrap();
    assert_eq!(s1.covariates, s2.covariates);
    for (a, b) in s1.responses.iter().zip(&s2.responses) {
        assert!(full_procrustes_distance(a, b) < 1e-15);
    }
}

pub fn check_anchored_step_descends(seed: u64) {
    let mut rng = rng_for(seed);
    for _ in 0..40 {
        let n = rng.random_range(3..40);
        let d = rng.random_range(2..6);
        let points = random_cloud(&mut rng, n, d);
        let weights = random_weights(&mut rng, n);
        let vz = vardi_zhang_init(&points, &weights);
        let anchor = &points[vz.anchor].coords;
        let f_anchor = objective(&points, &weights, anchor);
        if vz.anchor_optimal {
            // The anchored optimality test fired: the anchor must truly beat
            // a ring of probes around it.
            for _ in 0..20 {
                let dir = random_unit(&mut rng, d);
                let probe: Vec<f64> =
                    anchor.iter().zip(&dir).map(|(c, u)| c + 1e-4 * u).collect();
                assert!(objective(&points, &weights, &probe) >= f_anchor - 1e-9);
            }
        } else {
            let f0 = objective(&points, &weights, &vz.y0);
            assert!(
                f0 < f_anchor + 1e-12,
                "anchored step increased the objective: {f0} vs {f_anchor}"
            );
        }
    }
}

/// Every structural check over one seed; used by the summary gate.
/// Returns the number of named checks executed.
pub fn run_all_structural_checks(seed: u64) -> usize {
    check_projection_idempotence(seed);
    check_preshape_invariants(seed);
    check_embedding_similarity_invariance(seed);
    check_procrustes_identity(seed);
    check_su_equivariance(seed);
    check_power_iteration(seed);
    check_triangle_inequality(seed);
    check_sphere_rotation_isometry(seed);
    check_circle_median_equivariance(seed);
    check_spd_distance_routes(seed);
    check_spd_median_pd(seed);
    check_monotone_trace_and_fejer(seed);
    check_variant_agreement_flat(seed);
    check_variant_agreement_shapes(seed);
    check_uniform_weight_specialization(seed);
    check_gradient_finite_differences(seed);
    check_lipschitz_certificate(seed);
    check_surrogate_bounds(seed);
    check_generator_determinism(seed);
    check_anchored_step_descends(seed);
    20
}
