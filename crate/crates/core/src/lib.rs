//! Robust location estimation and local regression for data living on
//! embedded manifolds — the circle and sphere, planar landmark shapes, and
//! symmetric positive-definite matrices.
//!
//! The central objects are the *extrinsic mean* (project the ambient
//! average back to the manifold's embedded image) and the *extrinsic
//! median* (project the ambient Fermat–Weber point instead).  The median
//! retains the classical robustness of the spatial median while staying as
//! cheap as the mean: the ambient minimization is solved by a Weiszfeld
//! iteration with an anchored initialization that carries explicit
//! convergence bounds, plus a smoothed accelerated variant.
//!
//! On top of the estimators sit kernel-weighted local regression for
//! manifold-valued responses (robust and non-robust routes, with seeded
//! cross-validation for the bandwidth), simulation generators for circular
//! and shape-valued benchmarks, and the experiment drivers that produce
//! the benchmark tables.
//!
//! Modules:
//! - [`ambient`]: flat embedded coordinates and weighted averages.
//! - [`sphere`], [`shape`], [`spd`]: the supported manifolds — unit
//!   spheres (chord geometry), planar shapes (rank-one projector
//!   embedding), and SPD matrices (matrix-logarithm coordinates).
//! - [`manifold`]: one dispatch type over the three geometries.
//! - [`weiszfeld`]: Fermat–Weber solvers and convergence certificates.
//! - [`estimators`]: extrinsic mean and median.
//! - [`kernel`], [`relr`]: product kernels and local regression.
//! - [`simgen`]: seeded generators and contamination mechanisms.
//! - [`metrics`]: error metrics, result tables, experiment drivers.

pub mod ambient;
pub mod error;
pub mod estimators;
pub mod kernel;
pub mod manifold;
pub mod metrics;
pub mod relr;
pub mod shape;
pub mod simgen;
pub mod spd;
pub mod sphere;
pub mod tol;
pub mod weiszfeld;

pub use ambient::{ambient_mean, uniform_weights, AmbientPoint, Layout, ProjectionResult};
pub use error::{Error, Result};
pub use estimators::{
    extrinsic_mean, extrinsic_mean_weighted, extrinsic_median, extrinsic_median_weighted,
    EstimatorKind, MedianReport,
};
pub use kernel::{kernel_weights, KernelFamily, KernelSpec};
pub use manifold::{extrinsic_distance, ManifoldDescriptor, ManifoldPoint};
pub use metrics::{
    breakdown_curve, comparison_distance, md_obs, rmse_true, run_experiment, ExperimentSpec,
    ResultRow, ResultTable, RunOutcome,
};
pub use relr::{
    cv_bandwidth, elr_fit, relr_fit, relr_fit_fast, CvConfig, CvLoss, CvReport, FitMethod,
    LocalEstimate, RegressionDataset, RegressionFit,
};
pub use shape::{
    full_procrustes_distance, shape_project, shape_unembed, to_preshape, vw_embed,
    PlanarConfiguration, Preshape,
};
pub use simgen::{
    cell_rng, cell_seed, coherent_outlier_mean, contaminate_angles, contaminate_shapes,
    generate_shape_regression, sample_von_mises, sample_wrapped_stable, shape_curve_point,
    wrapped_stable_density, ContaminationMechanism, ContaminationSpec, ShapeGenSpec,
    ShapeRegressionSample, WrappedStableSpec, GENERATOR_VERSION, RNG_NAME,
};
pub use spd::{spd_distance, spd_embed, spd_unembed_project, SpdPoint};
pub use sphere::{
    angle_to_point, intrinsic_median_sphere, point_to_angle, sphere_exp, sphere_log,
    sphere_project, Angle, SpherePoint,
};
pub use weiszfeld::{
    check_accelerated_bound, check_sublinear_bound, fermat_weber_solve, objective,
    reference_solve, smoothed_gradient, smoothed_objective, smoothed_problem, vardi_zhang_init,
    ConvergenceCertificate, Init, SmoothedProblem, Termination, Variant, VzInit, WeiszfeldConfig,
    WeiszfeldReport,
};
