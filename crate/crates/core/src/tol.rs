//! Central numerical thresholds.
//!
//! Every tolerance that guards a mathematical decision lives here with a
//! note on what it protects, so reviews of numerical behavior touch one
//! file.  Solver stopping thresholds are configurable per run and are *not*
//! in this list; these are the fixed structural guards.

/// Sphere projection: an ambient mean with norm below this is treated as
/// focal (no well-defined direction).
pub const SPHERE_FOCAL_NORM: f64 = 1e-12;

/// Shape projection: relative eigenvalue gap (λ₁ − λ₂)/λ₁ below this means
/// the leading eigenvector — and hence the projection — is not unique.
pub const SHAPE_FOCAL_GAP: f64 = 1e-9;

/// Membership checks (unit norm, trace, centering residues) are asserted to
/// this absolute tolerance when validating constructed points.
pub const MEMBERSHIP: f64 = 1e-10;

/// Entrywise Hermitian-symmetry tolerance for matrix-layout ambient points.
pub const HERMITIAN: f64 = 1e-12;

/// Weights passed to averaging routines must sum to one within this.
pub const WEIGHT_SUM: f64 = 1e-9;

/// Distances below this are treated as an exact hit on a data point inside
/// Weiszfeld denominators, triggering the anchored optimality test instead
/// of dividing by a denormal.
pub const DISTANCE_CLAMP: f64 = 1e-300;

/// Relative residual below which a centered point cloud counts as lying on
/// a single line, switching the solver to the exact 1-D weighted median.
pub const COLINEAR_REL: f64 = 1e-12;

/// Absolute slack added to the reference optimum when certifying
/// convergence bounds, absorbing the reference solve's own residual error.
pub const CERTIFICATE_SLACK: f64 = 1e-12;

/// Reference solves (the `f*` oracle for certificates) run to this
/// displacement threshold with the iteration cap below.
pub const REFERENCE_EPSILON: f64 = 1e-14;
pub const REFERENCE_MAX_ITERS: usize = 1_000_000;
