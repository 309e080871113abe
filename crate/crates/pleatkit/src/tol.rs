//! Tolerance constants shared across the crate.
//!
//! Double precision carries ~16 significant digits; the matrices involved are
//! at most 11x11 and most derived quantities go through one square root and
//! one logarithm, which fixes the bands below.

/// Causal classification of segments (spacelike / lightlike / timelike).
pub const TOL_CLASS: f64 = 1e-9;

/// Relative spectral gap below which loxodromy is reported as indeterminate.
pub const TOL_GAP: f64 = 1e-7;

/// Gram eigenvalues of smaller absolute value count as null directions.
pub const TOL_SIG: f64 = 1e-9;

/// Form preservation and determinant checks on candidate isometries.
pub const TOL_ISOMETRY: f64 = 1e-10;

/// Normalization residual accepted for points of the hyperboloid.
pub const TOL_POINT: f64 = 1e-12;

/// Successive-gap threshold that ends an exhaustion trace.
pub const TOL_CONV: f64 = 1e-10;

/// Agreement demanded between two independent evaluation routes.
pub const TOL_ORACLE: f64 = 1e-8;

/// Angle coincidence on the boundary circle.
pub const TOL_ANGLE: f64 = 1e-12;

/// Switch-condition residual accepted for train-track weight systems.
pub const TOL_SWITCH: f64 = 1e-9;

/// Residual accepted for the surface-group relation of a glued representation.
pub const TOL_RELATION: f64 = 1e-7;

/// Gram eigenvalue band inside which flatness of adjacent plaques is
/// reported as indeterminate rather than decided.
pub const TOL_BEND: f64 = 1e-8;
