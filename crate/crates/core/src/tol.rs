//! Default thresholds shared across modules.

/// Surfaces with `EG - F^2 <= EPS_REG` are treated as singular.
pub const EPS_REG: f64 = 1e-12;

/// Minimum `<p, v>` at which the uncleared residual is evaluated.
pub const EPS_HALF: f64 = 1e-9;

/// A cleared coefficient below this magnitude counts as zero.
pub const TOL_ZERO: f64 = 1e-10;

/// Default central-difference step.
pub const FD_STEP: f64 = 1e-5;

/// Default fixed RK4 step for integrated profiles.
pub const RK4_STEP: f64 = 1e-3;

/// Rotational trajectories stop once `x` or `z` falls to this value.
pub const AXIS_FLOOR: f64 = 1e-6;

/// Tolerance on `|v| = 1` and on tests of unit length.
pub const UNIT_NORM: f64 = 1e-12;
