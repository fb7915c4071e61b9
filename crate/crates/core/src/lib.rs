//! Helicoidal singular minimal surfaces.
//!
//! A helicoidal surface is swept out by a planar arc-length curve
//! `γ(s) = (x(s), 0, z(s))` under the one-parameter group of screw motions
//! about the `z`-axis with pitch `h`. A surface is *α-singular minimal* with
//! respect to a unit direction `v` when its mean curvature satisfies
//!
//! ```text
//! H = α ⟨N, v⟩ / ⟨p, v⟩
//! ```
//!
//! on the open halfspace `⟨p, v⟩ > 0`. For `h ≠ 0` the only solutions are
//! circular cylinders about the twist axis with `α = -1` and `v ⊥ e_z`.
//!
//! The crate is organised as:
//!
//! - [`geometry`]: closed-form parametrization, jets, fundamental forms,
//!   normals and mean curvature.
//! - [`residual`]: the singular-minimal residual, its cleared form and the
//!   expansion in the basis `{1, t, sin t, cos t}`.
//! - [`oracle`]: finite-difference cross-checks of every closed form.
//! - [`generators`]: rotational profile shooting, meshing and export.
//! - [`classifier`]: certification of closed-form cases and a falsification
//!   grid search over profile space.

// `!(a > b)` is deliberate throughout: NaN must fail the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod classifier;
pub mod error;
pub mod format;
pub mod generators;
pub mod geometry;
pub mod oracle;
pub mod profile;
pub mod residual;
pub mod tol;
pub mod vec3;

pub use error::{Error, Result};
pub use geometry::{FundamentalForms, HelicoidalSurface, SurfaceJet};
pub use profile::{Profile, ProfileState, Sign};
pub use residual::{CoefficientQuadruple, SmsParams};
pub use vec3::{UnitVec3, Vec3};
