//! The singular-minimal residual and its expansion in `t`.
//!
//! Multiplying `H - α⟨N,v⟩/⟨p,v⟩` by `⟨p,v⟩ (x² + h² cos² θ)^{3/2}` gives the
//! cleared residual
//!
//! ```text
//! F(s, t) = P ⟨p,v⟩ - α Q_v (x² + h² cos² θ)
//! ```
//!
//! where `P` is the numerator of `H` and `Q_v = ⟨N,v⟩ sqrt(x² + h² cos² θ)`.
//! Along each orbit `F` is a combination of `1, t, sin t, cos t` with
//! coefficients `A0..A3` that depend on the profile state only. With this
//! sign convention the closed forms below reproduce a direct numeric
//! extraction with proportionality factor `+1`.

use std::f64::consts::FRAC_PI_3;

use nalgebra::{Matrix4, Vector4};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{self, check_regular, mean_curvature_numerator, regularity_of, HelicoidalSurface};
use crate::profile::ProfileState;
use crate::tol::EPS_HALF;
use crate::vec3::UnitVec3;

/// Default extraction nodes. The basis matrix at these nodes has a
/// condition number of about 1.7e3.
pub const DEFAULT_T_NODES: [f64; 4] = [0.0, FRAC_PI_3, std::f64::consts::FRAC_PI_2, 1.0];

/// Largest accepted condition number of the extraction basis matrix.
pub const MAX_CONDITION: f64 = 1e8;

/// `α` and the unit direction `v`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SmsParams {
    alpha: f64,
    direction: UnitVec3,
}

impl SmsParams {
    pub fn new(alpha: f64, direction: UnitVec3) -> Result<Self> {
        if !alpha.is_finite() || alpha == 0.0 {
            return Err(Error::invalid(format!(
                "alpha must be finite and non-zero, got {alpha}"
            )));
        }
        Ok(Self { alpha, direction })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn direction(&self) -> UnitVec3 {
        self.direction
    }
}

/// Coefficients of `F` in the basis `{1, t, sin t, cos t}`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct CoefficientQuadruple {
    pub a0: f64,
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
}

impl CoefficientQuadruple {
    pub fn evaluate(&self, t: f64) -> f64 {
        let (sin, cos) = t.sin_cos();
        self.a0 + self.a1 * t + self.a2 * sin + self.a3 * cos
    }

    pub fn to_array(&self) -> [f64; 4] {
        [self.a0, self.a1, self.a2, self.a3]
    }

    pub fn max_abs(&self) -> f64 {
        self.to_array().iter().fold(0.0, |m, a| m.max(a.abs()))
    }

    pub fn scale(&self, k: f64) -> Self {
        Self {
            a0: self.a0 * k,
            a1: self.a1 * k,
            a2: self.a2 * k,
            a3: self.a3 * k,
        }
    }
}

/// `H - α⟨N,v⟩/⟨p,v⟩` at `Ψ(s, t)`.
pub fn residual(surface: &HelicoidalSurface, params: &SmsParams, s: f64, t: f64) -> Result<f64> {
    let h = surface.pitch();
    let st = surface.regular_state(s)?;
    let v = params.direction();
    let pv = support(&st, h, v, t);
    if !(pv > EPS_HALF) {
        return Err(Error::Halfspace { s, t, value: pv });
    }
    let mean = geometry::mean_curvature_theta(&st, h)?;
    // ⟨N, v⟩ as a scalar: the same linear form in (v1 cos t + v2 sin t) as
    // ⟨p, v⟩, so near-cancellations in the two agree.
    let nv = normal_numerator_along(&st, h, v, t) / regularity_of(&st, h).sqrt();
    Ok(mean - params.alpha() * nv / pv)
}

fn support(st: &ProfileState, h: f64, v: UnitVec3, t: f64) -> f64 {
    let (sin, cos) = t.sin_cos();
    (h * t + st.z()) * v.z() + st.x() * (v.x() * cos + v.y() * sin)
}

fn normal_numerator_along(st: &ProfileState, h: f64, v: UnitVec3, t: f64) -> f64 {
    let (sin, cos) = t.sin_cos();
    let (x, c, sn) = (st.x(), st.cos_theta(), st.sin_theta());
    c * (v.z() * x + h * v.x() * sin - h * v.y() * cos) - x * sn * (v.x() * cos + v.y() * sin)
}

/// Residual with every denominator cleared; defined for all `(s, t)`.
pub fn cleared_residual(st: &ProfileState, h: f64, params: &SmsParams, t: f64) -> f64 {
    let v = params.direction();
    mean_curvature_numerator(st, h) * support(st, h, v, t)
        - params.alpha() * normal_numerator_along(st, h, v, t) * regularity_of(st, h)
}

/// Closed-form `A0..A3` for an arbitrary direction `v`.
pub fn coefficients_general(st: &ProfileState, h: f64, params: &SmsParams) -> CoefficientQuadruple {
    let (x, z, c, sn, dth) = (st.x(), st.z(), st.cos_theta(), st.sin_theta(), st.theta_prime());
    let alpha = params.alpha();
    let v = params.direction();
    let (v1, v2, v3) = (v.x(), v.y(), v.z());
    let w2 = x * x + h * h * c * c;
    let hc = h * h * c * c;

    let a0 = -v3 * (alpha * x * c * w2 - x * z * dth * (h * h + x * x) - x * x * z * sn - 2.0 * hc * z * sn);
    let a1 = h * v3 * (x * dth * (h * h + x * x) + x * x * sn + 2.0 * hc * sn);
    let radial = alpha * x * sn * w2 + x * x * dth * (x * x + h * h) + 2.0 * hc * x * sn + x * x * x * sn;
    let twist = alpha * h * c * w2;
    CoefficientQuadruple {
        a0,
        a1,
        a2: radial * v2 - twist * v1,
        a3: radial * v1 + twist * v2,
    }
}

/// `(A0, A1)` for `v = (0, 0, 1)`, where `F` is affine in `t`.
pub fn coefficients_vertical(st: &ProfileState, h: f64, alpha: f64) -> (f64, f64) {
    let (x, c) = (st.x(), st.cos_theta());
    let num = mean_curvature_numerator(st, h);
    let a0 = st.z() * num - alpha * x * c * (x * x + h * h * c * c);
    (a0, h * num)
}

/// `h A0 - z A1`, computed from the closed-form quadruple.
pub fn combo_ha0_za1(st: &ProfileState, h: f64, params: &SmsParams) -> f64 {
    let q = coefficients_general(st, h, params);
    h * q.a0 - st.z() * q.a1
}

/// `v2 A3 - v1 A2`, computed from the closed-form quadruple.
pub fn combo_v2a3_v1a2(st: &ProfileState, h: f64, params: &SmsParams) -> f64 {
    let q = coefficients_general(st, h, params);
    let v = params.direction();
    v.y() * q.a3 - v.x() * q.a2
}

/// Solves `F(s, t_i) = A0 + A1 t_i + A2 sin t_i + A3 cos t_i` at four nodes.
pub fn extract_coefficients_numeric(
    st: &ProfileState,
    h: f64,
    params: &SmsParams,
    t_nodes: [f64; 4],
) -> Result<CoefficientQuadruple> {
    let basis = Matrix4::from_fn(|i, j| {
        let t = t_nodes[i];
        match j {
            0 => 1.0,
            1 => t,
            2 => t.sin(),
            _ => t.cos(),
        }
    });
    let sv = basis.singular_values();
    let condition = sv.max() / sv.min();
    if !(condition < MAX_CONDITION) {
        return Err(Error::IllConditioned { condition });
    }
    let rhs = Vector4::from_fn(|i, _| cleared_residual(st, h, params, t_nodes[i]));
    let a = basis.lu().solve(&rhs).ok_or(Error::IllConditioned {
        condition: f64::INFINITY,
    })?;
    Ok(CoefficientQuadruple {
        a0: a[0],
        a1: a[1],
        a2: a[2],
        a3: a[3],
    })
}

/// `⟨p, v⟩` at `Ψ(s, t)`, handy for callers filtering the halfspace.
pub fn support_value(surface: &HelicoidalSurface, params: &SmsParams, s: f64, t: f64) -> Result<f64> {
    let st = surface.state(s)?;
    Ok(support(&st, surface.pitch(), params.direction(), t))
}

/// Residual scaled to the cleared form, `residual · ⟨p,v⟩ · (x² + h² cos² θ)^{3/2}`.
pub fn rescaled_residual(surface: &HelicoidalSurface, params: &SmsParams, s: f64, t: f64) -> Result<f64> {
    let st = surface.regular_state(s)?;
    let w2 = check_regular(&st, surface.pitch())?;
    let r = residual(surface, params, s, t)?;
    Ok(r * support_value(surface, params, s, t)? * w2 * w2.sqrt())
}
