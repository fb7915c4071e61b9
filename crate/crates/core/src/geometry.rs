//! Closed-form geometry of helicoidal surfaces
//! `Ψ(s, t) = (x(s) cos t, x(s) sin t, z(s) + h t)`.
//!
//! Mean curvature is the *sum* of the principal curvatures, measured against
//! the normal
//!
//! ```text
//! N = (h x' sin t - x z' cos t, -h x' cos t - x z' sin t, x x') / sqrt(x² + h² x'²)
//! ```
//!
//! which coincides with `Ψ_s × Ψ_t / |Ψ_s × Ψ_t|` (orientation sign `+1`,
//! re-measured by [`crate::oracle::orientation_sign`]).

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::profile::{Profile, ProfileState};
use crate::tol::EPS_REG;
use crate::vec3::{UnitVec3, Vec3};

/// A profile swept by the screw motion of pitch `h` about the `z`-axis.
/// `h = 0` gives a surface of revolution.
#[derive(Debug, Clone)]
pub struct HelicoidalSurface {
    profile: Arc<Profile>,
    pitch: f64,
}

impl HelicoidalSurface {
    pub fn new(profile: impl Into<Arc<Profile>>, pitch: f64) -> Result<Self> {
        if !pitch.is_finite() {
            return Err(Error::invalid(format!("pitch must be finite, got {pitch}")));
        }
        Ok(Self {
            profile: profile.into(),
            pitch,
        })
    }

    pub fn profile(&self) -> &Profile {
        &self.profile
    }

    pub fn shared_profile(&self) -> Arc<Profile> {
        Arc::clone(&self.profile)
    }

    pub fn pitch(&self) -> f64 {
        self.pitch
    }

    pub fn state(&self, s: f64) -> Result<ProfileState> {
        self.profile.state(s)
    }

    /// `EG - F² = x² + h² cos² θ` at `s`.
    pub fn regularity(&self, s: f64) -> Result<f64> {
        Ok(regularity_of(&self.state(s)?, self.pitch))
    }

    /// State at `s`, failing if the immersion is singular there.
    pub fn regular_state(&self, s: f64) -> Result<ProfileState> {
        let st = self.state(s)?;
        check_regular(&st, self.pitch)?;
        Ok(st)
    }
}

/// Position and first and second partials of `Ψ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceJet {
    pub point: Vec3,
    pub ps: Vec3,
    pub pt: Vec3,
    pub pss: Vec3,
    pub pst: Vec3,
    pub ptt: Vec3,
}

impl SurfaceJet {
    /// Unnormalized `Ψ_s × Ψ_t`.
    pub fn cross(&self) -> Vec3 {
        self.ps.cross(self.pt)
    }

    /// First and second fundamental forms with respect to `normal`.
    pub fn forms(&self, normal: Vec3) -> FundamentalForms {
        FundamentalForms {
            e_big: self.ps.dot(self.ps),
            f_big: self.ps.dot(self.pt),
            g_big: self.pt.dot(self.pt),
            e: self.pss.dot(normal),
            f: self.pst.dot(normal),
            g: self.ptt.dot(normal),
        }
    }
}

/// `E, F, G` (first form) and `e, f, g` (second form).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FundamentalForms {
    pub e_big: f64,
    pub f_big: f64,
    pub g_big: f64,
    pub e: f64,
    pub f: f64,
    pub g: f64,
}

impl FundamentalForms {
    pub fn determinant(&self) -> f64 {
        self.e_big * self.g_big - self.f_big * self.f_big
    }

    /// `(eG - 2fF + gE) / (EG - F²)`
    pub fn mean_curvature(&self) -> f64 {
        (self.e * self.g_big - 2.0 * self.f * self.f_big + self.g * self.e_big) / self.determinant()
    }
}

/// Screw motion: rotation by `t` about the `z`-axis followed by a lift `h t`.
pub fn helicoidal_motion(p: Vec3, t: f64, h: f64) -> Vec3 {
    let (sin, cos) = t.sin_cos();
    Vec3::new(p.x * cos - p.y * sin, p.x * sin + p.y * cos, p.z + h * t)
}

pub fn parametrize(surface: &HelicoidalSurface, s: f64, t: f64) -> Result<Vec3> {
    let st = surface.state(s)?;
    Ok(helicoidal_motion(Vec3::new(st.x(), 0.0, st.z()), t, surface.pitch))
}

pub fn surface_jet(surface: &HelicoidalSurface, s: f64, t: f64) -> Result<SurfaceJet> {
    let st = surface.state(s)?;
    Ok(jet_of(&st, surface.pitch, t))
}

/// Analytic jet of `Ψ` for a single profile state.
pub fn jet_of(st: &ProfileState, h: f64, t: f64) -> SurfaceJet {
    let (sin, cos) = t.sin_cos();
    let (x, xp, xpp) = (st.x(), st.x_prime(), st.x_second());
    SurfaceJet {
        point: Vec3::new(x * cos, x * sin, st.z() + h * t),
        ps: Vec3::new(xp * cos, xp * sin, st.z_prime()),
        pt: Vec3::new(-x * sin, x * cos, h),
        pss: Vec3::new(xpp * cos, xpp * sin, st.z_second()),
        pst: Vec3::new(-xp * sin, xp * cos, 0.0),
        ptt: Vec3::new(-x * cos, -x * sin, 0.0),
    }
}

/// `EG - F² = x² + h² cos² θ`; positive exactly where `Ψ` is an immersion.
pub fn regularity(surface: &HelicoidalSurface, s: f64) -> Result<f64> {
    surface.regularity(s)
}

pub fn regularity_of(st: &ProfileState, h: f64) -> f64 {
    let c = st.cos_theta();
    st.x() * st.x() + h * h * c * c
}

pub(crate) fn check_regular(st: &ProfileState, h: f64) -> Result<f64> {
    let w2 = regularity_of(st, h);
    if w2 > EPS_REG {
        Ok(w2)
    } else {
        Err(Error::Regularity { s: st.s(), value: w2 })
    }
}

/// Closed-form `E, F, G, e, f, g`; none depends on `t`.
pub fn fundamental_forms(surface: &HelicoidalSurface, s: f64, _t: f64) -> Result<FundamentalForms> {
    let st = surface.regular_state(s)?;
    Ok(forms_of(&st, surface.pitch))
}

fn forms_of(st: &ProfileState, h: f64) -> FundamentalForms {
    let (x, xp, zp) = (st.x(), st.x_prime(), st.z_prime());
    let w = (h * h * xp * xp + x * x).sqrt();
    FundamentalForms {
        e_big: 1.0,
        f_big: h * zp,
        g_big: x * x + h * h,
        e: x * (st.z_second() * xp - zp * st.x_second()) / w,
        f: -h * xp * xp / w,
        g: x * x * zp / w,
    }
}

/// Unit normal from `x, x', z'` without assuming `x'² + z'² = 1`.
pub fn normal_general(x: f64, xp: f64, zp: f64, h: f64, t: f64) -> Result<UnitVec3> {
    let w2 = x * x + h * h * xp * xp;
    if !(w2 > EPS_REG) {
        return Err(Error::DegenerateNormal { value: w2 });
    }
    let w = w2.sqrt();
    let (sin, cos) = t.sin_cos();
    Ok(UnitVec3::from_unit(Vec3::new(
        (h * xp * sin - x * zp * cos) / w,
        (-h * xp * cos - x * zp * sin) / w,
        x * xp / w,
    )))
}

/// Unit normal written with the turning angle.
pub fn normal_theta(st: &ProfileState, h: f64, t: f64) -> Result<UnitVec3> {
    let (x, c, sn) = (st.x(), st.cos_theta(), st.sin_theta());
    let w2 = x * x + h * h * c * c;
    if !(w2 > EPS_REG) {
        return Err(Error::DegenerateNormal { value: w2 });
    }
    let w = w2.sqrt();
    let (sin, cos) = t.sin_cos();
    Ok(UnitVec3::from_unit(Vec3::new(
        (h * c * sin - x * sn * cos) / w,
        (-h * c * cos - x * sn * sin) / w,
        x * c / w,
    )))
}

/// Mean curvature from `x, x', x'', z', z''`.
pub fn mean_curvature_general(x: f64, xp: f64, xpp: f64, zp: f64, zpp: f64, h: f64) -> Result<f64> {
    let w2 = h * h * xp * xp + x * x;
    if !(w2 > EPS_REG) {
        return Err(Error::DegenerateNormal { value: w2 });
    }
    let num = (xp * zpp - zp * xpp) * (x * x * x + h * h * x) + zp * (2.0 * h * h * xp * xp + x * x);
    Ok(num / (w2 * w2.sqrt()))
}

/// Numerator of the turning-angle form of `H`:
/// `x (x² + h²) θ' + sin θ (x² + 2 h² cos² θ)`.
pub fn mean_curvature_numerator(st: &ProfileState, h: f64) -> f64 {
    let (x, c) = (st.x(), st.cos_theta());
    x * (x * x + h * h) * st.theta_prime() + st.sin_theta() * (x * x + 2.0 * h * h * c * c)
}

/// Mean curvature in terms of `θ` and `θ'`.
pub fn mean_curvature_theta(st: &ProfileState, h: f64) -> Result<f64> {
    let w2 = check_regular(st, h)?;
    Ok(mean_curvature_numerator(st, h) / (w2 * w2.sqrt()))
}
