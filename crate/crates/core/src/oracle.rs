//! Finite-difference oracle for the closed forms in [`crate::geometry`].
//!
//! Second-order central differences of `Ψ` at step `δ` carry a truncation
//! error of order `δ²`. At `δ = 1e-5` the f64 cancellation in a second
//! difference would be near `1e-16 / δ² = 1e-6`, so the nine stencil
//! positions and their differences are formed in double-double arithmetic
//! and only the finished derivatives are rounded to `f64`.

use twofloat::TwoFloat;

use crate::error::{Error, Result};
use crate::geometry::{normal_theta, HelicoidalSurface, SurfaceJet};
use crate::tol::{EPS_REG, FD_STEP};
use crate::vec3::Vec3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FdConfig {
    step: f64,
}

impl FdConfig {
    pub fn new(step: f64) -> Result<Self> {
        if !(step > 0.0 && step < 1e-2) {
            return Err(Error::invalid(format!(
                "finite-difference step must lie in (0, 1e-2), got {step}"
            )));
        }
        Ok(Self { step })
    }

    pub fn step(&self) -> f64 {
        self.step
    }
}

impl Default for FdConfig {
    fn default() -> Self {
        Self { step: FD_STEP }
    }
}

type Dd = TwoFloat;

#[derive(Clone, Copy)]
struct DdVec([Dd; 3]);

impl DdVec {
    fn combine(terms: &[(f64, DdVec)], scale: Dd) -> Vec3 {
        let comp = |k: usize| {
            let sum = terms
                .iter()
                .fold(Dd::from(0.0), |acc, (w, v)| acc + Dd::from(*w) * v.0[k]);
            let r = sum / scale;
            r.hi() + r.lo()
        };
        Vec3::new(comp(0), comp(1), comp(2))
    }
}

/// `(cos a, sin a)` by Taylor series; `|a| < 0.05`.
fn small_angle(a: Dd) -> (Dd, Dd) {
    let a2 = a * a;
    let mut cos = Dd::from(1.0);
    let mut sin = a;
    let mut ct = Dd::from(1.0);
    let mut st = a;
    for k in 1..12 {
        let kf = k as f64;
        ct = -(ct * a2) / Dd::from((2.0 * kf - 1.0) * (2.0 * kf));
        st = -(st * a2) / Dd::from((2.0 * kf) * (2.0 * kf + 1.0));
        cos += ct;
        sin += st;
    }
    (cos, sin)
}

fn stencil_point(surface: &HelicoidalSurface, s: f64, t: f64, i: i32, j: i32, step: f64) -> Result<DdVec> {
    let sd = Dd::from(s) + Dd::from(i as f64 * step);
    let (x, z) = surface.profile().position(sd)?;
    let (sin0, cos0) = t.sin_cos();
    let (c, sn) = if j == 0 {
        (Dd::from(cos0), Dd::from(sin0))
    } else {
        let (cd, sdl) = small_angle(Dd::from(j as f64 * step));
        (
            Dd::from(cos0) * cd - Dd::from(sin0) * sdl,
            Dd::from(sin0) * cd + Dd::from(cos0) * sdl,
        )
    };
    let td = Dd::from(t) + Dd::from(j as f64 * step);
    Ok(DdVec([x * c, x * sn, z + Dd::from(surface.pitch()) * td]))
}

/// Central-difference jet of `Ψ` at `(s, t)`.
pub fn fd_jet(surface: &HelicoidalSurface, s: f64, t: f64, cfg: FdConfig) -> Result<SurfaceJet> {
    let d = cfg.step;
    let (start, end) = surface.profile().domain();
    let (lo, hi) = (s - 2.0 * d, s + 2.0 * d);
    if lo < start || hi > end {
        return Err(Error::StencilOutsideDomain { lo, hi, start, end });
    }
    let p = |i, j| stencil_point(surface, s, t, i, j, d);
    let c = p(0, 0)?;
    let (sp, sm) = (p(1, 0)?, p(-1, 0)?);
    let (tp, tm) = (p(0, 1)?, p(0, -1)?);
    let (pp, pm, mp, mm) = (p(1, 1)?, p(1, -1)?, p(-1, 1)?, p(-1, -1)?);

    let dd = Dd::from(d);
    let two_d = Dd::from(2.0 * d);
    let d_sq = dd * dd;
    let four_d_sq = Dd::from(4.0) * d_sq;
    Ok(SurfaceJet {
        point: DdVec::combine(&[(1.0, c)], Dd::from(1.0)),
        ps: DdVec::combine(&[(1.0, sp), (-1.0, sm)], two_d),
        pt: DdVec::combine(&[(1.0, tp), (-1.0, tm)], two_d),
        pss: DdVec::combine(&[(1.0, sp), (-2.0, c), (1.0, sm)], d_sq),
        pst: DdVec::combine(&[(1.0, pp), (-1.0, pm), (-1.0, mp), (1.0, mm)], four_d_sq),
        ptt: DdVec::combine(&[(1.0, tp), (-2.0, c), (1.0, tm)], d_sq),
    })
}

/// Unit normal `Ψ_s × Ψ_t / |Ψ_s × Ψ_t|` from a jet.
pub fn cross_normal(jet: &SurfaceJet) -> Result<Vec3> {
    let c = jet.cross();
    let n2 = c.norm_squared();
    if !(n2 > EPS_REG) {
        return Err(Error::DegenerateNormal { value: n2 });
    }
    Ok(c * (1.0 / n2.sqrt()))
}

/// `(eG - 2fF + gE)/(EG - F²)` assembled from [`fd_jet`], measured against
/// the cross-product normal.
pub fn fd_mean_curvature(surface: &HelicoidalSurface, s: f64, t: f64, cfg: FdConfig) -> Result<f64> {
    let jet = fd_jet(surface, s, t, cfg)?;
    let n = cross_normal(&jet)?;
    let forms = jet.forms(n);
    if !(forms.determinant() > EPS_REG) {
        return Err(Error::Regularity {
            s,
            value: forms.determinant(),
        });
    }
    Ok(forms.mean_curvature())
}

/// Sign `σ` with `N_closed = σ · Ψ_s × Ψ_t / |Ψ_s × Ψ_t|`, measured with the
/// finite-difference jet.
pub fn orientation_sign(surface: &HelicoidalSurface, s: f64, t: f64, cfg: FdConfig) -> Result<f64> {
    let jet = fd_jet(surface, s, t, cfg)?;
    let n_fd = cross_normal(&jet)?;
    let st = surface.regular_state(s)?;
    let n = normal_theta(&st, surface.pitch(), t)?;
    Ok(n.dot(n_fd).signum())
}
