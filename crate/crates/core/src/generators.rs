//! Forward constructions: rotational profiles by shooting, meshes, export.
//!
//! For `h = 0` and `v = (0, 0, 1)` the cleared residual collapses to
//! `x² (z (x θ' + sin θ) - α x cos θ)`, so away from the axis and the
//! boundary plane a singular minimal surface of revolution is generated by
//!
//! ```text
//! θ' = (α x cos θ - z sin θ) / (x z).
//! ```
//!
//! Trajectories are checked against the full residual afterwards rather
//! than trusted.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::format::{csv_row, g17};
use crate::geometry::{normal_theta, parametrize, HelicoidalSurface};
use crate::profile::{linspace, Profile, ProfileKind, ProfileState, StartPoint};
use crate::residual::{residual, SmsParams};
use crate::tol::AXIS_FLOOR;
use crate::vec3::{UnitVec3, Vec3};

/// Initial data for the rotational ODE.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RotationalOdeState {
    pub s: f64,
    pub x: f64,
    pub z: f64,
    pub theta: f64,
}

impl Default for RotationalOdeState {
    fn default() -> Self {
        Self {
            s: 0.0,
            x: 1.0,
            z: 1.0,
            theta: 0.0,
        }
    }
}

/// Right-hand side `θ'` of the rotational ODE.
pub fn rotational_curvature(alpha: f64, x: f64, z: f64, theta: f64) -> f64 {
    let (sin, cos) = theta.sin_cos();
    (alpha * x * cos - z * sin) / (x * z)
}

#[derive(Debug, Clone)]
pub struct RotationalProfile {
    pub profile: Profile,
    pub alpha: f64,
    /// Set when the trajectory reached `x <= 1e-6` or `z <= 1e-6` (or blew
    /// up) before `requested_steps`.
    pub truncated: bool,
    pub steps_taken: usize,
    pub requested_steps: usize,
}

impl RotationalProfile {
    /// The surface of revolution (`h = 0`) generated by the profile.
    pub fn surface(&self) -> HelicoidalSurface {
        HelicoidalSurface::new(self.profile.clone(), 0.0).expect("finite pitch")
    }

    pub fn params(&self) -> SmsParams {
        SmsParams::new(self.alpha, UnitVec3::E3).expect("alpha validated at integration")
    }

    /// Parameters strictly inside the arc: every interior node and every
    /// midpoint between consecutive nodes.
    pub fn interior_samples(&self) -> Vec<f64> {
        let nodes: Vec<f64> = match self.profile.kind() {
            ProfileKind::Integrated(c) => c.node_states().map(|st| st.s()).collect(),
            _ => unreachable!("rotational profiles are integrated"),
        };
        let mut out = Vec::with_capacity(2 * nodes.len());
        for (k, w) in nodes.windows(2).enumerate() {
            if k > 0 {
                out.push(w[0]);
            }
            out.push(0.5 * (w[0] + w[1]));
        }
        out
    }

    /// `max |H - α⟨N,e3⟩/z|` over [`Self::interior_samples`].
    pub fn max_interior_residual(&self) -> Result<f64> {
        let surf = self.surface();
        let params = self.params();
        self.interior_samples()
            .into_iter()
            .try_fold(0.0f64, |m, s| Ok(m.max(residual(&surf, &params, s, 0.0)?.abs())))
    }

    pub fn states(&self) -> Vec<ProfileState> {
        match self.profile.kind() {
            ProfileKind::Integrated(c) => c.node_states().collect(),
            _ => unreachable!("rotational profiles are integrated"),
        }
    }
}

/// Shoots the rotational singular-minimal ODE with fixed-step RK4.
pub fn integrate_rotational_profile(
    alpha: f64,
    initial: RotationalOdeState,
    step: f64,
    n_steps: usize,
) -> Result<RotationalProfile> {
    if !alpha.is_finite() || alpha == 0.0 {
        return Err(Error::invalid(format!(
            "alpha must be finite and non-zero, got {alpha}"
        )));
    }
    if !(initial.x > AXIS_FLOOR && initial.z > AXIS_FLOOR) {
        return Err(Error::invalid(format!(
            "rotational shooting needs x > 0 and z > 0 initially, got x = {}, z = {}",
            initial.x, initial.z
        )));
    }
    let run = Profile::integrate_until(
        StartPoint {
            s: initial.s,
            x: initial.x,
            z: initial.z,
            theta: initial.theta,
        },
        step,
        n_steps,
        |_, x, z, th| rotational_curvature(alpha, x, z, th),
        |x, z, _| x <= AXIS_FLOOR || z <= AXIS_FLOOR,
    )?;
    Ok(RotationalProfile {
        profile: run.profile,
        alpha,
        truncated: run.truncated,
        steps_taken: run.steps_taken,
        requested_steps: n_steps,
    })
}

/// Inclusive sample range `start..=end` with `count` points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridRange {
    pub start: f64,
    pub end: f64,
    pub count: usize,
}

impl GridRange {
    pub fn new(start: f64, end: f64, count: usize) -> Self {
        Self { start, end, count }
    }

    pub fn values(&self) -> Vec<f64> {
        linspace(self.start, self.end, self.count)
    }

    fn validate(&self, name: &str) -> Result<()> {
        if self.count < 2 || !(self.start.is_finite() && self.end.is_finite()) || self.start == self.end {
            return Err(Error::invalid(format!(
                "{name} range needs count >= 2 and distinct finite endpoints, got {self:?}"
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeshSpec {
    pub s: GridRange,
    pub t: GridRange,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct TriangleMesh {
    pub vertices: Vec<Vec3>,
    pub triangles: Vec<[usize; 3]>,
}

impl TriangleMesh {
    pub fn triangle_normal(&self, tri: [usize; 3]) -> Vec3 {
        let [a, b, c] = tri.map(|i| self.vertices[i]);
        (b - a).cross(c - a)
    }
}

/// Samples `Ψ` on the `(s, t)` grid and splits every cell into two
/// triangles whose normals point along the closed-form unit normal.
pub fn build_mesh(surface: &HelicoidalSurface, spec: &MeshSpec) -> Result<TriangleMesh> {
    spec.s.validate("s")?;
    spec.t.validate("t")?;
    let (ss, ts) = (spec.s.values(), spec.t.values());
    let nt = ts.len();
    let mut vertices = Vec::with_capacity(ss.len() * nt);
    for &s in &ss {
        surface.regular_state(s)?;
        for &t in &ts {
            let p = parametrize(surface, s, t)?;
            if !p.is_finite() {
                return Err(Error::invalid(format!("non-finite vertex at (s, t) = ({s}, {t})")));
            }
            vertices.push(p);
        }
    }
    // (b - a) × (c - a) ≈ ds dt Ψ_s × Ψ_t for a=(i,j), b=(i+1,j), c=(i+1,j+1).
    let forward = (spec.s.end - spec.s.start) * (spec.t.end - spec.t.start) > 0.0;
    let idx = |i: usize, j: usize| i * nt + j;
    let mut triangles = Vec::with_capacity(2 * (ss.len() - 1) * (nt - 1));
    for i in 0..ss.len() - 1 {
        for j in 0..nt - 1 {
            let (a, b, c, d) = (idx(i, j), idx(i + 1, j), idx(i + 1, j + 1), idx(i, j + 1));
            if forward {
                triangles.push([a, b, c]);
                triangles.push([a, c, d]);
            } else {
                triangles.push([a, c, b]);
                triangles.push([a, d, c]);
            }
        }
    }
    Ok(TriangleMesh { vertices, triangles })
}

/// Dot products of each triangle normal with the closed-form normal at the
/// centre of its grid cell; all positive for meshes from [`build_mesh`].
pub fn winding_alignment(surface: &HelicoidalSurface, spec: &MeshSpec, mesh: &TriangleMesh) -> Result<Vec<f64>> {
    let (ss, ts) = (spec.s.values(), spec.t.values());
    let mut out = Vec::with_capacity(mesh.triangles.len());
    let mut tri = mesh.triangles.iter();
    for i in 0..ss.len() - 1 {
        for j in 0..ts.len() - 1 {
            let (sc, tc) = (0.5 * (ss[i] + ss[i + 1]), 0.5 * (ts[j] + ts[j + 1]));
            let n = normal_theta(&surface.state(sc)?, surface.pitch(), tc)?;
            for _ in 0..2 {
                let t = tri.next().ok_or_else(|| Error::invalid("mesh does not match spec"))?;
                out.push(n.dot(mesh.triangle_normal(*t)));
            }
        }
    }
    Ok(out)
}

/// Wavefront OBJ: `v` lines with 17 significant digits, then 1-based `f`
/// lines. No normals or texture coordinates.
pub fn write_obj<W: Write>(mesh: &TriangleMesh, mut w: W) -> Result<()> {
    for v in &mesh.vertices {
        writeln!(w, "v {} {} {}", g17(v.x), g17(v.y), g17(v.z))?;
    }
    for [a, b, c] in &mesh.triangles {
        writeln!(w, "f {} {} {}", a + 1, b + 1, c + 1)?;
    }
    w.flush()?;
    Ok(())
}

pub fn export_obj(mesh: &TriangleMesh, path: impl AsRef<Path>) -> Result<()> {
    let file = File::create(path)?;
    write_obj(mesh, BufWriter::new(file))
}

/// CSV dump `s,x,z,theta`, one row per state.
pub fn write_profile_csv<W, I>(states: I, mut w: W) -> Result<()>
where
    W: Write,
    I: IntoIterator<Item = ProfileState>,
{
    writeln!(w, "s,x,z,theta")?;
    for st in states {
        writeln!(w, "{}", csv_row(&[st.s(), st.x(), st.z(), st.theta()]))?;
    }
    w.flush()?;
    Ok(())
}
