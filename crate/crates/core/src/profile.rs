//! Generating curves `γ(s) = (x(s), 0, z(s))` parametrized by arc length.
//!
//! Every profile is described by its turning angle `θ(s)`, with
//! `x' = cos θ`, `z' = sin θ` and curvature `θ'`. Closed-form variants cover
//! vertical lines (which sweep circular cylinders) and straight lines;
//! everything else is integrated with fixed-step RK4 and evaluated between
//! nodes by cubic Hermite interpolation.

use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::ops::{Add, Div, Mul, Sub};

use serde::{Deserialize, Serialize};
use twofloat::TwoFloat;

use crate::error::{Error, Result};

/// Arithmetic needed to evaluate profile positions in more than one precision.
pub trait Scalar:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Div<Output = Self> + From<f64>
{
    /// Nearest `f64`.
    fn approx(self) -> f64;
}

impl Scalar for f64 {
    fn approx(self) -> f64 {
        self
    }
}

impl Scalar for TwoFloat {
    fn approx(self) -> f64 {
        self.hi() + self.lo()
    }
}

/// Orientation of a vertical profile line: `z(s) = ±s + z0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

impl std::str::FromStr for Sign {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "+" | "plus" | "1" | "+1" => Ok(Sign::Plus),
            "-" | "minus" | "-1" => Ok(Sign::Minus),
            other => Err(Error::invalid(format!("sign must be + or -, got {other:?}"))),
        }
    }
}

/// One arc-length sample of a profile.
///
/// The unit tangent `(cos θ, sin θ)` is stored alongside `θ` so that
/// vertical lines carry an exactly zero `cos θ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileState {
    s: f64,
    x: f64,
    z: f64,
    theta: f64,
    theta_prime: f64,
    cos_theta: f64,
    sin_theta: f64,
}

impl ProfileState {
    pub fn new(s: f64, x: f64, z: f64, theta: f64, theta_prime: f64) -> Self {
        let (sin_theta, cos_theta) = theta.sin_cos();
        Self {
            s,
            x,
            z,
            theta,
            theta_prime,
            cos_theta,
            sin_theta,
        }
    }

    /// State on a vertical line `x = x0`, `θ = ±π/2`, with the tangent
    /// `(0, ±1)` represented exactly.
    pub fn vertical(s: f64, x0: f64, z: f64, sign: Sign) -> Self {
        Self {
            s,
            x: x0,
            z,
            theta: sign.value() * FRAC_PI_2,
            theta_prime: 0.0,
            cos_theta: 0.0,
            sin_theta: sign.value(),
        }
    }

    pub fn s(&self) -> f64 {
        self.s
    }
    pub fn x(&self) -> f64 {
        self.x
    }
    pub fn z(&self) -> f64 {
        self.z
    }
    pub fn theta(&self) -> f64 {
        self.theta
    }
    pub fn theta_prime(&self) -> f64 {
        self.theta_prime
    }
    pub fn cos_theta(&self) -> f64 {
        self.cos_theta
    }
    pub fn sin_theta(&self) -> f64 {
        self.sin_theta
    }

    /// `x' = cos θ`
    pub fn x_prime(&self) -> f64 {
        self.cos_theta
    }
    /// `z' = sin θ`
    pub fn z_prime(&self) -> f64 {
        self.sin_theta
    }
    /// `x'' = -θ' sin θ`
    pub fn x_second(&self) -> f64 {
        -self.theta_prime * self.sin_theta
    }
    /// `z'' = θ' cos θ`
    pub fn z_second(&self) -> f64 {
        self.theta_prime * self.cos_theta
    }
}

/// Initial point of an integrated profile.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StartPoint {
    pub s: f64,
    pub x: f64,
    pub z: f64,
    pub theta: f64,
}

/// A run of constant curvature used by [`Profile::piecewise_curvature`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvatureSegment {
    pub length: f64,
    pub curvature: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Node {
    s: f64,
    x: f64,
    z: f64,
    theta: f64,
    theta_prime: f64,
}

/// RK4 nodes, split into pieces across which the curvature may jump.
#[derive(Debug, Clone, PartialEq)]
pub struct IntegratedCurve {
    pieces: Vec<Vec<Node>>,
    step: f64,
}

impl IntegratedCurve {
    /// Nominal RK4 step.
    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn node_count(&self) -> usize {
        self.pieces.iter().map(Vec::len).sum()
    }

    fn first(&self) -> &Node {
        &self.pieces[0][0]
    }

    fn last(&self) -> &Node {
        let p = self.pieces.last().expect("non-empty");
        p.last().expect("non-empty piece")
    }

    /// Node states in order; junction nodes between pieces appear once per
    /// piece.
    pub fn node_states(&self) -> impl Iterator<Item = ProfileState> + '_ {
        self.pieces
            .iter()
            .flatten()
            .map(|n| ProfileState::new(n.s, n.x, n.z, n.theta, n.theta_prime))
    }

    fn locate(&self, s: f64) -> (&[Node], usize) {
        let piece = self
            .pieces
            .iter()
            .find(|p| s <= p.last().expect("non-empty piece").s)
            .unwrap_or_else(|| self.pieces.last().expect("non-empty"));
        if piece.len() == 1 {
            return (piece, 0);
        }
        // Interval [i, i+1] with nodes[i].s <= s.
        let i = piece.partition_point(|n| n.s <= s).saturating_sub(1);
        (piece, i.min(piece.len() - 2))
    }

    fn state(&self, s: f64) -> ProfileState {
        let (nodes, i) = self.locate(s);
        let a = &nodes[i];
        if nodes.len() == 1 || s == a.s {
            return ProfileState::new(a.s, a.x, a.z, a.theta, a.theta_prime);
        }
        let b = &nodes[i + 1];
        let d = b.s - a.s;
        let u = (s - a.s) / d;
        let w = hermite_weights(u);
        let dw = hermite_slopes(u);
        let (sa, ca) = a.theta.sin_cos();
        let (sb, cb) = b.theta.sin_cos();
        let x = w[0] * a.x + w[1] * d * ca + w[2] * b.x + w[3] * d * cb;
        let z = w[0] * a.z + w[1] * d * sa + w[2] * b.z + w[3] * d * sb;
        let theta = w[0] * a.theta + w[1] * d * a.theta_prime + w[2] * b.theta + w[3] * d * b.theta_prime;
        // dw[0] = -dw[2]
        let theta_prime = dw[2] * (b.theta - a.theta) / d + dw[1] * a.theta_prime + dw[3] * b.theta_prime;
        ProfileState::new(s, x, z, theta, theta_prime)
    }

    fn position<T: Scalar>(&self, s: T) -> (T, T) {
        let (nodes, i) = self.locate(s.approx());
        let a = &nodes[i];
        if nodes.len() == 1 {
            return (T::from(a.x), T::from(a.z));
        }
        let b = &nodes[i + 1];
        let d = T::from(b.s - a.s);
        let u = (s - T::from(a.s)) / d;
        let one = T::from(1.0);
        let two = T::from(2.0);
        let three = T::from(3.0);
        let u2 = u * u;
        let u3 = u2 * u;
        let h00 = two * u3 - three * u2 + one;
        let h10 = u3 - two * u2 + u;
        let h01 = three * u2 - two * u3;
        let h11 = u3 - u2;
        let (sa, ca) = a.theta.sin_cos();
        let (sb, cb) = b.theta.sin_cos();
        let x = h00 * T::from(a.x) + h10 * d * T::from(ca) + h01 * T::from(b.x) + h11 * d * T::from(cb);
        let z = h00 * T::from(a.z) + h10 * d * T::from(sa) + h01 * T::from(b.z) + h11 * d * T::from(sb);
        (x, z)
    }
}

fn hermite_weights(u: f64) -> [f64; 4] {
    let u2 = u * u;
    let u3 = u2 * u;
    [
        2.0 * u3 - 3.0 * u2 + 1.0,
        u3 - 2.0 * u2 + u,
        -2.0 * u3 + 3.0 * u2,
        u3 - u2,
    ]
}

fn hermite_slopes(u: f64) -> [f64; 4] {
    let u2 = u * u;
    [
        6.0 * u2 - 6.0 * u,
        3.0 * u2 - 4.0 * u + 1.0,
        -6.0 * u2 + 6.0 * u,
        3.0 * u2 - 2.0 * u,
    ]
}

#[derive(Debug, Clone, PartialEq)]
pub enum ProfileKind {
    /// `x = x0`, `z = sign·s + z0`, `θ = sign·π/2`.
    Cylinder {
        x0: f64,
        z0: f64,
        sign: Sign,
    },
    /// `x = x0 + s cos θ0`, `z = z0 + s sin θ0`.
    Line {
        theta0: f64,
        x0: f64,
        z0: f64,
    },
    Integrated(IntegratedCurve),
}

/// Result of an integration that may stop before the requested length.
#[derive(Debug, Clone)]
pub struct Integration {
    pub profile: Profile,
    pub truncated: bool,
    pub steps_taken: usize,
}

/// A generating curve over the closed interval `[start, end]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Profile {
    start: f64,
    end: f64,
    kind: ProfileKind,
}

impl Profile {
    pub fn cylinder(x0: f64, z0: f64, sign: Sign, domain: (f64, f64)) -> Result<Self> {
        if !x0.is_finite() || x0 == 0.0 || !z0.is_finite() {
            return Err(Error::invalid(format!(
                "cylinder needs finite x0 != 0, z0 (got {x0}, {z0})"
            )));
        }
        Self::with_domain(domain, ProfileKind::Cylinder { x0, z0, sign })
    }

    pub fn line(theta0: f64, x0: f64, z0: f64, domain: (f64, f64)) -> Result<Self> {
        if !(theta0.is_finite() && x0.is_finite() && z0.is_finite()) {
            return Err(Error::invalid("line parameters must be finite"));
        }
        Self::with_domain(domain, ProfileKind::Line { theta0, x0, z0 })
    }

    fn with_domain(domain: (f64, f64), kind: ProfileKind) -> Result<Self> {
        let (start, end) = domain;
        if !(start.is_finite() && end.is_finite()) || start > end {
            return Err(Error::invalid(format!("bad profile domain [{start}, {end}]")));
        }
        Ok(Self { start, end, kind })
    }

    /// Integrates `(x, z, θ)' = (cos θ, sin θ, κ(s, x, z, θ))` for `n_steps`
    /// fixed RK4 steps.
    pub fn integrate<F>(start: StartPoint, step: f64, n_steps: usize, law: F) -> Result<Self>
    where
        F: Fn(f64, f64, f64, f64) -> f64,
    {
        Ok(Self::integrate_until(start, step, n_steps, law, |_, _, _| false)?.profile)
    }

    /// Like [`Profile::integrate`], but halts before the first node whose
    /// state is non-finite or satisfies `stop(x, z, θ)`.
    pub fn integrate_until<F, S>(start: StartPoint, step: f64, n_steps: usize, law: F, stop: S) -> Result<Integration>
    where
        F: Fn(f64, f64, f64, f64) -> f64,
        S: Fn(f64, f64, f64) -> bool,
    {
        check_start(&start, step)?;
        let (nodes, truncated) = rk4_nodes(start, step, n_steps, &law, &stop);
        let steps_taken = nodes.len() - 1;
        let curve = IntegratedCurve {
            pieces: vec![nodes],
            step,
        };
        Ok(Integration {
            profile: Self::from_curve(curve),
            truncated,
            steps_taken,
        })
    }

    /// Concatenates runs of constant curvature. Each run is integrated
    /// separately with a step that divides its length exactly, so no RK4
    /// stage straddles a curvature jump.
    pub fn piecewise_curvature(start: StartPoint, segments: &[CurvatureSegment], step: f64) -> Result<Self> {
        check_start(&start, step)?;
        if segments.is_empty() {
            return Err(Error::invalid("piecewise profile needs at least one segment"));
        }
        let mut pieces = Vec::with_capacity(segments.len());
        let mut cursor = start;
        for seg in segments {
            if !(seg.length > 0.0 && seg.length.is_finite() && seg.curvature.is_finite()) {
                return Err(Error::invalid(format!("bad curvature segment {seg:?}")));
            }
            let n = (seg.length / step).ceil().max(1.0) as usize;
            let h = seg.length / n as f64;
            let k = seg.curvature;
            let (nodes, _) = rk4_nodes(cursor, h, n, &|_, _, _, _| k, &|_, _, _| false);
            let last = *nodes.last().expect("non-empty");
            cursor = StartPoint {
                s: cursor.s + seg.length,
                x: last.x,
                z: last.z,
                theta: last.theta,
            };
            pieces.push(nodes);
        }
        Ok(Self::from_curve(IntegratedCurve { pieces, step }))
    }

    fn from_curve(curve: IntegratedCurve) -> Self {
        Self {
            start: curve.first().s,
            end: curve.last().s,
            kind: ProfileKind::Integrated(curve),
        }
    }

    pub fn kind(&self) -> &ProfileKind {
        &self.kind
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.start, self.end)
    }

    pub fn contains(&self, s: f64) -> bool {
        s >= self.start && s <= self.end
    }

    fn check(&self, s: f64) -> Result<()> {
        if self.contains(s) {
            Ok(())
        } else {
            Err(Error::OutsideDomain {
                s,
                start: self.start,
                end: self.end,
            })
        }
    }

    pub fn state(&self, s: f64) -> Result<ProfileState> {
        self.check(s)?;
        Ok(match &self.kind {
            ProfileKind::Cylinder { x0, z0, sign } => ProfileState::vertical(s, *x0, sign.value() * s + z0, *sign),
            ProfileKind::Line { theta0, x0, z0 } => {
                let (st, ct) = theta0.sin_cos();
                ProfileState::new(s, x0 + s * ct, z0 + s * st, *theta0, 0.0)
            }
            ProfileKind::Integrated(curve) => curve.state(s),
        })
    }

    /// `(x(s), z(s))` evaluated in the precision of `T`.
    pub fn position<T: Scalar>(&self, s: T) -> Result<(T, T)> {
        self.check(s.approx())?;
        Ok(match &self.kind {
            ProfileKind::Cylinder { x0, z0, sign } => (T::from(*x0), T::from(sign.value()) * s + T::from(*z0)),
            ProfileKind::Line { theta0, x0, z0 } => {
                let (st, ct) = theta0.sin_cos();
                (T::from(*x0) + s * T::from(ct), T::from(*z0) + s * T::from(st))
            }
            ProfileKind::Integrated(curve) => curve.position(s),
        })
    }

    /// `count` evenly spaced parameters covering the domain, endpoints
    /// included.
    pub fn sample_parameters(&self, count: usize) -> Vec<f64> {
        linspace(self.start, self.end, count)
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ProfileKind::Cylinder { x0, z0, sign } => write!(f, "cylinder:x0={x0},z0={z0},sign={sign}")?,
            ProfileKind::Line { theta0, x0, z0 } => write!(f, "line:theta0={theta0},x0={x0},z0={z0}")?,
            ProfileKind::Integrated(c) => write!(f, "integrated:nodes={},step={}", c.node_count(), c.step)?,
        }
        write!(f, ",smin={},smax={}", self.start, self.end)
    }
}

/// `count` evenly spaced values from `a` to `b` inclusive; a single value
/// yields `[a]`.
pub fn linspace(a: f64, b: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![a],
        n => (0..n)
            .map(|i| {
                if i == n - 1 {
                    b
                } else {
                    a + (b - a) * (i as f64) / ((n - 1) as f64)
                }
            })
            .collect(),
    }
}

fn check_start(start: &StartPoint, step: f64) -> Result<()> {
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::invalid(format!("integration step must be positive, got {step}")));
    }
    if !(start.s.is_finite() && start.x.is_finite() && start.z.is_finite() && start.theta.is_finite()) {
        return Err(Error::invalid(format!("non-finite start point {start:?}")));
    }
    Ok(())
}

fn rk4_nodes<F, S>(start: StartPoint, step: f64, n_steps: usize, law: &F, stop: &S) -> (Vec<Node>, bool)
where
    F: Fn(f64, f64, f64, f64) -> f64,
    S: Fn(f64, f64, f64) -> bool,
{
    let rhs = |s: f64, y: [f64; 3]| -> [f64; 3] {
        let (sin, cos) = y[2].sin_cos();
        [cos, sin, law(s, y[0], y[1], y[2])]
    };
    let node = |s: f64, y: [f64; 3]| Node {
        s,
        x: y[0],
        z: y[1],
        theta: y[2],
        theta_prime: law(s, y[0], y[1], y[2]),
    };

    let mut y = [start.x, start.z, start.theta];
    let mut nodes = Vec::with_capacity(n_steps + 1);
    nodes.push(node(start.s, y));
    for i in 0..n_steps {
        let s = start.s + step * i as f64;
        let k1 = rhs(s, y);
        let k2 = rhs(s + 0.5 * step, axpy(y, 0.5 * step, k1));
        let k3 = rhs(s + 0.5 * step, axpy(y, 0.5 * step, k2));
        let k4 = rhs(s + step, axpy(y, step, k3));
        let next: [f64; 3] = std::array::from_fn(|j| y[j] + step / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]));
        let s_next = start.s + step * (i + 1) as f64;
        let n = node(s_next, next);
        let finite = [n.x, n.z, n.theta, n.theta_prime].iter().all(|v| v.is_finite());
        if !finite || stop(n.x, n.z, n.theta) {
            return (nodes, true);
        }
        nodes.push(n);
        y = next;
    }
    (nodes, false)
}

fn axpy(y: [f64; 3], a: f64, k: [f64; 3]) -> [f64; 3] {
    std::array::from_fn(|j| y[j] + a * k[j])
}
