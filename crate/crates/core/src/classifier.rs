//! Certification of the closed-form cases and a falsification grid search.
//!
//! With `h ≠ 0` a helicoidal surface is singular minimal only when every
//! coefficient `A0..A3` vanishes along the profile. [`certify_cylinder`]
//! evaluates the vertical-line quadruple, [`check_prop1`] covers the case
//! `v = e3`, and [`falsification_search`] scans a family of piecewise
//! constant-curvature profiles for configurations with small cleared
//! residual. The search is sampled evidence, not a proof.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::regularity_of;
use crate::profile::{linspace, CurvatureSegment, Profile, ProfileState, Sign, StartPoint};
use crate::residual::{cleared_residual, coefficients_vertical, CoefficientQuadruple, SmsParams};
use crate::tol::{EPS_REG, RK4_STEP, TOL_ZERO};
use crate::vec3::UnitVec3;

/// Below this `|x|` or `|cos θ|` a profile sample counts as on the axis or
/// vertical.
const STRUCTURAL_ZERO: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    SingularMinimal,
    NotSingularMinimal,
    Degenerate,
}

/// Which branch of the `v = e3` argument a profile falls in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Prop1Case {
    /// `x ≡ 0`: the immersion is singular.
    AxisLine,
    /// `cos θ ≡ 0`: a vertical line, sweeping a circular cylinder.
    Cylinder,
    Generic,
}

/// A sample `(s, t)` and the cleared residual there.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub s: f64,
    pub t: f64,
    #[serde(rename = "F")]
    pub f: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoefficientWitness {
    pub s: f64,
    pub coefficients: CoefficientQuadruple,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificationReport {
    pub case: String,
    /// `max |A_i|` over the sampled states.
    pub coefficient_magnitudes: [f64; 4],
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sub_case: Option<Prop1Case>,
    /// Sample where `|F|` is largest.
    pub witnesses: Vec<Witness>,
    /// State where the largest coefficient magnitude occurs.
    pub coefficient_witness: Option<CoefficientWitness>,
    pub tol_zero: f64,
}

/// Parameters along a vertical line used by [`certify_cylinder`].
pub fn cylinder_s_samples() -> Vec<f64> {
    linspace(-2.0, 2.0, 9)
}

/// Orbit parameters used to pick residual witnesses.
pub fn witness_t_samples() -> Vec<f64> {
    linspace(-PI, PI, 17)
}

/// `A0..A3` on the vertical line `x = x0`, `z = sign·s + z0`:
/// `sign · (x0² z v3, x0² h v3, x0³ v2 (1+α), x0³ v1 (1+α))`.
pub fn cylinder_coefficients(x0: f64, z: f64, sign: Sign, h: f64, alpha: f64, v: UnitVec3) -> CoefficientQuadruple {
    let x2 = x0 * x0;
    let x3 = x2 * x0;
    CoefficientQuadruple {
        a0: x2 * z * v.z(),
        a1: x2 * h * v.z(),
        a2: x3 * v.y() * (1.0 + alpha),
        a3: x3 * v.x() * (1.0 + alpha),
    }
    .scale(sign.value())
}

fn max_witness<I>(samples: I) -> Option<Witness>
where
    I: IntoIterator<Item = Witness>,
{
    samples.into_iter().fold(None, |best: Option<Witness>, w| match best {
        Some(b) if b.f.abs() >= w.f.abs() => Some(b),
        _ => Some(w),
    })
}

/// Certifies the cylinder of radius `|x0|` swept by a vertical line.
/// `SingularMinimal` iff `v3 = 0` and `α = -1` (within `tol_zero`).
pub fn certify_cylinder(x0: f64, z0: f64, sign: Sign, h: f64, alpha: f64, v: UnitVec3) -> CertificationReport {
    certify_cylinder_with(x0, z0, sign, h, alpha, v, TOL_ZERO)
}

pub fn certify_cylinder_with(
    x0: f64,
    z0: f64,
    sign: Sign,
    h: f64,
    alpha: f64,
    v: UnitVec3,
    tol_zero: f64,
) -> CertificationReport {
    let case = format!(
        "cylinder x0={x0} z0={z0} sign={sign} h={h} alpha={alpha} v=({}, {}, {})",
        v.x(),
        v.y(),
        v.z()
    );
    let mut mags = [0.0f64; 4];
    let mut coeff_witness: Option<CoefficientWitness> = None;
    let mut samples = Vec::new();
    for s in cylinder_s_samples() {
        let q = cylinder_coefficients(x0, sign.value() * s + z0, sign, h, alpha, v);
        for (m, a) in mags.iter_mut().zip(q.to_array()) {
            *m = m.max(a.abs());
        }
        if coeff_witness.is_none_or(|w| q.max_abs() > w.coefficients.max_abs()) {
            coeff_witness = Some(CoefficientWitness { s, coefficients: q });
        }
        samples.extend(
            witness_t_samples()
                .into_iter()
                .map(|t| Witness { s, t, f: q.evaluate(t) }),
        );
    }
    let verdict = if x0 == 0.0 || !x0.is_finite() {
        Verdict::Degenerate
    } else if mags.iter().all(|m| *m < tol_zero) {
        Verdict::SingularMinimal
    } else {
        Verdict::NotSingularMinimal
    };
    CertificationReport {
        case,
        coefficient_magnitudes: mags,
        verdict,
        sub_case: None,
        witnesses: max_witness(samples).into_iter().collect(),
        coefficient_witness: coeff_witness,
        tol_zero,
    }
}

/// Number of profile samples examined by [`check_prop1`].
pub const PROP1_SAMPLES: usize = 33;

/// Examines `(A0, A1)` along a profile for `v = (0, 0, 1)` and `h ≠ 0`.
pub fn check_prop1(profile: &Profile, h: f64, alpha: f64) -> Result<CertificationReport> {
    check_prop1_with(profile, h, alpha, TOL_ZERO)
}

pub fn check_prop1_with(profile: &Profile, h: f64, alpha: f64, tol_zero: f64) -> Result<CertificationReport> {
    if h == 0.0 || !h.is_finite() {
        return Err(Error::invalid(format!(
            "check_prop1 needs a finite pitch h != 0, got {h}"
        )));
    }
    let params = SmsParams::new(alpha, UnitVec3::E3)?;
    let states: Vec<ProfileState> = profile
        .sample_parameters(PROP1_SAMPLES)
        .into_iter()
        .map(|s| profile.state(s))
        .collect::<Result<_>>()?;

    let sub_case = if states.iter().all(|st| st.x().abs() <= STRUCTURAL_ZERO) {
        Prop1Case::AxisLine
    } else if states.iter().all(|st| st.cos_theta().abs() <= STRUCTURAL_ZERO) {
        Prop1Case::Cylinder
    } else {
        Prop1Case::Generic
    };

    let mut mags = [0.0f64; 4];
    let mut coeff_witness: Option<CoefficientWitness> = None;
    let mut samples = Vec::new();
    let mut singular = false;
    for st in &states {
        singular |= !(regularity_of(st, h) > EPS_REG);
        let (a0, a1) = coefficients_vertical(st, h, alpha);
        mags[0] = mags[0].max(a0.abs());
        mags[1] = mags[1].max(a1.abs());
        let q = CoefficientQuadruple {
            a0,
            a1,
            a2: 0.0,
            a3: 0.0,
        };
        if coeff_witness.is_none_or(|w| q.max_abs() > w.coefficients.max_abs()) {
            coeff_witness = Some(CoefficientWitness {
                s: st.s(),
                coefficients: q,
            });
        }
        samples.extend(witness_t_samples().into_iter().map(|t| Witness {
            s: st.s(),
            t,
            f: cleared_residual(st, h, &params, t),
        }));
    }
    let verdict = if singular || sub_case == Prop1Case::AxisLine {
        Verdict::Degenerate
    } else if mags.iter().all(|m| *m < tol_zero) {
        Verdict::SingularMinimal
    } else {
        Verdict::NotSingularMinimal
    };
    Ok(CertificationReport {
        case: format!("prop1 profile={profile} h={h} alpha={alpha}"),
        coefficient_magnitudes: mags,
        verdict,
        sub_case: Some(sub_case),
        witnesses: max_witness(samples).into_iter().collect(),
        coefficient_witness: coeff_witness,
        tol_zero,
    })
}

/// Start point and per-segment curvatures of a search-family profile.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyMember {
    pub x0: f64,
    pub z0: f64,
    pub theta0: f64,
    pub curvatures: Vec<f64>,
}

impl FamilyMember {
    /// Vertical straight line, sweeping a cylinder about the axis.
    pub fn is_cylinder(&self) -> bool {
        self.curvatures.iter().all(|k| *k == 0.0) && self.theta0.cos().abs() <= STRUCTURAL_ZERO
    }

    /// Inline descriptor understood by the command-line front end.
    pub fn descriptor(&self, segment_length: f64) -> String {
        let ks: Vec<String> = self.curvatures.iter().map(|k| k.to_string()).collect();
        format!(
            "pcc:x0={},z0={},theta0={},k={},len={}",
            self.x0,
            self.z0,
            self.theta0,
            ks.join(";"),
            segment_length
        )
    }

    /// Closed forms for straight members, RK4 otherwise; domain
    /// `[0, k · segment_length]`.
    pub fn build(&self, segment_length: f64, step: f64) -> Result<Profile> {
        let total = segment_length * self.curvatures.len() as f64;
        if self.curvatures.iter().all(|k| *k == 0.0) {
            if self.is_cylinder() {
                let sign = if self.theta0.sin() > 0.0 {
                    Sign::Plus
                } else {
                    Sign::Minus
                };
                return Profile::cylinder(self.x0, self.z0, sign, (0.0, total));
            }
            return Profile::line(self.theta0, self.x0, self.z0, (0.0, total));
        }
        let segments: Vec<CurvatureSegment> = self
            .curvatures
            .iter()
            .map(|&curvature| CurvatureSegment {
                length: segment_length,
                curvature,
            })
            .collect();
        Profile::piecewise_curvature(
            StartPoint {
                s: 0.0,
                x: self.x0,
                z: self.z0,
                theta: self.theta0,
            },
            &segments,
            step,
        )
    }
}

/// The 26 directions `(i, j, k)/|(i, j, k)|` with `i, j, k ∈ {-1, 0, 1}`
/// not all zero, in lexicographic order.
pub fn sphere_directions_26() -> Vec<UnitVec3> {
    let mut out = Vec::with_capacity(26);
    for i in -1..=1 {
        for j in -1..=1 {
            for k in -1..=1 {
                if (i, j, k) != (0, 0, 0) {
                    let v = crate::vec3::Vec3::new(i as f64, j as f64, k as f64);
                    out.push(UnitVec3::normalize(v).expect("non-zero"));
                }
            }
        }
    }
    out
}

/// Search space: profile family × pitches × α values × directions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchGrid {
    /// Number of constant-curvature segments per profile.
    pub segments: usize,
    pub segment_length: f64,
    pub curvature_values: Vec<f64>,
    pub x0_values: Vec<f64>,
    pub z0_values: Vec<f64>,
    pub theta0_values: Vec<f64>,
    pub pitches: Vec<f64>,
    pub alphas: Vec<f64>,
    pub directions: Vec<UnitVec3>,
    /// Evenly spaced profile samples, endpoints included.
    pub s_samples: usize,
    pub t_samples: Vec<f64>,
    pub step: f64,
    pub tol_zero: f64,
}

impl Default for SearchGrid {
    /// Three segments of length 0.5 with curvature in `{-1, 0, 1}`,
    /// `h ∈ {0.5, 1}`, `α ∈ {-2, -1, 1}` and the 26-point direction grid.
    fn default() -> Self {
        Self {
            segments: 3,
            segment_length: 0.5,
            curvature_values: vec![-1.0, 0.0, 1.0],
            x0_values: vec![0.75, 1.5],
            z0_values: vec![0.5],
            theta0_values: vec![-FRAC_PI_2, 0.0, FRAC_PI_4, FRAC_PI_2],
            pitches: vec![0.5, 1.0],
            alphas: vec![-2.0, -1.0, 1.0],
            directions: sphere_directions_26(),
            s_samples: 7,
            t_samples: linspace(-PI, PI, 9),
            step: RK4_STEP,
            tol_zero: TOL_ZERO,
        }
    }
}

impl SearchGrid {
    /// Profile family in lexicographic order of `(x0, z0, θ0, κ_1, …, κ_k)`.
    pub fn members(&self) -> Vec<FamilyMember> {
        let mut tuples: Vec<Vec<f64>> = vec![Vec::new()];
        for _ in 0..self.segments {
            tuples = tuples
                .into_iter()
                .flat_map(|prefix| {
                    self.curvature_values.iter().map(move |k| {
                        let mut t = prefix.clone();
                        t.push(*k);
                        t
                    })
                })
                .collect();
        }
        let mut out = Vec::new();
        for &x0 in &self.x0_values {
            for &z0 in &self.z0_values {
                for &theta0 in &self.theta0_values {
                    for ks in &tuples {
                        out.push(FamilyMember {
                            x0,
                            z0,
                            theta0,
                            curvatures: ks.clone(),
                        });
                    }
                }
            }
        }
        out
    }

    /// `(h, α, v)` cells in lexicographic grid order.
    pub fn cells(&self) -> Vec<Cell> {
        let mut out = Vec::new();
        for &h in &self.pitches {
            for &alpha in &self.alphas {
                for &v in &self.directions {
                    out.push(Cell {
                        h,
                        alpha,
                        v,
                        certified: alpha == -1.0 && v.z().abs() <= STRUCTURAL_ZERO,
                    });
                }
            }
        }
        out
    }
}

/// One `(h, α, v)` configuration. `certified` marks `α = -1, v3 = 0`, where
/// the cylinder is expected to reach zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Cell {
    pub h: f64,
    pub alpha: f64,
    pub v: UnitVec3,
    pub certified: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecordConfig {
    pub h: f64,
    pub alpha: f64,
    pub v: UnitVec3,
    pub certified: bool,
    pub profile_index: usize,
    pub profile: String,
}

/// Best profile for one cell: `score = min over profiles of max over
/// sampled (s, t) of |F|`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchRecord {
    pub config: RecordConfig,
    pub score: f64,
    pub witness: Witness,
    /// Lowest score among profiles that are not vertical lines.
    pub best_non_cylinder: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SkippedProfile {
    pub profile_index: usize,
    pub profile: String,
    pub h: f64,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchOutcome {
    /// Ascending by score; ties keep grid order.
    pub records: Vec<SearchRecord>,
    pub skipped: Vec<SkippedProfile>,
    pub profiles: usize,
    pub cells: usize,
    pub tol_zero: f64,
    /// Smallest score among cells that are not certified.
    pub min_non_certified: Option<f64>,
    /// Largest score among certified cells.
    pub max_certified: Option<f64>,
    /// Certified cells below `tol_zero` and every other cell at or above
    /// `10 · tol_zero`.
    pub consistent: bool,
}

struct Sampled {
    index: usize,
    cylinder: bool,
    states: Vec<ProfileState>,
}

fn sample_member(
    grid: &SearchGrid,
    index: usize,
    member: &FamilyMember,
    h: f64,
) -> std::result::Result<Sampled, String> {
    let profile = member
        .build(grid.segment_length, grid.step)
        .map_err(|e| e.to_string())?;
    let mut states = Vec::with_capacity(grid.s_samples);
    for s in profile.sample_parameters(grid.s_samples) {
        let st = profile.state(s).map_err(|e| e.to_string())?;
        let reg = regularity_of(&st, h);
        if !(reg > EPS_REG)
            || ![st.x(), st.z(), st.theta(), st.theta_prime()]
                .iter()
                .all(|v| v.is_finite())
        {
            return Err(format!("regularity {reg:e} at s = {s}"));
        }
        states.push(st);
    }
    Ok(Sampled {
        index,
        cylinder: member.is_cylinder(),
        states,
    })
}

fn score(sampled: &Sampled, h: f64, params: &SmsParams, ts: &[f64]) -> Witness {
    let mut best = Witness {
        s: f64::NAN,
        t: f64::NAN,
        f: 0.0,
    };
    for st in &sampled.states {
        for &t in ts {
            let f = cleared_residual(st, h, params, t);
            if f.abs() > best.f.abs() || best.s.is_nan() {
                best = Witness { s: st.s(), t, f };
            }
        }
    }
    best
}

/// Scores every `(h, α, v)` cell by its best profile and ranks the cells.
pub fn falsification_search(grid: &SearchGrid) -> Result<SearchOutcome> {
    let members = grid.members();
    let cells = grid.cells();
    if members.is_empty() || cells.is_empty() || grid.t_samples.is_empty() || grid.s_samples == 0 {
        return Err(Error::EmptyGrid);
    }
    if let Some(h) = grid.pitches.iter().find(|h| **h == 0.0 || !h.is_finite()) {
        return Err(Error::invalid(format!(
            "search pitches must be finite and non-zero, got {h}"
        )));
    }

    let mut skipped = Vec::new();
    let mut sampled_by_pitch = Vec::with_capacity(grid.pitches.len());
    for &h in &grid.pitches {
        let results: Vec<_> = members
            .par_iter()
            .enumerate()
            .map(|(i, m)| (i, sample_member(grid, i, m, h)))
            .collect();
        let mut ok = Vec::new();
        for (i, r) in results {
            match r {
                Ok(s) => ok.push(s),
                Err(reason) => skipped.push(SkippedProfile {
                    profile_index: i,
                    profile: members[i].descriptor(grid.segment_length),
                    h,
                    reason,
                }),
            }
        }
        sampled_by_pitch.push((h, ok));
    }
    if sampled_by_pitch.iter().all(|(_, ok)| ok.is_empty()) {
        return Err(Error::AllSkipped);
    }

    let records: Vec<Option<SearchRecord>> = cells
        .par_iter()
        .map(|cell| -> Result<Option<SearchRecord>> {
            let (_, sampled) = sampled_by_pitch
                .iter()
                .find(|(h, _)| *h == cell.h)
                .expect("cell pitch comes from the grid");
            let params = SmsParams::new(cell.alpha, cell.v)?;
            let mut best: Option<(f64, usize, Witness)> = None;
            let mut best_non_cyl: Option<f64> = None;
            for smp in sampled {
                let w = score(smp, cell.h, &params, &grid.t_samples);
                let sc = w.f.abs();
                if best.is_none_or(|(b, _, _)| sc < b) {
                    best = Some((sc, smp.index, w));
                }
                if !smp.cylinder && best_non_cyl.is_none_or(|b| sc < b) {
                    best_non_cyl = Some(sc);
                }
            }
            Ok(best.map(|(score, index, witness)| SearchRecord {
                config: RecordConfig {
                    h: cell.h,
                    alpha: cell.alpha,
                    v: cell.v,
                    certified: cell.certified,
                    profile_index: index,
                    profile: members[index].descriptor(grid.segment_length),
                },
                score,
                witness,
                best_non_cylinder: best_non_cyl,
            }))
        })
        .collect::<Result<_>>()?;

    let mut records: Vec<SearchRecord> = records.into_iter().flatten().collect();
    records.sort_by(|a, b| a.score.total_cmp(&b.score));

    let min_non_certified = records
        .iter()
        .filter(|r| !r.config.certified)
        .map(|r| r.score)
        .reduce(f64::min);
    let max_certified = records
        .iter()
        .filter(|r| r.config.certified)
        .map(|r| r.score)
        .reduce(f64::max);
    let consistent =
        min_non_certified.is_none_or(|m| m >= 10.0 * grid.tol_zero) && max_certified.is_none_or(|m| m < grid.tol_zero);

    Ok(SearchOutcome {
        records,
        skipped,
        profiles: members.len(),
        cells: cells.len(),
        tol_zero: grid.tol_zero,
        min_non_certified,
        max_certified,
        consistent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: f64, y: f64, z: f64) -> UnitVec3 {
        UnitVec3::new(x, y, z).unwrap()
    }

    #[test]
    fn cylinder_positive_case() {
        let r = certify_cylinder(1.0, 0.0, Sign::Plus, 2.0, -1.0, v(1.0, 0.0, 0.0));
        assert_eq!(r.verdict, Verdict::SingularMinimal);
        assert_eq!(r.coefficient_magnitudes, [0.0; 4]);
    }

    #[test]
    fn cylinder_vertical_direction_fails_on_a1() {
        let r = certify_cylinder(1.0, 0.0, Sign::Plus, 2.0, -1.0, v(0.0, 0.0, 1.0));
        assert_eq!(r.verdict, Verdict::NotSingularMinimal);
        assert_eq!(r.coefficient_magnitudes[1], 2.0);
    }

    #[test]
    fn cylinder_wrong_alpha_fails_on_a3() {
        let r = certify_cylinder(1.0, 0.0, Sign::Plus, 2.0, -2.0, v(1.0, 0.0, 0.0));
        assert_eq!(r.verdict, Verdict::NotSingularMinimal);
        assert_eq!(r.coefficient_magnitudes[3], 1.0);
        let w = r.coefficient_witness.unwrap();
        assert_eq!(w.coefficients.a3, -1.0);
    }

    #[test]
    fn prop1_cylinder_subcase() {
        let p = Profile::cylinder(1.5, 0.2, Sign::Plus, (0.0, 1.0)).unwrap();
        let r = check_prop1(&p, 1.0, 0.7).unwrap();
        assert_eq!(r.sub_case, Some(Prop1Case::Cylinder));
        assert_eq!(r.verdict, Verdict::NotSingularMinimal);
        let a1 = r.coefficient_witness.unwrap().coefficients.a1;
        assert!((a1 - 1.5 * 1.5 * 1.0).abs() < 1e-12);
    }

    #[test]
    fn prop1_helicoid() {
        let p = Profile::line(0.0, 1.0, 0.3, (0.0, 1.0)).unwrap();
        let r = check_prop1(&p, 1.0, 1.0).unwrap();
        assert_eq!(r.sub_case, Some(Prop1Case::Generic));
        assert_eq!(r.verdict, Verdict::NotSingularMinimal);
        assert_eq!(r.coefficient_magnitudes[1], 0.0);
    }

    #[test]
    fn prop1_rejects_zero_pitch() {
        let p = Profile::line(0.0, 1.0, 0.3, (0.0, 1.0)).unwrap();
        assert!(check_prop1(&p, 0.0, 1.0).is_err());
    }

    #[test]
    fn directions_grid() {
        let d = sphere_directions_26();
        assert_eq!(d.len(), 26);
        assert_eq!(d.iter().filter(|u| u.z() == 0.0).count(), 8);
    }

    #[test]
    fn members_are_lexicographic() {
        let g = SearchGrid::default();
        let m = g.members();
        assert_eq!(m.len(), 2 * 4 * 27);
        assert_eq!(m[0].curvatures, vec![-1.0, -1.0, -1.0]);
        assert_eq!(m[1].curvatures, vec![-1.0, -1.0, 0.0]);
        assert_eq!(m[27].theta0, 0.0);
        assert_eq!(g.cells().iter().filter(|c| c.certified).count(), 2 * 8);
    }

    #[test]
    fn empty_grid_is_an_error() {
        let g = SearchGrid {
            alphas: vec![],
            ..SearchGrid::default()
        };
        assert!(matches!(falsification_search(&g), Err(Error::EmptyGrid)));
    }

    #[test]
    fn all_skipped_is_an_error() {
        // Every profile runs along the axis.
        let g = SearchGrid {
            x0_values: vec![0.0],
            theta0_values: vec![FRAC_PI_2],
            curvature_values: vec![0.0],
            ..SearchGrid::default()
        };
        assert!(matches!(falsification_search(&g), Err(Error::AllSkipped)));
    }

    #[test]
    fn helicoid_grid_stays_away_from_zero() {
        let g = SearchGrid {
            theta0_values: vec![0.0],
            curvature_values: vec![0.0],
            alphas: vec![-2.0],
            directions: vec![UnitVec3::E3],
            ..SearchGrid::default()
        };
        let out = falsification_search(&g).unwrap();
        assert!(out.records.iter().all(|r| r.score >= 10.0 * TOL_ZERO));
        assert!(out.consistent);
    }
}
