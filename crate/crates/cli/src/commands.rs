use std::fs::File;
use std::io::{self, BufWriter, Write};

use anyhow::Context;
use helisms::classifier::{
    certify_cylinder_with, check_prop1_with, falsification_search, CertificationReport, SearchGrid, SearchOutcome,
    Verdict,
};
use helisms::format::csv_row;
use helisms::generators::{
    build_mesh, export_obj, integrate_rotational_profile, write_profile_csv, GridRange, MeshSpec, RotationalOdeState,
};
use helisms::geometry::mean_curvature_theta;
use helisms::oracle::{fd_mean_curvature, FdConfig};
use helisms::profile::ProfileKind;
use helisms::residual::{coefficients_general, combo_ha0_za1, combo_v2a3_v1a2};
use helisms::{HelicoidalSurface, SmsParams, UnitVec3};
use serde::Serialize;

use crate::config::{ConfigError, RunConfig};

/// Process exit status on success paths.
pub const OK: u8 = 0;
pub const INCONSISTENT: u8 = 1;
pub const GEOMETRIC: u8 = 2;

fn out_writer(cfg: &RunConfig) -> anyhow::Result<Box<dyn Write>> {
    Ok(match &cfg.output {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).with_context(|| format!("cannot create {}", path.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

/// Summary lines go to stdout unless stdout already carries the data.
fn summary(cfg: &RunConfig, line: &str) {
    if cfg.output.is_some() {
        println!("{line}");
    } else {
        eprintln!("{line}");
    }
}

fn fd_config(cfg: &RunConfig) -> anyhow::Result<FdConfig> {
    FdConfig::new(cfg.fd_step).map_err(|e| ConfigError(format!("fd_step: {e}")).into())
}

fn surface(cfg: &RunConfig) -> anyhow::Result<HelicoidalSurface> {
    HelicoidalSurface::new(cfg.profile()?, cfg.pitch).map_err(|e| ConfigError(format!("pitch: {e}")).into())
}

fn sms_params(cfg: &RunConfig) -> anyhow::Result<SmsParams> {
    SmsParams::new(cfg.alpha, cfg.direction()?).map_err(|e| ConfigError(format!("alpha: {e}")).into())
}

fn grid_range(r: crate::config::RangeSpec) -> GridRange {
    GridRange::new(r.start, r.end, r.count)
}

pub fn curvature(cfg: &RunConfig) -> anyhow::Result<u8> {
    let surf = surface(cfg)?;
    let fd = fd_config(cfg)?;
    let mut w = out_writer(cfg)?;
    writeln!(w, "# config: {}", cfg.echo())?;
    writeln!(w, "s,t,H_closed,H_fd,abs_diff")?;
    for s in cfg.s.values() {
        let st = surf.regular_state(s)?;
        let closed = mean_curvature_theta(&st, surf.pitch())?;
        for t in cfg.t.values() {
            let num = fd_mean_curvature(&surf, s, t, fd)?;
            writeln!(w, "{}", csv_row(&[s, t, closed, num, (closed - num).abs()]))?;
        }
    }
    w.flush()?;
    Ok(OK)
}

pub fn coeffs(cfg: &RunConfig) -> anyhow::Result<u8> {
    let surf = surface(cfg)?;
    let params = sms_params(cfg)?;
    let h = surf.pitch();
    let mut w = out_writer(cfg)?;
    writeln!(w, "# config: {}", cfg.echo())?;
    writeln!(w, "s,A0,A1,A2,A3,hA0_minus_zA1,v2A3_minus_v1A2")?;
    for s in cfg.s.values() {
        let st = surf.regular_state(s)?;
        let q = coefficients_general(&st, h, &params);
        let row = [
            s,
            q.a0,
            q.a1,
            q.a2,
            q.a3,
            combo_ha0_za1(&st, h, &params),
            combo_v2a3_v1a2(&st, h, &params),
        ];
        writeln!(w, "{}", csv_row(&row))?;
    }
    w.flush()?;
    Ok(OK)
}

#[derive(Serialize)]
struct CylinderCheck {
    expected: Verdict,
    consistent: bool,
    report: CertificationReport,
}

#[derive(Serialize)]
struct Prop1Sweep {
    h: f64,
    reports: usize,
    not_singular_minimal: usize,
    degenerate: usize,
    singular_minimal: usize,
    cylinder_sub_cases: usize,
    consistent: bool,
}

#[derive(Serialize)]
struct VerifyReport<'a> {
    config: &'a RunConfig,
    consistent: bool,
    cylinder: Vec<CylinderCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    prop1_profile: Option<CertificationReport>,
    prop1_sweep: Vec<Prop1Sweep>,
    #[serde(skip_serializing_if = "Option::is_none")]
    search: Option<SearchOutcome>,
}

const PROP1_PITCHES: [f64; 3] = [0.25, 1.0, 4.0];

fn cylinder_check(x0: f64, z0: f64, sign: helisms::Sign, h: f64, alpha: f64, v: UnitVec3, tol: f64) -> CylinderCheck {
    let report = certify_cylinder_with(x0, z0, sign, h, alpha, v, tol);
    let expected = if v.z().abs() < tol && (alpha + 1.0).abs() < tol {
        Verdict::SingularMinimal
    } else {
        Verdict::NotSingularMinimal
    };
    CylinderCheck {
        expected,
        consistent: report.verdict == expected,
        report,
    }
}

pub fn verify(cfg: &RunConfig) -> anyhow::Result<u8> {
    use helisms::Sign::Plus;
    let tol = cfg.tol_zero;
    if !(tol > 0.0) {
        return Err(ConfigError(format!("tol_zero must be positive, got {tol}")).into());
    }
    let mut cylinder = vec![
        cylinder_check(1.0, 0.0, Plus, 2.0, -1.0, UnitVec3::E1, tol),
        cylinder_check(1.0, 0.0, Plus, 2.0, -1.0, UnitVec3::E3, tol),
        cylinder_check(1.0, 0.0, Plus, 2.0, -2.0, UnitVec3::E1, tol),
    ];

    let mut prop1_profile = None;
    if cfg.profile.is_some() {
        let profile = cfg.profile()?;
        let v = cfg.direction()?;
        if let ProfileKind::Cylinder { x0, z0, sign } = *profile.kind() {
            cylinder.push(cylinder_check(x0, z0, sign, cfg.pitch, cfg.alpha, v, tol));
        }
        if cfg.pitch != 0.0 {
            prop1_profile = Some(check_prop1_with(&profile, cfg.pitch, cfg.alpha, tol)?);
        }
    }

    let grid = SearchGrid {
        tol_zero: tol,
        ..SearchGrid::default()
    };
    let profiles = grid
        .members()
        .iter()
        .map(|m| m.build(grid.segment_length, grid.step))
        .collect::<Result<Vec<_>, _>>()?;
    let mut prop1_sweep = Vec::new();
    for h in PROP1_PITCHES {
        let mut sweep = Prop1Sweep {
            h,
            reports: profiles.len() * grid.alphas.len(),
            not_singular_minimal: 0,
            degenerate: 0,
            singular_minimal: 0,
            cylinder_sub_cases: 0,
            consistent: true,
        };
        for p in &profiles {
            for alpha in &grid.alphas {
                let r = check_prop1_with(p, h, *alpha, tol)?;
                match r.verdict {
                    Verdict::SingularMinimal => sweep.singular_minimal += 1,
                    Verdict::NotSingularMinimal => sweep.not_singular_minimal += 1,
                    Verdict::Degenerate => sweep.degenerate += 1,
                }
                if r.sub_case == Some(helisms::classifier::Prop1Case::Cylinder) {
                    sweep.cylinder_sub_cases += 1;
                }
            }
        }
        sweep.consistent = sweep.singular_minimal == 0;
        prop1_sweep.push(sweep);
    }

    let search = if cfg.search {
        Some(falsification_search(&grid)?)
    } else {
        None
    };

    let consistent = cylinder.iter().all(|c| c.consistent)
        && prop1_profile
            .as_ref()
            .is_none_or(|r| r.verdict != Verdict::SingularMinimal)
        && prop1_sweep.iter().all(|s| s.consistent)
        && search.as_ref().is_none_or(|s| s.consistent);

    let report = VerifyReport {
        config: cfg,
        consistent,
        cylinder,
        prop1_profile,
        prop1_sweep,
        search,
    };
    let mut w = out_writer(cfg)?;
    serde_json::to_writer_pretty(&mut w, &report)?;
    writeln!(w)?;
    w.flush()?;
    if let Some(s) = &report.search {
        summary(
            cfg,
            &format!(
                "search: min non-certified score {:e}, max certified score {:e}",
                s.min_non_certified.unwrap_or(f64::NAN),
                s.max_certified.unwrap_or(f64::NAN)
            ),
        );
    }
    summary(cfg, if consistent { "consistent" } else { "INCONSISTENT" });
    Ok(if consistent { OK } else { INCONSISTENT })
}

pub fn catenary(cfg: &RunConfig) -> anyhow::Result<u8> {
    let initial = RotationalOdeState {
        s: 0.0,
        x: cfg.x0,
        z: cfg.z0,
        theta: cfg.theta0,
    };
    if !(cfg.step > 0.0 && cfg.step.is_finite()) || cfg.n_steps == 0 {
        return Err(ConfigError(format!(
            "need step > 0 and n_steps > 0, got {} and {}",
            cfg.step, cfg.n_steps
        ))
        .into());
    }
    let run = integrate_rotational_profile(cfg.alpha, initial, cfg.step, cfg.n_steps)
        .map_err(|e| ConfigError(e.to_string()))?;
    let mut w = out_writer(cfg)?;
    writeln!(w, "# config: {}", cfg.echo())?;
    write_profile_csv(run.states(), &mut w)?;
    w.flush()?;
    drop(w);

    let max_res = run.max_interior_residual()?;
    summary(
        cfg,
        &format!(
            "steps={} requested={} truncated={} max_residual={:e}",
            run.steps_taken, run.requested_steps, run.truncated, max_res
        ),
    );

    if let Some(path) = &cfg.mesh {
        let (a, b) = run.profile.domain();
        let t = if cfg.t.count >= 2 {
            grid_range(cfg.t)
        } else {
            GridRange::new(0.0, std::f64::consts::TAU, 33)
        };
        let spec = MeshSpec {
            s: GridRange::new(a, b, (run.steps_taken + 1).min(101)),
            t,
        };
        let mesh = build_mesh(&run.surface(), &spec)?;
        export_obj(&mesh, path)?;
        summary(
            cfg,
            &format!(
                "mesh vertices={} triangles={}",
                mesh.vertices.len(),
                mesh.triangles.len()
            ),
        );
    }
    if run.truncated && cfg.strict {
        eprintln!(
            "trajectory truncated after {} of {} steps",
            run.steps_taken, run.requested_steps
        );
        return Ok(GEOMETRIC);
    }
    Ok(OK)
}

pub fn mesh(cfg: &RunConfig) -> anyhow::Result<u8> {
    let path = cfg
        .output
        .as_ref()
        .ok_or_else(|| ConfigError("mesh needs --output <file.obj>".into()))?;
    let surf = surface(cfg)?;
    let spec = MeshSpec {
        s: grid_range(cfg.s),
        t: grid_range(cfg.t),
    };
    for r in [spec.s, spec.t] {
        if r.count < 2 || r.start == r.end {
            return Err(ConfigError(
                "mesh needs --s and --t ranges of the form start:end:count with count >= 2".into(),
            )
            .into());
        }
    }
    let mesh = build_mesh(&surf, &spec)?;
    export_obj(&mesh, path)?;
    println!("# config: {}", cfg.echo());
    println!("vertices={} triangles={}", mesh.vertices.len(), mesh.triangles.len());
    Ok(OK)
}
