use std::path::Path;
use std::process::{Command, Output};

use helisms::format::csv_row;
use helisms::residual::{coefficients_general, combo_ha0_za1, combo_v2a3_v1a2};
use helisms::{HelicoidalSurface, SmsParams, UnitVec3};

const PCC: &str = "pcc:x0=1,z0=0.5,theta0=0.3,k=1;-0.5;0.25,len=0.5";

fn helisms(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_helisms"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(path).unwrap()
}

/// Data rows of a CSV report, header line and config echo stripped.
fn rows(text: &str) -> Vec<Vec<f64>> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect()
}

#[test]
fn cylinder_curvature_is_one() {
    let out = helisms(&[
        "curvature",
        "--profile",
        "cylinder:x0=1,z0=0,sign=+",
        "--pitch",
        "2",
        "--s",
        "0",
        "--t",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.lines().next().unwrap().starts_with("# config: {"));
    assert_eq!(text.lines().nth(1).unwrap(), "s,t,H_closed,H_fd,abs_diff");
    let r = rows(&text);
    assert_eq!(r.len(), 1);
    assert_eq!(r[0][2], 1.0);
}

#[test]
fn helicoid_curvature_column_is_zero() {
    let out = helisms(&[
        "curvature",
        "--profile",
        "line:theta0=0,x0=0.5",
        "--pitch",
        "1",
        "--s",
        "-0.5:0.5:5",
        "--t",
        "-1:2:4",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = rows(&stdout(&out));
    assert_eq!(r.len(), 20);
    assert!(r.iter().all(|row| row[2] == 0.0));
}

#[test]
fn generic_curvature_matches_finite_differences() {
    let out = helisms(&[
        "curvature",
        "--profile",
        PCC,
        "--pitch",
        "0.7",
        "--s",
        "0.1:1.4:6",
        "--t",
        "0:3:3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = rows(&stdout(&out));
    assert_eq!(r.len(), 18);
    for row in r {
        assert!(row[4] < 1e-6, "{row:?}");
    }
}

#[test]
fn certified_cylinder_coefficients_vanish() {
    let out = helisms(&[
        "coeffs",
        "--profile",
        "cylinder:x0=1.5",
        "--pitch",
        "1",
        "--alpha",
        "-1",
        "--direction",
        "1,0,0",
        "--s",
        "-1:1:5",
    ]);
    assert_eq!(out.status.code(), Some(0));
    for row in rows(&stdout(&out)) {
        assert!(row[1..].iter().all(|v| *v == 0.0), "{row:?}");
    }
}

#[test]
fn vertical_direction_has_no_trig_terms() {
    let out = helisms(&[
        "coeffs",
        "--profile",
        PCC,
        "--pitch",
        "0.5",
        "--alpha",
        "2",
        "--s",
        "0:1.5:4",
    ]);
    for row in rows(&stdout(&out)) {
        assert_eq!((row[3], row[4]), (0.0, 0.0));
    }
}

#[test]
fn coeffs_golden_and_library_agree() {
    let args = [
        "coeffs",
        "--profile",
        PCC,
        "--pitch",
        "0.5",
        "--alpha",
        "-2",
        "--direction",
        "0.6,0,0.8",
        "--s",
        "0:1.5:7",
    ];
    let text = stdout(&helisms(&args));
    assert_eq!(text, golden("pcc_coeffs.csv"));

    let profile = helisms::classifier::FamilyMember {
        x0: 1.0,
        z0: 0.5,
        theta0: 0.3,
        curvatures: vec![1.0, -0.5, 0.25],
    }
    .build(0.5, helisms::tol::RK4_STEP)
    .unwrap();
    let surf = HelicoidalSurface::new(profile, 0.5).unwrap();
    let params = SmsParams::new(-2.0, UnitVec3::new(0.6, 0.0, 0.8).unwrap()).unwrap();
    let data: Vec<&str> = text.lines().skip(2).collect();
    for (line, s) in data.iter().zip(helisms::profile::linspace(0.0, 1.5, 7)) {
        let st = surf.regular_state(s).unwrap();
        let q = coefficients_general(&st, 0.5, &params);
        let want = csv_row(&[
            s,
            q.a0,
            q.a1,
            q.a2,
            q.a3,
            combo_ha0_za1(&st, 0.5, &params),
            combo_v2a3_v1a2(&st, 0.5, &params),
        ]);
        assert_eq!(*line, want);
    }
}

#[test]
fn mesh_golden() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cyl.obj");
    let out = helisms(&[
        "mesh",
        "--profile",
        "cylinder:x0=1,z0=0,sign=+",
        "--s",
        "0:1:3",
        "--t",
        "0:1:3",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("vertices=9 triangles=8"));
    let obj = std::fs::read_to_string(&path).unwrap();
    assert_eq!(obj, golden("unit_cylinder_3x3.obj"));
    for line in obj.lines().filter(|l| l.starts_with("v ")) {
        let v: Vec<f64> = line[2..].split(' ').map(|x| x.parse().unwrap()).collect();
        assert!((v[0].hypot(v[1]) - 1.0).abs() < 1e-15);
    }
}

#[test]
fn mesh_through_the_axis_is_geometric_failure() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.obj");
    let out = helisms(&[
        "mesh",
        "--profile",
        "line:theta0=0,x0=0",
        "--s",
        "-1:1:3",
        "--t",
        "0:1:2",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_3() {
    assert_eq!(
        helisms(&["curvature", "--profile", "sphere:r=1"]).status.code(),
        Some(3)
    );
    assert_eq!(helisms(&["curvature", "--bogus"]).status.code(), Some(3));
    assert_eq!(
        helisms(&["coeffs", "--profile", "line:x0=1", "--direction", "0,0,0"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(helisms(&["mesh", "--profile", "line:x0=1"]).status.code(), Some(3));
    assert_eq!(
        helisms(&["curvature", "--profile", "line:x0=1", "--fd-step", "0.5"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(helisms(&["catenary", "--z0", "0"]).status.code(), Some(3));
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{"pich": 1}"#).unwrap();
    assert_eq!(
        helisms(&["curvature", "--config", cfg.to_str().unwrap()]).status.code(),
        Some(3)
    );
    assert_eq!(helisms(&["--help"]).status.code(), Some(0));
}

#[test]
fn config_echo_reproduces_the_run() {
    let first = stdout(&helisms(&[
        "curvature",
        "--profile",
        PCC,
        "--pitch",
        "-0.3",
        "--s",
        "0.2:1:3",
        "--t",
        "0.5",
    ]));
    let echo = first.lines().next().unwrap().strip_prefix("# config: ").unwrap();
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    std::fs::write(&cfg, echo).unwrap();
    let again = stdout(&helisms(&["curvature", "--config", cfg.to_str().unwrap()]));
    assert_eq!(first, again);
    // A config written for another command is rejected.
    assert_eq!(
        helisms(&["coeffs", "--config", cfg.to_str().unwrap()]).status.code(),
        Some(3)
    );
}

#[test]
fn verify_is_consistent_and_deterministic() {
    let a = helisms(&[
        "verify",
        "--profile",
        "cylinder:x0=2",
        "--pitch",
        "1",
        "--alpha",
        "-1",
        "--direction",
        "0,1,0",
    ]);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    let report: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(report["consistent"], true);
    assert_eq!(report["cylinder"][3]["report"]["verdict"], "SingularMinimal");
    assert_eq!(report["prop1_profile"]["sub_case"], "cylinder");
    let rec = &report["search"]["records"][0];
    assert!(rec["config"].is_object() && rec["score"].is_number() && rec["witness"]["F"].is_number());
    let b = helisms(&[
        "verify",
        "--profile",
        "cylinder:x0=2",
        "--pitch",
        "1",
        "--alpha",
        "-1",
        "--direction",
        "0,1,0",
    ]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn catenary_writes_profile() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("p.csv");
    let obj = dir.path().join("p.obj");
    let out = helisms(&[
        "catenary",
        "--alpha",
        "1",
        "--n-steps",
        "200",
        "-o",
        csv.to_str().unwrap(),
        "--mesh",
        obj.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().nth(1).unwrap(), "s,x,z,theta");
    assert_eq!(rows(&text).len(), 201);
    let summary = stdout(&out);
    let res: f64 = summary
        .split_whitespace()
        .find_map(|w| w.strip_prefix("max_residual="))
        .unwrap()
        .parse()
        .unwrap();
    assert!(res < 1e-6);
    assert!(summary.contains("mesh vertices="));
    assert!(std::fs::read_to_string(&obj).unwrap().starts_with("v "));
}

#[test]
fn strict_catenary_reports_truncation() {
    // Heads down into the floor z = 0 well before the requested length.
    let args = [
        "catenary",
        "--alpha",
        "-2",
        "--z0",
        "0.05",
        "--theta0",
        "-1.5",
        "--n-steps",
        "2000",
    ];
    let loose = helisms(&args);
    assert_eq!(loose.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&loose.stderr).contains("truncated=true"));
    let mut strict = args.to_vec();
    strict.push("--strict");
    assert_eq!(helisms(&strict).status.code(), Some(2));
}
