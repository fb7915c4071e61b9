use std::f64::consts::PI;

use helisms::classifier::{certify_cylinder, check_prop1, falsification_search, FamilyMember, SearchGrid, Verdict};
use helisms::geometry::{
    fundamental_forms, helicoidal_motion, mean_curvature_general, mean_curvature_theta, normal_general, normal_theta,
    parametrize, regularity_of, surface_jet,
};
use helisms::residual::{
    cleared_residual, coefficients_general, coefficients_vertical, combo_ha0_za1, combo_v2a3_v1a2,
    extract_coefficients_numeric, rescaled_residual, residual, DEFAULT_T_NODES,
};
use helisms::{HelicoidalSurface, Profile, ProfileState, Sign, SmsParams, UnitVec3, Vec3};
use proptest::prelude::*;

fn state() -> impl Strategy<Value = ProfileState> {
    (prop::bool::ANY, 0.2..3.0f64, -2.0..2.0f64, -PI..PI, -2.0..2.0f64)
        .prop_map(|(neg, x, z, th, dth)| ProfileState::new(0.0, if neg { -x } else { x }, z, th, dth))
}

fn direction() -> impl Strategy<Value = UnitVec3> {
    (-1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64)
        .prop_filter("non-degenerate", |(a, b, c)| a * a + b * b + c * c > 0.01)
        .prop_map(|(a, b, c)| UnitVec3::normalize(Vec3::new(a, b, c)).unwrap())
}

fn alpha() -> impl Strategy<Value = f64> {
    (-3.0..3.0f64).prop_filter("non-zero", |a| a.abs() > 1e-3)
}

fn pitch() -> impl Strategy<Value = f64> {
    -2.0..2.0f64
}

/// Magnitude scale of the cleared residual at a state, for relative bounds.
fn scale(st: &ProfileState, h: f64) -> f64 {
    let r = st.x().abs() + st.z().abs() + h.abs() + st.theta_prime().abs() + 1.0;
    r.powi(4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn curvature_forms_agree(st in state(), h in pitch()) {
        prop_assume!(regularity_of(&st, h) > 1e-3);
        let a = mean_curvature_theta(&st, h).unwrap();
        let b = mean_curvature_general(st.x(), st.x_prime(), st.x_second(), st.z_prime(), st.z_second(), h).unwrap();
        prop_assert!((a - b).abs() <= 1e-12 * a.abs().max(1.0), "{a} vs {b}");
    }

    #[test]
    fn normals_agree_and_are_orthonormal(st in state(), h in pitch(), t in -PI..PI) {
        prop_assume!(regularity_of(&st, h) > 1e-3);
        let a = normal_theta(&st, h, t).unwrap().vec();
        let b = normal_general(st.x(), st.x_prime(), st.z_prime(), h, t).unwrap().vec();
        prop_assert!((a - b).max_abs() < 1e-14);
        prop_assert!((a.norm() - 1.0).abs() < 1e-14);
        let jet = helisms::geometry::jet_of(&st, h, t);
        prop_assert!(a.dot(jet.ps).abs() < 1e-13);
        prop_assert!(a.dot(jet.pt).abs() < 1e-13 * (1.0 + h.abs() + st.x().abs()));
        prop_assert!(a.dot(jet.cross()) > 0.0);
    }

    #[test]
    fn expansion_identity(st in state(), h in pitch(), a in alpha(), v in direction(), t in -2.0 * PI..2.0 * PI) {
        let p = SmsParams::new(a, v).unwrap();
        let f = cleared_residual(&st, h, &p, t);
        let q = coefficients_general(&st, h, &p).evaluate(t);
        prop_assert!((f - q).abs() <= 1e-12 * scale(&st, h) * (1.0 + t.abs()), "{f} vs {q}");
    }

    #[test]
    fn extraction_recovers_closed_form(st in state(), h in pitch(), a in alpha(), v in direction()) {
        let p = SmsParams::new(a, v).unwrap();
        let closed = coefficients_general(&st, h, &p);
        let num = extract_coefficients_numeric(&st, h, &p, DEFAULT_T_NODES).unwrap();
        let err = [num.a0 - closed.a0, num.a1 - closed.a1, num.a2 - closed.a2, num.a3 - closed.a3];
        prop_assert!(err.iter().all(|e| e.abs() <= 1e-11 * scale(&st, h)), "{err:?}");
    }

    #[test]
    fn combination_identities(st in state(), h in pitch(), a in alpha(), v in direction()) {
        let p = SmsParams::new(a, v).unwrap();
        let w2 = regularity_of(&st, h);
        let (x, c) = (st.x(), st.cos_theta());
        let first = -a * h * v.z() * x * c * w2;
        let second = a * h * c * w2 * (v.x() * v.x() + v.y() * v.y());
        prop_assert!((combo_ha0_za1(&st, h, &p) - first).abs() <= 1e-12 * scale(&st, h));
        prop_assert!((combo_v2a3_v1a2(&st, h, &p) - second).abs() <= 1e-12 * scale(&st, h));
    }

    #[test]
    fn vertical_pair_is_general_with_e3(st in state(), h in pitch(), a in alpha()) {
        let g = coefficients_general(&st, h, &SmsParams::new(a, UnitVec3::E3).unwrap());
        let (a0, a1) = coefficients_vertical(&st, h, a);
        prop_assert!((a0 - g.a0).abs() <= 1e-13 * scale(&st, h));
        prop_assert!((a1 - g.a1).abs() <= 1e-13 * scale(&st, h));
        prop_assert_eq!((g.a2, g.a3), (0.0, 0.0));
    }

    #[test]
    fn residual_matches_vector_form(
        theta0 in -PI..PI, x0 in 0.5..2.0f64, h in pitch(), a in alpha(), v in direction(),
        s in -0.4..0.4f64, t in -PI..PI,
    ) {
        let surf = HelicoidalSurface::new(Profile::line(theta0, x0, 3.0, (-0.5, 0.5)).unwrap(), h).unwrap();
        let p = SmsParams::new(a, v).unwrap();
        let point = parametrize(&surf, s, t).unwrap();
        let pv = v.dot(point);
        prop_assume!(pv > 0.1);
        let st = surf.state(s).unwrap();
        prop_assume!(regularity_of(&st, h) > 1e-3);
        let n = normal_theta(&st, h, t).unwrap();
        let want = mean_curvature_theta(&st, h).unwrap() - a * v.dot(n.vec()) / pv;
        let got = residual(&surf, &p, s, t).unwrap();
        prop_assert!((got - want).abs() <= 1e-12 * (1.0 + want.abs()), "{got} vs {want}");
        let rescaled = rescaled_residual(&surf, &p, s, t).unwrap();
        let cleared = cleared_residual(&st, h, &p, t);
        prop_assert!((rescaled - cleared).abs() <= 1e-12 * scale(&st, h));
    }

    #[test]
    fn forms_and_curvature_are_t_independent(theta0 in -PI..PI, x0 in 0.5..2.0f64, h in pitch(), s in -0.4..0.4f64, t in -10.0..10.0f64) {
        let surf = HelicoidalSurface::new(Profile::line(theta0, x0, 0.0, (-0.5, 0.5)).unwrap(), h).unwrap();
        prop_assume!(surf.regularity(s).unwrap() > 1e-3);
        let f0 = fundamental_forms(&surf, s, 0.0).unwrap();
        let ft = fundamental_forms(&surf, s, t).unwrap();
        prop_assert_eq!(f0, ft);
        // The analytic jet at t carries the same forms up to rounding.
        let jet = surface_jet(&surf, s, t).unwrap();
        let n = normal_theta(&surf.state(s).unwrap(), h, t).unwrap();
        let fj = jet.forms(n.vec());
        prop_assert!((fj.mean_curvature() - f0.mean_curvature()).abs() < 1e-12 * (1.0 + f0.mean_curvature().abs()));
    }

    #[test]
    fn motion_maps_the_surface_to_itself(theta0 in -PI..PI, x0 in 0.5..2.0f64, h in pitch(), s in -0.4..0.4f64, t in -PI..PI, d in -1.0..1.0f64) {
        let surf = HelicoidalSurface::new(Profile::line(theta0, x0, 0.0, (-0.5, 0.5)).unwrap(), h).unwrap();
        let moved = helicoidal_motion(parametrize(&surf, s, t).unwrap(), d, h);
        let direct = parametrize(&surf, s, t + d).unwrap();
        prop_assert!((moved - direct).max_abs() < 1e-12 * (1.0 + h.abs() * (t.abs() + d.abs())));
    }

    #[test]
    fn cylinder_certification_is_the_predicate(
        x0 in 0.1..3.0f64, neg in prop::bool::ANY, z0 in -1.0..1.0f64, h in pitch(),
        a_pick in 0usize..3, a_free in alpha(), v_flat in prop::bool::ANY, v in direction(),
    ) {
        let alpha = if a_pick == 0 { -1.0 } else { a_free };
        let v = if v_flat { UnitVec3::normalize(Vec3::new(v.x(), v.y(), 0.0)).unwrap_or(UnitVec3::E1) } else { v };
        let r = certify_cylinder(if neg { -x0 } else { x0 }, z0, Sign::Plus, h, alpha, v);
        let expected = v.z() == 0.0 && alpha == -1.0;
        prop_assert_eq!(r.verdict == Verdict::SingularMinimal, expected);
    }

    #[test]
    fn prop1_never_certifies(
        x0 in 0.3..2.0f64, theta0 in -PI..PI, k in prop::collection::vec(-1.5..1.5f64, 1..4),
        h in (0.1..4.0f64).prop_union(-4.0..-0.1f64), a in alpha(),
    ) {
        let member = FamilyMember { x0, z0: 0.5, theta0, curvatures: k };
        let profile = member.build(0.4, 1e-2).unwrap();
        let r = check_prop1(&profile, h, a).unwrap();
        prop_assert_ne!(r.verdict, Verdict::SingularMinimal);
    }
}

#[test]
fn search_is_deterministic() {
    let grid = SearchGrid {
        segments: 2,
        x0_values: vec![1.0],
        pitches: vec![0.5, 1.0],
        ..SearchGrid::default()
    };
    let a = serde_json::to_string(&falsification_search(&grid).unwrap()).unwrap();
    let b = serde_json::to_string(&falsification_search(&grid).unwrap()).unwrap();
    assert_eq!(a, b);
    let out: serde_json::Value = serde_json::from_str(&a).unwrap();
    let first = &out["records"][0];
    assert_eq!(first["config"]["certified"], true);
    assert!(first["score"].as_f64().unwrap() < 1e-10);
}

#[test]
fn unit_vectors_validate_on_load() {
    assert!(serde_json::from_str::<UnitVec3>("[0.6, 0.8, 0.0]").is_ok());
    assert!(serde_json::from_str::<UnitVec3>("[1.0, 1.0, 0.0]").is_err());
}
