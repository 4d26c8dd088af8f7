use std::f64::consts::{PI, SQRT_2, TAU};

use isoperim::{DomainSpec, Error, SupportCurve};
use proptest::prelude::*;

/// Point of the ellipse `x²/a² + y²/b² = 1` with outward normal angle `t`.
fn ellipse_point(a: f64, b: f64, t: f64) -> [f64; 2] {
    let (s, c) = t.sin_cos();
    let d = (a * a * c * c + b * b * s * s).sqrt();
    [a * a * c / d, b * b * s / d]
}

fn shoelace(points: &[[f64; 2]]) -> f64 {
    let n = points.len();
    0.5 * (0..n)
        .map(|i| {
            let (p, q) = (points[i], points[(i + 1) % n]);
            p[0] * q[1] - p[1] * q[0]
        })
        .sum::<f64>()
}

fn polygon_length(points: &[[f64; 2]]) -> f64 {
    let n = points.len();
    (0..n)
        .map(|i| {
            let (p, q) = (points[i], points[(i + 1) % n]);
            (q[0] - p[0]).hypot(q[1] - p[1])
        })
        .sum()
}

fn sample(curve: &SupportCurve, n: usize) -> Vec<[f64; 2]> {
    (0..n).map(|j| curve.position(TAU * j as f64 / n as f64)).collect()
}

#[test]
fn ellipse_matches_parametric_form() {
    for (a, b) in [(SQRT_2, 1.0 / SQRT_2), (3.0, 1.0), (10.0, 0.1), (1.0, 1.0)] {
        let e = SupportCurve::ellipse(a, b).unwrap();
        for j in 0..97 {
            let t = TAU * j as f64 / 97.0;
            let p = e.position(t);
            let q = ellipse_point(a, b, t);
            let scale = a.max(b);
            assert!((p[0] - q[0]).abs() < 1e-13 * scale && (p[1] - q[1]).abs() < 1e-13 * scale, "{a} {b} {t}");
            let (s, c) = t.sin_cos();
            // curvature at normal angle t is (a²cos²t + b²sin²t)^{3/2} / (a²b²)
            let expected = (a * a * c * c + b * b * s * s).powf(1.5) / (a * a * b * b);
            assert!((e.curvature(t) / expected - 1.0).abs() < 1e-9, "{a} {b} {t}");
        }
        assert!((e.area() - PI * a * b).abs() < 1e-12 * a * b);
    }
}

#[test]
fn area_and_perimeter_match_polygon() {
    let curves = [
        SupportCurve::ellipse(SQRT_2, 1.0 / SQRT_2).unwrap(),
        SupportCurve::new(vec![1.0, 0.1, 0.05, 0.01], vec![0.02, -0.01]).unwrap(),
    ];
    for c in curves {
        let pts = sample(&c, 20_000);
        assert!((shoelace(&pts) - c.area()).abs() < 1e-6);
        assert!((polygon_length(&pts) - c.perimeter()).abs() < 1e-6);
    }
}

#[test]
fn domain_spec_round_trip() {
    let spec = DomainSpec::from_json(r#"{"preset":"ellipse","params":{"a":1.4142135623730951,"b":0.7071067811865476}}"#)
        .unwrap();
    let c = spec.build().unwrap();
    assert!(c.classify().unwrap().is_class_a);
    let spec = DomainSpec::from_json(r#"{"support_cos":[1.0,0.0,0.1],"normalize_area":3.141592653589793}"#).unwrap();
    assert!((spec.build().unwrap().area() - PI).abs() < 1e-13);
    let disk = DomainSpec::from_json(r#"{"preset":"disk"}"#).unwrap().build().unwrap();
    assert!(disk.classify().unwrap().is_disk);
    assert!(matches!(DomainSpec::from_json("{not json"), Err(Error::InvalidSpec(_))));
    assert!(matches!(
        DomainSpec::from_json(r#"{"preset":"ellipse"}"#).unwrap().build(),
        Err(Error::InvalidSpec(_))
    ));
    assert!(matches!(
        DomainSpec::from_json(r#"{"support_cos":[1.0,0.0,0.5]}"#).unwrap().build(),
        Err(Error::NonConvex { .. })
    ));
}

#[test]
fn classification() {
    let e = SupportCurve::ellipse(SQRT_2, 1.0 / SQRT_2).unwrap();
    let r = e.classify().unwrap();
    assert!(r.is_class_a && !r.is_disk);
    assert_eq!(r.vertex_thetas.len(), 4);
    assert!((r.kappa_max - 2.0 * SQRT_2).abs() < 1e-10);
    assert!((r.kappa_min - 1.0 / (2.0 * SQRT_2)).abs() < 1e-10);
    let (kmax, bound) = e.pestov_ionin(&r);
    assert!(kmax > bound);
    let rot = e.rotated(0.3);
    assert!(!rot.classify().unwrap().is_class_a);
    let moved = e.translated([0.2, 0.0]);
    assert!(!moved.classify().unwrap().is_class_a);
    let d = SupportCurve::disk(1.0).unwrap().classify().unwrap();
    assert!(d.is_disk && !d.is_class_a && d.vertex_thetas.is_empty());
    assert!((d.kappa_max - 1.0).abs() < 1e-14);
}

#[test]
fn domain_id_is_stable() {
    let a = SupportCurve::ellipse(2.0, 0.5).unwrap();
    let b = SupportCurve::ellipse(2.0, 0.5).unwrap();
    assert_eq!(a.domain_id(), b.domain_id());
    assert_eq!(a.domain_id().len(), 16);
    assert_ne!(a.domain_id(), SupportCurve::ellipse(2.0, 0.6).unwrap().domain_id());
}

fn small_curve() -> impl Strategy<Value = SupportCurve> {
    (prop::collection::vec(-0.02f64..0.02, 4), prop::collection::vec(-0.02f64..0.02, 4)).prop_map(|(c, s)| {
        let mut cos = vec![1.0];
        cos.extend(c);
        SupportCurve::new(cos, s).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closure_and_total_curvature(c in small_curve()) {
        let (x, y) = c.closure_integrals(512);
        prop_assert!(x.abs() < 1e-12 && y.abs() < 1e-12);
        prop_assert!((c.total_curvature(512) - TAU).abs() < 1e-10);
    }

    #[test]
    fn rigid_motions_keep_area_and_perimeter(c in small_curve(), angle in -3.0f64..3.0, dx in -1.0f64..1.0, dy in -1.0f64..1.0) {
        let m = c.rotated(angle).translated([dx, dy]);
        prop_assert!((m.area() - c.area()).abs() < 1e-12);
        prop_assert!((m.perimeter() - c.perimeter()).abs() < 1e-12);
    }

    #[test]
    fn scaling_law(c in small_curve(), k in 0.2f64..5.0) {
        let s = c.scaled(k);
        prop_assert!((s.area() - k * k * c.area()).abs() < 1e-11 * k * k);
        prop_assert!((s.perimeter() - k * c.perimeter()).abs() < 1e-12 * k);
        let n = c.normalize_area(PI).unwrap();
        prop_assert!((n.area() - PI).abs() < 1e-12);
    }

    #[test]
    fn arclength_inverts(c in small_curve(), t in 0.0f64..TAU) {
        let s = c.arclength(t);
        prop_assert!((c.theta_at_arclength(s) - t).abs() < 1e-10);
    }

    #[test]
    fn frame_is_orthonormal(c in small_curve(), t in 0.0f64..TAU) {
        let p = c.eval(t).unwrap();
        let dot = p.tangent[0] * p.normal[0] + p.tangent[1] * p.normal[1];
        prop_assert!(dot.abs() < 1e-15);
        prop_assert!((p.normal[0] - t.cos()).abs() < 1e-15 && (p.normal[1] - t.sin()).abs() < 1e-15);
        // support value is the projection of the position on the normal
        let h = p.position[0] * p.normal[0] + p.position[1] * p.normal[1];
        prop_assert!((h - c.support(t)).abs() < 1e-14);
    }
}
