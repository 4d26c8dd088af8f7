use std::f64::consts::{FRAC_PI_2, PI, SQRT_2, TAU};

use isoperim::arcs::{self, ArcBuilder};
use isoperim::{disk, ArcKind, Error, SupportCurve, TwoPointState};
use proptest::prelude::*;

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

/// Region cut off by an arc: boundary from `θ₋` to `θ₊`, then the arc back.
fn region_polygon(boundary: impl Fn(f64) -> [f64; 2], arc: &isoperim::PerfectArc, n: usize) -> Vec<[f64; 2]> {
    let [t0, t1] = arc.endpoint_thetas;
    let mut pts: Vec<[f64; 2]> = (0..n).map(|j| boundary(t0 + (t1 - t0) * j as f64 / n as f64)).collect();
    pts.extend((0..n).map(|j| arc.point_at(j as f64 / n as f64)));
    pts
}

fn arc_polygon_length(arc: &isoperim::PerfectArc, n: usize) -> f64 {
    (0..n)
        .map(|j| {
            let p = arc.point_at(j as f64 / n as f64);
            let q = arc.point_at((j + 1) as f64 / n as f64);
            (q[0] - p[0]).hypot(q[1] - p[1])
        })
        .sum()
}

#[test]
fn disk_arcs_against_polygons() {
    for theta in [0.1, 0.5, 1.0, 1.4] {
        let arc = disk::disk_arc(0.7, theta).unwrap();
        let poly = region_polygon(|t| [t.cos(), t.sin()], &arc, 20_000);
        assert!((shoelace(&poly) - disk::theta_to_area(theta).unwrap()).abs() < 1e-7, "{theta}");
        assert!((arc_polygon_length(&arc, 20_000) - arc.length).abs() < 1e-7, "{theta}");
    }
}

#[test]
fn two_point_function_matches_parametric_ellipse() {
    let (a, b) = (SQRT_2, 1.0 / SQRT_2);
    let e = SupportCurve::ellipse(a, b).unwrap();
    for (s1, s2) in [(0.3, -1.2), (2.0, 0.1), (1.0, -2.5)] {
        let (p, q) = (ellipse_point(a, b, s1), ellipse_point(a, b, s2));
        let n = [s1.cos() + s2.cos(), s1.sin() + s2.sin()];
        let expected = (p[0] - q[0]) * n[0] + (p[1] - q[1]) * n[1];
        assert!((arcs::two_point_f(&e, s1, s2).unwrap() - expected).abs() < 1e-13);
    }
    assert!(matches!(arcs::two_point_f(&e, 0.4, 0.4), Err(Error::CoincidentPoints(..))));
}

#[test]
fn ellipse_axes_are_segments() {
    let e = SupportCurve::ellipse(2.0, 0.5).unwrap();
    let major = arcs::build_arc(&e, PI, 0.0).unwrap();
    assert_eq!(major.kind, ArcKind::Segment);
    assert!((major.length - 4.0).abs() < 1e-12);
    assert!((major.enclosed_area - PI * 0.5).abs() < 1e-12);
    let minor = arcs::build_arc(&e, FRAC_PI_2, -FRAC_PI_2).unwrap();
    assert_eq!(minor.kind, ArcKind::Segment);
    assert!((minor.length - 1.0).abs() < 1e-12);
    assert!(arcs::build_arc(&e, 0.3, -0.4).is_err());
}

#[test]
fn partner_arcs_are_perfect() {
    let (a, b) = (1.6, 0.7);
    let e = SupportCurve::ellipse(a, b).unwrap();
    let builder = ArcBuilder::new(&e);
    let mut checked = 0;
    for k in 0..12 {
        let s1 = TAU * k as f64 / 12.0 + 0.05;
        for s2 in arcs::partners(&e, s1, 256) {
            let arc = builder.build(s1, s2).unwrap();
            assert!(arc.orthogonality_residual < 1e-9);
            for (p, t) in arc.endpoints.iter().zip(arc.endpoint_thetas) {
                let q = ellipse_point(a, b, t);
                assert!((p[0] - q[0]).abs() < 1e-13 && (p[1] - q[1]).abs() < 1e-13);
                if let Some(c) = arc.center {
                    // the centre lies on the boundary tangent line
                    let off = (p[0] - c[0]) * t.cos() + (p[1] - c[1]) * t.sin();
                    assert!(off.abs() < 1e-8, "{off}");
                }
            }
            let poly = region_polygon(|t| ellipse_point(a, b, t), &arc, 20_000);
            assert!((shoelace(&poly) - arc.enclosed_area).abs() < 1e-6);
            checked += 1;
        }
    }
    assert!(checked > 12);
}

#[test]
fn continued_family_satisfies_first_variation() {
    let e = SupportCurve::ellipse(1.5, 1.0 / 1.5).unwrap();
    let s1 = 0.4;
    let s2 = arcs::partners(&e, s1, 512)
        .into_iter()
        .find(|s| (s1 - s).abs() < 1.5)
        .expect("short partner");
    let seed = TwoPointState::new(&e, s1, s2).unwrap();
    let fam = arcs::continue_family(&e, &seed, 40, 1e-3).unwrap();
    assert!(fam.len() > 10);
    for w in fam.windows(2) {
        assert!(w[0].orthogonality_residual < 1e-9);
        let dl = w[1].length - w[0].length;
        let da = w[1].enclosed_area - w[0].enclosed_area;
        let k = 0.5 * (w[0].curvature + w[1].curvature);
        assert!((dl - k * da).abs() < 1e-4 * da.abs().max(1e-12), "{dl} {da} {k}");
    }
}

#[test]
fn vertex_families_are_symmetric() {
    let e = SupportCurve::ellipse(SQRT_2, 1.0 / SQRT_2).unwrap();
    for vertex in [0.0, FRAC_PI_2, PI] {
        let fam = arcs::vertex_family(&e, vertex, &[1e-3, 1e-2, 0.1]).unwrap();
        for v in fam {
            assert!((v.s1 + v.s2).abs() < 1e-10);
        }
    }
    assert!(matches!(arcs::vertex_family(&e, 0.5, &[1e-2]), Err(Error::NotAVertex { .. })));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn two_point_function_is_antisymmetric(a in 1.05f64..2.0, s1 in 0.0f64..TAU, gap in 0.1f64..6.1) {
        let e = SupportCurve::ellipse(a, 1.0 / a).unwrap();
        let s2 = s1 - gap;
        let f12 = arcs::two_point_f(&e, s1, s2).unwrap();
        let f21 = arcs::two_point_f(&e, s2, s1).unwrap();
        prop_assert!((f12 + f21).abs() < 1e-13);
    }

    #[test]
    fn arcs_at_partners_close_up(a in 1.05f64..2.0, s1 in 0.0f64..TAU) {
        let e = SupportCurve::ellipse(a, 1.0 / a).unwrap();
        let builder = ArcBuilder::new(&e);
        for s2 in arcs::partners(&e, s1, 256) {
            let arc = builder.build(s1, s2).unwrap();
            prop_assert!(arc.orthogonality_residual < 1e-9);
            if arc.contained {
                prop_assert!(arc.enclosed_area > 0.0 && arc.enclosed_area < e.area());
            }
            // the arc runs from C(θ₊) to C(θ₋)
            let end = arc.point_at(1.0);
            prop_assert!((end[0] - arc.endpoints[0][0]).abs() < 1e-12 && (end[1] - arc.endpoints[0][1]).abs() < 1e-12);
        }
    }
}
