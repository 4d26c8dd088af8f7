//! Closed-form isoperimetric profile and perfect arcs of the unit disk.
//!
//! A perfect arc of the unit disk whose endpoints have normal angles `u ± θ`
//! is a circle of radius `tan θ` centred at `sec θ·(cos u, sin u)`. It cuts off
//!
//! ```text
//! a(θ) = θ − tan θ + (π/2 − θ) tan²θ,     L(θ) = (π − 2θ) tan θ,
//! ```
//!
//! and has curvature `cot θ`. Both `a` and `L` increase strictly on `(0, π/2)`.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::Serialize;

use crate::arcs::{ArcKind, PerfectArc};
use crate::error::{Error, Result};
use crate::numeric;

/// Tolerance of the area-to-angle inversion.
pub const INVERSION_TOL: f64 = 1e-14;

/// One member of the unit-disk arc family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiskArcParam {
    pub theta: f64,
    pub area: f64,
    pub length: f64,
    pub curvature: f64,
}

impl DiskArcParam {
    pub fn at(theta: f64) -> Result<Self> {
        check_theta(theta)?;
        Ok(Self {
            theta,
            area: area_unchecked(theta),
            length: length_unchecked(theta),
            curvature: (FRAC_PI_2 - theta).tan(),
        })
    }
}

fn check_theta(theta: f64) -> Result<()> {
    if theta > 0.0 && theta <= FRAC_PI_2 {
        Ok(())
    } else {
        Err(Error::OutOfRange { what: "theta", value: theta })
    }
}

/// `δ cot δ − 1`, accurate for small `δ`.
fn delta_cot_minus_one(d: f64) -> f64 {
    if d.abs() < 0.1 {
        let d2 = d * d;
        -d2 * (1.0 / 3.0
            + d2 * (1.0 / 45.0
                + d2 * (2.0 / 945.0 + d2 * (1.0 / 4725.0 + d2 * (2.0 / 93555.0 + d2 * 1382.0 / 638_512_875.0)))))
    } else {
        d / d.tan() - 1.0
    }
}

/// `δ / sin δ`, accurate for small `δ`.
pub(crate) fn delta_over_sin(d: f64) -> f64 {
    if d.abs() < 1e-3 {
        let d2 = d * d;
        1.0 + d2 * (1.0 / 6.0 + d2 * 7.0 / 360.0)
    } else {
        d / d.sin()
    }
}

/// Area formula in terms of `δ = π/2 − θ`; valid for `θ ∈ (0, π)`.
pub(crate) fn area_unchecked(theta: f64) -> f64 {
    let d = FRAC_PI_2 - theta;
    if d == 0.0 {
        return FRAC_PI_2;
    }
    theta + delta_cot_minus_one(d) / d.tan()
}

/// `(π − 2θ) tan θ = 2δ cos δ / sin δ`; valid for `θ ∈ (0, π)`.
pub(crate) fn length_unchecked(theta: f64) -> f64 {
    let d = FRAC_PI_2 - theta;
    2.0 * delta_over_sin(d) * d.cos()
}

/// Area cut off by the perfect arc with contact half-angle `theta ∈ (0, π/2]`.
pub fn theta_to_area(theta: f64) -> Result<f64> {
    check_theta(theta)?;
    Ok(area_unchecked(theta))
}

/// Length of the perfect arc with contact half-angle `theta ∈ (0, π/2]`.
pub fn theta_to_length(theta: f64) -> Result<f64> {
    check_theta(theta)?;
    Ok(length_unchecked(theta))
}

/// Inverse of [`theta_to_area`] for `area ∈ (0, π/2]`.
pub fn area_to_theta(area: f64) -> Result<f64> {
    if !(area > 0.0 && area <= FRAC_PI_2) {
        return Err(Error::OutOfRange { what: "area", value: area });
    }
    if area == FRAC_PI_2 {
        return Ok(FRAC_PI_2);
    }
    numeric::bisect(|t| area_unchecked(t) - area, 0.0, FRAC_PI_2, INVERSION_TOL)
}

/// Isoperimetric profile of the unit disk, `I(a) = I(π − a)`.
#[allow(non_snake_case)]
pub fn profile_I(area: f64) -> Result<f64> {
    if !(area > 0.0 && area < PI) {
        return Err(Error::OutOfRange { what: "area", value: area });
    }
    let a = if area > FRAC_PI_2 { PI - area } else { area };
    Ok(length_unchecked(area_to_theta(a)?))
}

/// The unit-disk perfect arc with endpoints at normal angles `u ± theta`.
pub fn disk_arc(u: f64, theta: f64) -> Result<PerfectArc> {
    check_theta(theta)?;
    Ok(circle_arc(1.0, [0.0, 0.0], u, theta))
}

/// Perfect arc of the circle with the given radius and centre, endpoints at
/// normal angles `u ± theta`, `theta ∈ (0, π)`. Past `π/2` the arc bends the
/// other way and cuts off the larger piece.
pub(crate) fn circle_arc(radius: f64, origin: [f64; 2], u: f64, theta: f64) -> PerfectArc {
    let (su, cu) = u.sin_cos();
    let point = |t: f64| {
        let (s, c) = t.sin_cos();
        [origin[0] + radius * c, origin[1] + radius * s]
    };
    let endpoints = [point(u - theta), point(u + theta)];
    let d = FRAC_PI_2 - theta;
    let segment = d == 0.0;
    let (center, r, curvature) = if segment {
        (None, None, 0.0)
    } else {
        // sec θ = 1/sin δ, tan θ = cot δ
        let sec = 1.0 / d.sin();
        let center = [origin[0] + radius * sec * cu, origin[1] + radius * sec * su];
        (Some(center), Some(radius * (d.cos() / d.sin()).abs()), d.tan() / radius)
    };
    PerfectArc {
        kind: if segment { ArcKind::Segment } else { ArcKind::Circular },
        center,
        radius: r,
        curvature,
        endpoint_thetas: [u - theta, u + theta],
        endpoints,
        turning_angle: PI - 2.0 * theta,
        length: radius * length_unchecked(theta),
        enclosed_area: radius * radius * area_unchecked(theta),
        contained: true,
        orthogonality_residual: 0.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_4, SQRT_2};

    #[test]
    fn quarter_angle_values() {
        assert!((theta_to_area(FRAC_PI_4).unwrap() - (FRAC_PI_2 - 1.0)).abs() < 1e-15);
        assert!((theta_to_length(FRAC_PI_4).unwrap() - FRAC_PI_2).abs() < 1e-15);
        assert!((profile_I(FRAC_PI_2 - 1.0).unwrap() - FRAC_PI_2).abs() < 1e-13);
        assert_eq!(profile_I(FRAC_PI_2).unwrap(), 2.0);
    }

    #[test]
    fn limits() {
        assert!(theta_to_area(1e-8).unwrap() < 1e-15);
        assert!((theta_to_area(FRAC_PI_2 - 1e-12).unwrap() - FRAC_PI_2).abs() < 1e-11);
        assert!((theta_to_length(FRAC_PI_2 - 1e-12).unwrap() - 2.0).abs() < 1e-15);
        assert!(theta_to_area(0.0).is_err());
        assert!(theta_to_area(2.0).is_err());
        assert!(profile_I(PI).is_err());
    }

    #[test]
    fn stable_forms_agree_with_textbook_forms() {
        for k in 1..200 {
            let t = 1.5 * k as f64 / 200.0;
            let a = t - t.tan() + (FRAC_PI_2 - t) * t.tan().powi(2);
            let l = (PI - 2.0 * t) * t.tan();
            assert!((area_unchecked(t) - a).abs() < 1e-13, "{t}");
            assert!((length_unchecked(t) - l).abs() < 1e-13, "{t}");
        }
    }

    #[test]
    fn small_area_asymptotics() {
        let a = 1e-6;
        let i = profile_I(a).unwrap();
        assert!((i / (2.0 * PI * a).sqrt() - 1.0).abs() < 0.01);
    }

    #[test]
    fn profile_symmetry() {
        for a in [0.1, 0.5, 1.0, 1.5] {
            assert!((profile_I(a).unwrap() - profile_I(PI - a).unwrap()).abs() < 1e-14);
        }
    }

    #[test]
    fn arc_geometry() {
        let arc = disk_arc(0.0, FRAC_PI_4).unwrap();
        let c = arc.center.unwrap();
        assert!((c[0] - SQRT_2).abs() < 1e-15 && c[1].abs() < 1e-15);
        assert!((arc.radius.unwrap() - 1.0).abs() < 1e-15);
        assert!((arc.endpoints[1][0] - FRAC_PI_4.cos()).abs() < 1e-15);
        assert!((arc.endpoints[1][1] - FRAC_PI_4.sin()).abs() < 1e-15);
        assert!((arc.endpoints[0][1] + FRAC_PI_4.sin()).abs() < 1e-15);
        assert!((arc.endpoint_thetas[1] - arc.endpoint_thetas[0] - FRAC_PI_2).abs() < 1e-15);
        for (u, t) in [(0.3, 0.2), (2.0, 1.1), (-1.0, 0.7)] {
            let arc = disk_arc(u, t).unwrap();
            assert!((arc.curvature - 1.0 / t.tan()).abs() < 1e-12);
            // endpoints on the unit circle, at distance r from the centre, orthogonal
            let c = arc.center.unwrap();
            let r = arc.radius.unwrap();
            for p in arc.endpoints {
                assert!((numeric::norm(p) - 1.0).abs() < 1e-15);
                let q = numeric::sub(p, c);
                assert!((numeric::norm(q) - r).abs() < 1e-12);
                assert!(numeric::dot(q, p).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn inversion_round_trip() {
        for k in 1..100 {
            let t = FRAC_PI_2 * k as f64 / 100.0;
            let a = theta_to_area(t).unwrap();
            assert!((area_to_theta(a).unwrap() - t).abs() < 1e-12);
        }
    }
}
