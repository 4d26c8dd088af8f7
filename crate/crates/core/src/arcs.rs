//! Perfect arcs: circular arcs or segments meeting the boundary orthogonally.
//!
//! Two boundary points with normal angles `s₁`, `s₂` are joined by a perfect
//! arc exactly when the two-point function
//!
//! ```text
//! f(s₁, s₂) = (C₁ − C₂)·(N₁ + N₂)
//! ```
//!
//! vanishes and `N₁ + N₂ ≠ 0`; when `N₁ = −N₂` the chord itself must be
//! parallel to the normals. Since `N₁ + N₂ = 2 cos w · B(θ̄)` with
//! `θ̄ = (s₁+s₂)/2`, `w = (s₁−s₂)/2` and `B = (cos θ̄, sin θ̄)`, both cases are
//! captured by the reduced function `g = (C₁ − C₂)·B(θ̄)`. For Fourier data it
//! has the closed form
//!
//! ```text
//! g = −2 Σ_{m≥2} (1 − m²) qₘ(θ̄) Jₘ(w),   qₘ = −aₘ sin mθ̄ + bₘ cos mθ̄,
//! Jₘ(w) = ∫₀^w sin mt sin t dt,
//! ```
//!
//! which vanishes identically on circles and is free of the cancellation that
//! plagues `C₁ − C₂` for nearby points.

use std::f64::consts::{PI, TAU};

use serde::Serialize;

use crate::disk;
use crate::error::{Error, Result};
use crate::geometry::{AreaPrimitive, SupportCurve};
use crate::numeric::{self, cross, dot, norm, sub, Vec2};

/// `|N₁ + N₂|` below this makes an arc a straight segment.
pub const SEGMENT_TOL: f64 = 1e-8;
/// Largest endpoint residual accepted by [`build_arc`].
pub const PERFECT_TOL: f64 = 1e-9;
/// Newton tolerance on the two-point function.
pub const NEWTON_TOL: f64 = 1e-12;
pub const NEWTON_MAX_ITER: usize = 50;
/// Interior sample count used to decide containment.
const CONTAINMENT_SAMPLES: usize = 64;
/// Normals tabulated for the containment test.
const CONTAINMENT_TABLE: usize = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ArcKind {
    Circular,
    Segment,
}

/// A perfect arc together with the region it cuts off.
///
/// The region is bounded by the boundary traversed counterclockwise from
/// `endpoint_thetas[0]` to `endpoint_thetas[1]` and the arc traversed back.
/// The curvature is signed: positive when the arc bulges away from that
/// region, which makes `dL = k dA` hold along any family.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PerfectArc {
    pub kind: ArcKind,
    pub center: Option<[f64; 2]>,
    pub radius: Option<f64>,
    pub curvature: f64,
    /// `[θ₋, θ₊]` with `0 < θ₊ − θ₋ < 2π`.
    pub endpoint_thetas: [f64; 2],
    /// Boundary points `[C(θ₋), C(θ₊)]`.
    pub endpoints: [[f64; 2]; 2],
    /// Signed turning of the arc tangent from `C(θ₊)` to `C(θ₋)`; equals
    /// `π − (θ₊ − θ₋)` for a perfect arc.
    pub turning_angle: f64,
    pub length: f64,
    pub enclosed_area: f64,
    pub contained: bool,
    /// Largest deviation of the arc's unit tangent from the inward normal at
    /// `C(θ₊)` and the outward normal at `C(θ₋)`.
    pub orthogonality_residual: f64,
}

impl PerfectArc {
    /// Point at fraction `t ∈ [0, 1]` of the way from `C(θ₊)` to `C(θ₋)`.
    pub fn point_at(&self, t: f64) -> [f64; 2] {
        let [p_minus, p_plus] = self.endpoints;
        match (self.center, self.radius) {
            (Some(c), Some(r)) => {
                let start = sub(p_plus, c);
                let angle = start[1].atan2(start[0]) + t * self.turning_angle;
                let (s, co) = angle.sin_cos();
                [c[0] + r * co, c[1] + r * s]
            }
            _ => [
                p_plus[0] + t * (p_minus[0] - p_plus[0]),
                p_plus[1] + t * (p_minus[1] - p_plus[1]),
            ],
        }
    }
}

/// Two-point function and its gradient at a pair of normal angles.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TwoPointState {
    pub s1: f64,
    pub s2: f64,
    pub f_value: f64,
    /// `(∂f/∂s₁, ∂f/∂s₂)` with respect to the normal angles.
    pub grad: [f64; 2],
}

impl TwoPointState {
    pub fn new(curve: &SupportCurve, s1: f64, s2: f64) -> Result<Self> {
        Ok(Self {
            s1,
            s2,
            f_value: two_point_f(curve, s1, s2)?,
            grad: two_point_grad(curve, s1, s2)?,
        })
    }
}

fn check_distinct(s1: f64, s2: f64) -> Result<()> {
    let d = numeric::wrap_angle(s1 - s2);
    if d < 1e-14 || TAU - d < 1e-14 {
        Err(Error::CoincidentPoints(s1, s2))
    } else {
        Ok(())
    }
}

/// `f(s₁, s₂) = (C₁ − C₂)·(N₁ + N₂)` at normal angles `s₁`, `s₂`.
pub fn two_point_f(curve: &SupportCurve, s1: f64, s2: f64) -> Result<f64> {
    check_distinct(s1, s2)?;
    let p1 = curve.eval(s1)?;
    let p2 = curve.eval(s2)?;
    let d = sub(p1.position, p2.position);
    Ok(dot(d, [p1.normal[0] + p2.normal[0], p1.normal[1] + p2.normal[1]]))
}

/// Gradient of `f` with respect to arclength at each endpoint, with the
/// boundary oriented counterclockwise and `N` outward:
///
/// ```text
/// ∂f/∂s₁ =  T₁·N₂ + κ₁ (C₁ − C₂)·T₁
/// ∂f/∂s₂ = −T₂·N₁ + κ₂ (C₁ − C₂)·T₂
/// ```
pub fn two_point_grad_arclength(curve: &SupportCurve, s1: f64, s2: f64) -> Result<[f64; 2]> {
    check_distinct(s1, s2)?;
    let p1 = curve.eval(s1)?;
    let p2 = curve.eval(s2)?;
    let d = sub(p1.position, p2.position);
    Ok([
        dot(p1.tangent, p2.normal) + p1.curvature * dot(d, p1.tangent),
        -dot(p2.tangent, p1.normal) + p2.curvature * dot(d, p2.tangent),
    ])
}

/// Gradient of `f` with respect to the normal angles (`ds = ρ dθ`).
pub fn two_point_grad(curve: &SupportCurve, s1: f64, s2: f64) -> Result<[f64; 2]> {
    let g = two_point_grad_arclength(curve, s1, s2)?;
    Ok([g[0] * curve.radius_of_curvature(s1), g[1] * curve.radius_of_curvature(s2)])
}

/// Residual of the exceptional configuration `−κ₁(C₁−C₂) = N₂ − N₁ = −κ₂(C₁−C₂)`
/// in which the arclength gradient vanishes. It is zero for every pair on a
/// circle.
pub fn gradient_degeneracy(curve: &SupportCurve, s1: f64, s2: f64) -> Result<f64> {
    check_distinct(s1, s2)?;
    let p1 = curve.eval(s1)?;
    let p2 = curve.eval(s2)?;
    let d = sub(p1.position, p2.position);
    let n = sub(p2.normal, p1.normal);
    let r1 = norm([n[0] + p1.curvature * d[0], n[1] + p1.curvature * d[1]]);
    let r2 = norm([n[0] + p2.curvature * d[0], n[1] + p2.curvature * d[1]]);
    Ok(r1.max(r2))
}

/// `E(z) = (z − sin z)/z³`, even in `z`; `sin_z` is supplied by the caller.
#[inline]
fn e_func(z: f64, sin_z: f64) -> f64 {
    if z.abs() < 0.5 {
        let z2 = z * z;
        1.0 / 6.0
            - z2 * (1.0 / 120.0
                - z2 * (1.0 / 5040.0 - z2 * (1.0 / 362_880.0 - z2 * (1.0 / 39_916_800.0 - z2 / 6_227_020_800.0))))
    } else {
        (z - sin_z) / (z * z * z)
    }
}

/// `z − sin z`, accurate for small `z`.
pub(crate) fn z_minus_sin(z: f64) -> f64 {
    z * z * z * e_func(z, z.sin())
}

/// Reduced two-point function `g = (C₁ − C₂)·B(θ̄)` by its spectral form.
pub fn reduced_two_point(curve: &SupportCurve, s1: f64, s2: f64) -> f64 {
    reduced_two_point_derivs(curve, s1, s2)[0]
}

/// `[g, ∂g/∂s₁, ∂g/∂s₂]` by the spectral form.
pub fn reduced_two_point_derivs(curve: &SupportCurve, s1: f64, s2: f64) -> [f64; 3] {
    let mid = 0.5 * (s1 + s2);
    let w = 0.5 * (s1 - s2);
    let (sm1, cm1) = mid.sin_cos();
    let (sw1, cw1) = w.sin_cos();
    let (mut sa, mut ca) = (sm1, cm1);
    // sin kw, cos kw for k = m − 1, m, m + 1, starting at m = 1
    let mut s_lo;
    let mut s_mid = sw1;
    let (mut s_hi, mut c_hi) = (2.0 * w).sin_cos();
    let (mut g, mut g_mid, mut g_w) = (0.0, 0.0, 0.0);
    for m in 2..=curve.degree() {
        if m % 32 == 0 {
            (sa, ca) = (m as f64 * mid).sin_cos();
            s_lo = ((m - 1) as f64 * w).sin();
            s_mid = (m as f64 * w).sin();
            (s_hi, c_hi) = ((m + 1) as f64 * w).sin_cos();
        } else {
            (sa, ca) = (sa * cm1 + ca * sm1, ca * cm1 - sa * sm1);
            s_lo = s_mid;
            s_mid = s_hi;
            (s_hi, c_hi) = (s_hi * cw1 + c_hi * sw1, c_hi * cw1 - s_hi * sw1);
        }
        let (a, b) = curve.mode(m);
        if a == 0.0 && b == 0.0 {
            continue;
        }
        let mf = m as f64;
        let lam = 1.0 - mf * mf;
        let q = -a * sa + b * ca;
        let p = a * ca + b * sa;
        let (zp, zm) = ((mf + 1.0) * w, (mf - 1.0) * w);
        let j = 0.5
            * w
            * w
            * w
            * ((mf + 1.0).powi(2) * e_func(zp, s_hi) - (mf - 1.0).powi(2) * e_func(zm, s_lo));
        let dj = s_mid * sw1;
        g += -2.0 * lam * q * j;
        g_mid += 2.0 * lam * mf * p * j;
        g_w += -2.0 * lam * q * dj;
    }
    [g, 0.5 * (g_mid + g_w), 0.5 * (g_mid - g_w)]
}

/// Tabulated support lines used to test whether a point lies in the domain.
#[derive(Debug, Clone)]
pub struct ContainmentTable {
    thetas: Vec<f64>,
    normals: Vec<Vec2>,
    support: Vec<f64>,
    scale: f64,
}

impl ContainmentTable {
    pub fn new(curve: &SupportCurve) -> Self {
        let n = CONTAINMENT_TABLE;
        let thetas: Vec<f64> = (0..n).map(|j| TAU * j as f64 / n as f64).collect();
        let normals = thetas.iter().map(|t| [t.cos(), t.sin()]).collect();
        let support = thetas.iter().map(|&t| curve.support(t)).collect();
        Self { thetas, normals, support, scale: curve.cos_coeffs()[0].abs() }
    }

    /// `max_θ (p·N(θ) − h(θ))`: negative inside, positive outside.
    pub fn margin(&self, curve: &SupportCurve, p: Vec2) -> f64 {
        let (best, coarse) = self
            .normals
            .iter()
            .zip(&self.support)
            .enumerate()
            .map(|(j, (n, h))| (j, dot(p, *n) - h))
            .fold((0, f64::NEG_INFINITY), |acc, x| if x.1 > acc.1 { x } else { acc });
        // Newton polish of the maximizing support direction
        let mut t = self.thetas[best];
        let mut value = coarse;
        for _ in 0..6 {
            let d = curve.derivatives(t);
            let (s, c) = t.sin_cos();
            let first = -p[0] * s + p[1] * c - d[1];
            let second = -p[0] * c - p[1] * s - d[2];
            if second >= 0.0 {
                break;
            }
            t -= first / second;
            let (s, c) = t.sin_cos();
            value = value.max(p[0] * c + p[1] * s - curve.support(t));
            if first.abs() < 1e-15 * self.scale {
                break;
            }
        }
        value
    }

    pub fn contains(&self, curve: &SupportCurve, p: Vec2) -> bool {
        self.margin(curve, p) <= 1e-10 * self.scale
    }
}

/// Reusable precomputation for building many arcs on one domain.
#[derive(Debug, Clone)]
pub struct ArcBuilder<'a> {
    curve: &'a SupportCurve,
    primitive: AreaPrimitive,
    table: ContainmentTable,
    area: f64,
}

/// Ordered endpoint angles with `0 < θ₊ − θ₋ < 2π`.
fn order(s1: f64, s2: f64) -> Result<(f64, f64)> {
    check_distinct(s1, s2)?;
    let lo = s1.min(s2);
    let mut hi = s1.max(s2);
    if hi - lo >= TAU {
        hi -= TAU * ((hi - lo) / TAU).floor();
    }
    if hi - lo <= 0.0 {
        hi += TAU;
    }
    Ok((lo, hi))
}

/// Circular-segment area `(r²/2)(φ − sin φ)` for a chord of length `c`.
fn cap_area(c: f64, phi: f64) -> f64 {
    let half = 0.5 * phi;
    if half == 0.0 {
        return 0.0;
    }
    let s = half.sin();
    c * c * z_minus_sin(phi) / (8.0 * s * s)
}

/// Length of a circular arc with chord `c` and turning angle `φ`.
fn arc_length(c: f64, phi: f64) -> f64 {
    let half = 0.5 * phi;
    if half.abs() < 1e-8 {
        c * (1.0 + half * half / 6.0)
    } else {
        c * half / half.sin()
    }
}

impl<'a> ArcBuilder<'a> {
    pub fn new(curve: &'a SupportCurve) -> Self {
        Self {
            curve,
            primitive: AreaPrimitive::new(curve),
            table: ContainmentTable::new(curve),
            area: curve.area(),
        }
    }

    pub fn curve(&self) -> &SupportCurve {
        self.curve
    }

    pub fn domain_area(&self) -> f64 {
        self.area
    }

    /// Area enclosed by the boundary from `θ₋` to `θ₊` and the chord back.
    pub fn chord_area(&self, t_minus: f64, t_plus: f64) -> f64 {
        let a = self.curve.position(t_minus);
        let b = self.curve.position(t_plus);
        self.primitive.sector(t_minus, t_plus) + 0.5 * cross(b, a)
    }

    /// Perfect arc between two normal angles, validated to [`PERFECT_TOL`].
    pub fn build(&self, s1: f64, s2: f64) -> Result<PerfectArc> {
        self.build_with_tolerance(s1, s2, PERFECT_TOL)
    }

    pub fn build_with_tolerance(&self, s1: f64, s2: f64, tol: f64) -> Result<PerfectArc> {
        let (lo, hi) = order(s1, s2)?;
        let delta = hi - lo;
        let normal_sum = 2.0 * (0.5 * delta).cos().abs();
        if normal_sum < SEGMENT_TOL {
            let arc = self.arc_with_turning(lo, hi, 0.0)?;
            if arc.orthogonality_residual > tol {
                return Err(Error::NormalsParallelButNotAligned { residual: arc.orthogonality_residual });
            }
            return Ok(arc);
        }
        let arc = self.arc_with_turning(lo, hi, PI - delta)?;
        if arc.orthogonality_residual > tol || !arc.orthogonality_residual.is_finite() {
            return Err(Error::NotPerfect { residual: arc.orthogonality_residual });
        }
        Ok(arc)
    }

    /// Circular arc from `C(θ₊)` back to `C(θ₋)` with turning angle `phi`
    /// (`phi = 0` gives the chord). No orthogonality is enforced; the residual
    /// is reported.
    pub fn arc_with_turning(&self, t_minus: f64, t_plus: f64, phi: f64) -> Result<PerfectArc> {
        let pm = self.curve.eval(t_minus)?;
        let pp = self.curve.eval(t_plus)?;
        let chord = sub(pm.position, pp.position);
        let c = norm(chord);
        if c == 0.0 {
            return Err(Error::CoincidentPoints(t_minus, t_plus));
        }
        let u = [chord[0] / c, chord[1] / c];
        let rotate = |v: Vec2, a: f64| {
            let (s, co) = a.sin_cos();
            [co * v[0] - s * v[1], s * v[0] + co * v[1]]
        };
        let d_start = rotate(u, -0.5 * phi);
        let d_end = rotate(u, 0.5 * phi);
        let residual = norm([d_start[0] + pp.normal[0], d_start[1] + pp.normal[1]])
            .max(norm(sub(d_end, pm.normal)));
        let area = self.chord_area(t_minus, t_plus) + cap_area(c, phi);
        let (kind, center, radius, curvature) = if phi == 0.0 {
            (ArcKind::Segment, None, None, 0.0)
        } else {
            let r = c / (2.0 * (0.5 * phi).sin().abs());
            let left = [-d_start[1], d_start[0]];
            let sign = phi.signum();
            let center = [pp.position[0] + sign * r * left[0], pp.position[1] + sign * r * left[1]];
            (ArcKind::Circular, Some(center), Some(r), 2.0 * (0.5 * phi).sin() / c)
        };
        let mut arc = PerfectArc {
            kind,
            center,
            radius,
            curvature,
            endpoint_thetas: [t_minus, t_plus],
            endpoints: [pm.position, pp.position],
            turning_angle: phi,
            length: arc_length(c, phi),
            enclosed_area: area,
            contained: false,
            orthogonality_residual: residual,
        };
        arc.contained = (1..=CONTAINMENT_SAMPLES).all(|i| {
            let t = (i as f64 - 0.5) / CONTAINMENT_SAMPLES as f64;
            self.table.contains(self.curve, arc.point_at(t))
        });
        Ok(arc)
    }

    /// Turning angle and length of the circular arc through `C(θ₋)`, `C(θ₊)`
    /// that cuts off exactly `target` area (orthogonality not required).
    pub fn arc_for_area(&self, t_minus: f64, t_plus: f64, target: f64) -> Option<(f64, f64)> {
        if !(t_plus > t_minus && t_plus - t_minus < TAU) {
            return None;
        }
        let chord = sub(self.curve.position(t_minus), self.curve.position(t_plus));
        let c = norm(chord);
        if c < 1e-14 {
            return None;
        }
        let need = target - self.chord_area(t_minus, t_plus);
        let lim = TAU * (1.0 - 1e-12);
        let phi = numeric::brent(|phi| cap_area(c, phi) - need, -lim, lim, 1e-15).ok()?;
        Some((phi, arc_length(c, phi)))
    }
}

/// Perfect arc through the boundary points at normal angles `s1`, `s2`.
///
/// Endpoints are reordered so that `θ₋ < θ₊ < θ₋ + 2π`; the enclosed area is
/// the region to the left of the boundary between them.
pub fn build_arc(curve: &SupportCurve, s1: f64, s2: f64) -> Result<PerfectArc> {
    ArcBuilder::new(curve).build(s1, s2)
}

/// Roots `s₂` of `g(s₁, ·)` on a uniform grid of `nodes` cells around the
/// boundary, excluding the trivial root `s₂ = s₁`. Returned values lie in
/// `(s₁ − 2π, s₁)`.
pub fn partners(curve: &SupportCurve, s1: f64, nodes: usize) -> Vec<f64> {
    let step = TAU / nodes as f64;
    let values: Vec<f64> = (1..nodes)
        .map(|k| reduced_two_point(curve, s1, s1 - k as f64 * step))
        .collect();
    numeric::sign_change_cells(&values)
        .into_iter()
        .filter_map(|i| {
            let lo = s1 - (i + 1) as f64 * step;
            let hi = s1 - (i + 2) as f64 * step;
            if values[i] == 0.0 {
                return Some(lo);
            }
            numeric::brent(|x| reduced_two_point(curve, s1, x), lo, hi, 1e-14).ok()
        })
        .collect()
}

/// Solve `g(s₁, ·) = 0` by Newton from `guess`, then by a bracketing scan of
/// `guess ± radius`.
fn solve_partner(curve: &SupportCurve, s1: f64, guess: f64, radius: f64) -> Option<f64> {
    let mut x = guess;
    for _ in 0..NEWTON_MAX_ITER {
        let [g, _, dg] = reduced_two_point_derivs(curve, s1, x);
        if g == 0.0 {
            return Some(x);
        }
        if dg == 0.0 || !dg.is_finite() {
            break;
        }
        let step = g / dg;
        x -= step;
        if step.abs() > 4.0 * radius {
            break;
        }
        if step.abs() < 1e-15 * (1.0 + x.abs()) {
            return Some(x);
        }
    }
    if (x - guess).abs() <= radius && reduced_two_point(curve, s1, x).abs() < NEWTON_TOL * 1e-3 {
        return Some(x);
    }
    let cells = 40;
    let h = 2.0 * radius / cells as f64;
    let grid: Vec<f64> = (0..=cells).map(|i| guess - radius + i as f64 * h).collect();
    let values: Vec<f64> = grid.iter().map(|&t| reduced_two_point(curve, s1, t)).collect();
    numeric::sign_change_cells(&values)
        .into_iter()
        .filter_map(|i| numeric::brent(|t| reduced_two_point(curve, s1, t), grid[i], grid[i + 1], 1e-15).ok())
        .min_by(|a, b| (a - guess).abs().total_cmp(&(b - guess).abs()))
}

/// Family of perfect arcs through a seed pair, continued in steps of `ds` in
/// `s₁` with `s₂` corrected by Newton. Stops early when the gradient
/// degenerates or the arc leaves the domain. On a circle every pair is
/// perfect; the family is then generated in closed form, keeping the seed's
/// axis of symmetry.
pub fn continue_family(
    curve: &SupportCurve,
    seed: &TwoPointState,
    steps: usize,
    ds: f64,
) -> Result<Vec<PerfectArc>> {
    if curve.is_circle() {
        let (radius, origin) = curve.circle_parts();
        let u = 0.5 * (seed.s1 + seed.s2);
        let half0 = 0.5 * (seed.s1 - seed.s2);
        let mut arcs = Vec::with_capacity(steps + 1);
        for k in 0..=steps {
            let half = (half0 + 0.5 * k as f64 * ds).abs();
            if half <= 0.0 || half >= PI {
                break;
            }
            arcs.push(disk::circle_arc(radius, origin, u, half));
        }
        return Ok(arcs);
    }
    let builder = ArcBuilder::new(curve);
    let (mut s1, mut s2) = (seed.s1, seed.s2);
    let scale = curve.cos_coeffs()[0].abs();
    let [_, mut g1, mut g2] = reduced_two_point_derivs(curve, s1, s2);
    if g1.hypot(g2) < 1e-12 * scale {
        return Err(Error::DegenerateGradient { s1, s2 });
    }
    s2 = solve_partner(curve, s1, s2, 5.0 * ds.abs().max(1e-6)).ok_or(Error::NoConvergence("seed correction"))?;
    let mut arcs = vec![builder.build(s1, s2)?];
    for _ in 0..steps {
        if g2.abs() < 1e-14 * scale {
            break;
        }
        let next1 = s1 + ds;
        let predicted = s2 - g1 / g2 * ds;
        let Some(next2) = solve_partner(curve, next1, predicted, 5.0 * ds.abs()) else {
            if arcs.is_empty() {
                return Err(Error::NoConvergence("continuation corrector"));
            }
            break;
        };
        let gap = next1 - next2;
        if gap.abs() <= 1e-12 || gap.abs() >= TAU - 1e-12 {
            break;
        }
        match builder.build(next1, next2) {
            Ok(arc) if arc.contained => arcs.push(arc),
            _ => break,
        }
        s1 = next1;
        s2 = next2;
        [_, g1, g2] = reduced_two_point_derivs(curve, s1, s2);
        if g1.hypot(g2) < 1e-12 * scale {
            break;
        }
    }
    Ok(arcs)
}

/// One member of a family of arcs shrinking to a vertex.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VertexArc {
    /// Arclength offset of the first endpoint from the vertex.
    pub s1: f64,
    /// Arclength offset of the second endpoint from the vertex.
    pub s2: f64,
    pub arc: PerfectArc,
}

/// Perfect arcs near a non-degenerate vertex, one per arclength offset in
/// `s1_grid`. The second endpoint starts from `s₂ ≈ −s₁ + a₂ s₁²` with
/// `a₂ = −κ_sss / (5 κ_ss)` and is then solved for.
pub fn vertex_family(curve: &SupportCurve, vertex_theta: f64, s1_grid: &[f64]) -> Result<Vec<VertexArc>> {
    let [k, ks, kss, ksss] = curve.curvature_arclength_derivs(vertex_theta);
    if ks.abs() > 1e-8 * k.max(1.0).powi(2) {
        return Err(Error::NotAVertex { theta: vertex_theta, derivative: ks });
    }
    if kss.abs() < 1e-8 {
        return Err(Error::DegenerateVertex { theta: vertex_theta, second: kss });
    }
    let a2 = -ksss / (5.0 * kss);
    let sv = curve.arclength(vertex_theta);
    let builder = ArcBuilder::new(curve);
    let mut out = Vec::with_capacity(s1_grid.len());
    for &s1 in s1_grid {
        if s1 == 0.0 {
            continue;
        }
        let t1 = curve.theta_at_arclength(sv + s1);
        let guess = curve.theta_at_arclength(sv - s1 + a2 * s1 * s1);
        let radius = 0.5 * (t1 - vertex_theta).abs();
        let t2 = solve_partner_scaled(curve, t1, guess, radius)
            .ok_or(Error::NoConvergence("vertex family"))?;
        let arc = builder.build(t1, t2)?;
        out.push(VertexArc { s1, s2: curve.arclength(t2) - sv, arc });
    }
    Ok(out)
}

/// Like [`solve_partner`] but on `g / w³`, removing the triple root at `s₂ = s₁`.
fn solve_partner_scaled(curve: &SupportCurve, s1: f64, guess: f64, radius: f64) -> Option<f64> {
    let scaled = |x: f64| {
        let [g, _, dg] = reduced_two_point_derivs(curve, s1, x);
        let w = 0.5 * (s1 - x);
        let w3 = w * w * w;
        // d/dx (g / w³) with dw/dx = −½
        (g / w3, dg / w3 + 1.5 * g / (w3 * w))
    };
    let mut x = guess;
    for _ in 0..NEWTON_MAX_ITER {
        let (g, dg) = scaled(x);
        if g == 0.0 {
            return Some(x);
        }
        if dg == 0.0 || !dg.is_finite() {
            break;
        }
        let step = g / dg;
        x -= step;
        if step.abs() > 2.0 * radius {
            break;
        }
        if step.abs() < 1e-15 * (1.0 + x.abs()) {
            return Some(x);
        }
    }
    let cells = 40;
    let h = 2.0 * radius / cells as f64;
    let grid: Vec<f64> = (0..=cells).map(|i| guess - radius + i as f64 * h).collect();
    let values: Vec<f64> = grid.iter().map(|&t| scaled(t).0).collect();
    numeric::sign_change_cells(&values)
        .into_iter()
        .filter_map(|i| numeric::brent(|t| scaled(t).0, grid[i], grid[i + 1], 1e-15).ok())
        .min_by(|a, b| (a - guess).abs().total_cmp(&(b - guess).abs()))
}
