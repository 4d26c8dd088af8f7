//! Isoperimetric profiles.
//!
//! For a domain symmetric in both axes with four vertices, the arcs with
//! endpoints at normal angles `±θ` around the x-axis vertex form a family
//! with closed-form length and curvature:
//!
//! ```text
//! y(θ) = C(θ)·e₂,   L(θ) = (π − 2θ) y(θ) / cos θ,   k(θ) = cos θ / y(θ).
//! ```
//!
//! Its enclosed area comes from Green's theorem and is checked against the
//! integral of `dA = dL / k`. For general domains an independent oracle
//! enumerates perfect arcs and minimizes length at fixed area.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, TAU};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::arcs::{self, ArcBuilder, PerfectArc};
use crate::disk;
use crate::error::{Error, Result};
use crate::geometry::SupportCurve;
use crate::numeric::{self, MonotoneCubic};

/// Relative tolerance for the "area π" precondition.
pub const AREA_TOL: f64 = 1e-9;
/// Below this area the profile ratio uses its small-area expansion.
pub const ASYMPTOTIC_AREA: f64 = 1e-9;
/// Accuracy claimed for [`general_profile_oracle`].
pub const ORACLE_TOL: f64 = 1e-9;

/// One row of a profile table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProfileSample {
    pub theta: f64,
    pub area: f64,
    pub length: f64,
    pub curvature: f64,
}

/// Sampled `(A, L)` pairs along an arc family.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProfileTable {
    pub samples: Vec<ProfileSample>,
    pub domain_id: String,
    /// Largest gap between the Green's-theorem area and the integral of `dL/k`.
    pub crosscheck_error: f64,
    /// True when the domain was turned by `π/2` to put its flatter side on y.
    pub rotated: bool,
}

impl ProfileTable {
    /// CSV with header `theta,area,length,curvature` at 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("theta,area,length,curvature\n");
        for s in &self.samples {
            let _ = writeln!(out, "{:.16e},{:.16e},{:.16e},{:.16e}", s.theta, s.area, s.length, s.curvature);
        }
        out
    }

    /// Both area and length strictly increase along the table.
    pub fn is_strictly_monotone(&self) -> bool {
        self.samples
            .windows(2)
            .all(|w| w[1].area > w[0].area && w[1].length > w[0].length)
    }

    /// Largest violation of concavity of `L²` as a function of `A`
    /// (positive second divided difference); zero for a concave profile.
    pub fn concavity_defect(&self) -> f64 {
        self.samples
            .windows(3)
            .map(|w| {
                let (a0, a1, a2) = (w[0].area, w[1].area, w[2].area);
                let (l0, l1, l2) = (w[0].length.powi(2), w[1].length.powi(2), w[2].length.powi(2));
                let s1 = (l1 - l0) / (a1 - a0);
                let s2 = (l2 - l1) / (a2 - a1);
                (s2 - s1).max(0.0) / s1.abs().max(1.0)
            })
            .fold(0.0, f64::max)
    }

    /// Shape-preserving interpolant of `L` against `A`.
    pub fn interpolant(&self) -> Option<MonotoneCubic> {
        MonotoneCubic::new(
            self.samples.iter().map(|s| s.area).collect(),
            self.samples.iter().map(|s| s.length).collect(),
        )
    }
}

/// Chebyshev-graded angles `(π/4)(1 − cos(πj/n))`, `j = 1..n`, ending at `π/2`.
pub fn graded_grid(n: usize) -> Vec<f64> {
    (1..=n)
        .map(|j| FRAC_PI_4 * (1.0 - (PI * j as f64 / n as f64).cos()))
        .collect()
}

/// `2(sin δ − δ cos δ)/sin³δ`, the factor `E'(δ)/sin δ` of the area rate.
fn rate_factor(d: f64) -> f64 {
    if d.abs() < 1e-2 {
        let d2 = d * d;
        // sin δ − δ cos δ = δ³/3 − δ⁵/30 + δ⁷/840, sin³δ = δ³(1 − δ²/2 + 13δ⁴/120)
        let num = 1.0 / 3.0 - d2 / 30.0 + d2 * d2 / 840.0;
        let den = 1.0 - d2 / 2.0 + 13.0 * d2 * d2 / 120.0;
        2.0 * num / den
    } else {
        let s = d.sin();
        2.0 * (s - d * d.cos()) / (s * s * s)
    }
}

/// Arcs with endpoints at normal angles `±θ` of a domain symmetric about the
/// x-axis.
#[derive(Debug, Clone)]
pub struct SymmetricFamily<'a> {
    curve: &'a SupportCurve,
    builder: ArcBuilder<'a>,
}

impl<'a> SymmetricFamily<'a> {
    pub fn new(curve: &'a SupportCurve) -> Self {
        Self { curve, builder: ArcBuilder::new(curve) }
    }

    pub fn curve(&self) -> &SupportCurve {
        self.curve
    }

    /// Height of the endpoint, `C_y(θ)`.
    pub fn y(&self, theta: f64) -> f64 {
        self.curve.position(theta)[1]
    }

    /// `L = (2δ / sin δ)·y` with `δ = π/2 − θ`.
    pub fn length(&self, theta: f64) -> f64 {
        2.0 * disk::delta_over_sin(FRAC_PI_2 - theta) * self.y(theta)
    }

    /// `k = cos θ / y`.
    pub fn curvature(&self, theta: f64) -> f64 {
        (FRAC_PI_2 - theta).sin() / self.y(theta)
    }

    /// The residual check is relaxed like `1/θ` because round-off in the
    /// endpoints is amplified by the short chord.
    pub fn arc(&self, theta: f64) -> Result<PerfectArc> {
        self.builder.build_with_tolerance(-theta, theta, arcs::PERFECT_TOL.max(1e-14 / theta))
    }

    /// Enclosed area by Green's theorem.
    pub fn area(&self, theta: f64) -> Result<f64> {
        Ok(self.arc(theta)?.enclosed_area)
    }

    /// `dA/dθ = (1/k) dL/dθ`.
    pub fn area_rate(&self, theta: f64) -> f64 {
        let d = FRAC_PI_2 - theta;
        let y = self.y(theta);
        let rho = self.curve.radius_of_curvature(theta);
        -rate_factor(d) * y * y + 2.0 * disk::delta_over_sin(d) * rho * y
    }

    /// `∫₀^θ dA/dθ` by Gauss–Legendre quadrature.
    pub fn area_by_quadrature(&self, theta: f64) -> f64 {
        numeric::integrate(|t| self.area_rate(t), 0.0, theta, 8)
    }

    pub fn sample(&self, theta: f64) -> Result<ProfileSample> {
        Ok(ProfileSample {
            theta,
            area: self.area(theta)?,
            length: self.length(theta),
            curvature: self.curvature(theta),
        })
    }

    /// Family parameter cutting off `area ∈ (0, A(π/2)]`.
    pub fn theta_for_area(&self, area: f64) -> Result<f64> {
        let top = self.area(FRAC_PI_2)?;
        if !(area > 0.0 && area <= top * (1.0 + 1e-14)) {
            return Err(Error::OutOfRange { what: "area", value: area });
        }
        if area >= top {
            return Ok(FRAC_PI_2);
        }
        let f = |t: f64| self.area(t).map(|a| a - area).unwrap_or(f64::NAN);
        numeric::brent(f, 1e-10, FRAC_PI_2, 1e-15)
    }

    /// Length of the family member cutting off `area`.
    pub fn length_at_area(&self, area: f64) -> Result<f64> {
        Ok(self.length(self.theta_for_area(area)?))
    }
}

/// Copy of a symmetric domain oriented so the larger curvature sits at `θ = 0`,
/// and whether a rotation was applied.
pub fn orient_major_axis(curve: &SupportCurve) -> (SupportCurve, bool) {
    if curve.major_axis_on_x() {
        (curve.clone(), false)
    } else {
        (curve.rotated(FRAC_PI_2), true)
    }
}

fn check_normalized(curve: &SupportCurve) -> Result<()> {
    let area = curve.area();
    if (area - PI).abs() > AREA_TOL * PI {
        Err(Error::NotNormalized { area })
    } else {
        Ok(())
    }
}

/// Profile table of the symmetric arc family around the x-axis vertex.
pub fn symmetric_profile(curve: &SupportCurve, n_samples: usize) -> Result<ProfileTable> {
    if n_samples < 2 {
        return Err(Error::OutOfRange { what: "n_samples", value: n_samples as f64 });
    }
    check_normalized(curve)?;
    let report = curve.classify()?;
    if !(report.is_disk || report.is_class_a) {
        return Err(Error::NotClassA);
    }
    let (oriented, rotated) = orient_major_axis(curve);
    let family = SymmetricFamily::new(&oriented);
    let grid = graded_grid(n_samples);
    let samples: Vec<ProfileSample> = grid
        .par_iter()
        .map(|&t| family.sample(t))
        .collect::<Result<_>>()?;
    // cumulative quadrature of dA over consecutive grid cells
    let pieces: Vec<f64> = (0..grid.len())
        .into_par_iter()
        .map(|j| {
            let lo = if j == 0 { 0.0 } else { grid[j - 1] };
            numeric::integrate(|t| family.area_rate(t), lo, grid[j], 2)
        })
        .collect();
    let mut acc = 0.0;
    let mut crosscheck_error: f64 = 0.0;
    for (s, piece) in samples.iter().zip(&pieces) {
        acc += piece;
        crosscheck_error = crosscheck_error.max((acc - s.area).abs());
    }
    Ok(ProfileTable { samples, domain_id: curve.domain_id(), crosscheck_error, rotated })
}

/// Outcome of comparing a domain's symmetric profile with the disk's.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConjectureReport {
    /// Largest sampled value of `L(A) / L*(A)`.
    pub sup_ratio: f64,
    pub argmax_area: f64,
    pub argmax_theta: f64,
    pub passed: bool,
    /// `min (1 − L/L*)·√(π/(2A))` over the samples and the `A → 0` limit
    /// `2(κ_max − 1)/(3π)`; tends to zero as the domain approaches the disk.
    pub margin: f64,
    pub margin_limit: f64,
    pub kappa_max: f64,
    /// `|(π − 2θ)/(π − 2θ*) − (L/L*)²|` at an interior argmax; `None` when the
    /// supremum is approached at the small-area end.
    pub stationarity_residual: Option<f64>,
    pub ratio_at_half_area: f64,
    pub n_samples: usize,
}

/// Ratio and scaled margin at one family parameter.
fn ratio_at(family: &SymmetricFamily, theta: f64, kappa_max: f64) -> Result<(f64, f64, f64)> {
    let area = family.area(theta)?;
    let ratio = if area < ASYMPTOTIC_AREA {
        let root = (2.0 * PI * area).sqrt();
        (root - 4.0 * kappa_max * area / (3.0 * PI)) / (root - 4.0 * area / (3.0 * PI))
    } else {
        family.length(theta) / disk::profile_I(area)?
    };
    Ok((area, ratio, (1.0 - ratio) * (PI / (2.0 * area)).sqrt()))
}

/// Check `I(A) < I_disk(A)` along the symmetric family of a non-disk domain.
pub fn conjecture_check(curve: &SupportCurve, n_samples: usize) -> Result<ConjectureReport> {
    if n_samples < 3 {
        return Err(Error::OutOfRange { what: "n_samples", value: n_samples as f64 });
    }
    let report = curve.classify()?;
    if report.is_disk {
        return Err(Error::IsDisk);
    }
    if !report.is_class_a {
        return Err(Error::NotClassA);
    }
    check_normalized(curve)?;
    let (oriented, _) = orient_major_axis(curve);
    let family = SymmetricFamily::new(&oriented);
    let kappa_max = report.kappa_max;
    let grid = graded_grid(n_samples);
    let rows: Vec<(f64, f64, f64)> = grid
        .par_iter()
        .map(|&t| ratio_at(&family, t, kappa_max))
        .collect::<Result<_>>()?;
    let (j, _) = rows
        .iter()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |acc, (i, r)| if r.1 > acc.1 { (i, r.1) } else { acc });
    let margin_limit = 2.0 * (kappa_max - 1.0) / (3.0 * PI);
    let margin = rows.iter().map(|r| r.2).fold(margin_limit, f64::min);
    let (mut sup_ratio, mut argmax_theta, mut argmax_area) = (rows[j].1, grid[j], rows[j].0);
    let mut stationarity_residual = None;
    if j > 0 && j + 1 < grid.len() {
        let (t, r) = numeric::golden_max(
            |t| ratio_at(&family, t, kappa_max).map(|r| r.1).unwrap_or(f64::NEG_INFINITY),
            grid[j - 1],
            grid[j + 1],
            1e-12,
        );
        if r > sup_ratio {
            sup_ratio = r;
            argmax_theta = t;
            argmax_area = family.area(t)?;
        }
        let t_star = disk::area_to_theta(argmax_area)?;
        stationarity_residual =
            Some(((PI - 2.0 * argmax_theta) / (PI - 2.0 * t_star) - sup_ratio * sup_ratio).abs());
    }
    Ok(ConjectureReport {
        sup_ratio,
        argmax_area,
        argmax_theta,
        passed: sup_ratio < 1.0,
        margin,
        margin_limit,
        kappa_max,
        stationarity_residual,
        ratio_at_half_area: rows[rows.len() - 1].1,
        n_samples,
    })
}

/// A perfect arc found by the enumeration, with its orientation fixed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CloudEntry {
    pub theta_minus: f64,
    pub theta_plus: f64,
    pub area: f64,
    pub length: f64,
    pub curvature: f64,
}

/// Result of a profile query.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleResult {
    pub target_area: f64,
    pub length: f64,
    pub arc: PerfectArc,
    /// Endpoint pairs of all polished candidates within `ORACLE_TOL` of the
    /// minimum. Several entries that are not images of one another under a
    /// symmetry of the domain indicate a possible kink in the profile.
    pub minimizers: Vec<[f64; 2]>,
}

/// Perfect arcs of a domain enumerated on a grid of endpoint angles.
#[derive(Debug, Clone)]
pub struct ArcCloud<'a> {
    builder: ArcBuilder<'a>,
    entries: Vec<CloudEntry>,
    grid: usize,
}

fn entry(arc: &PerfectArc) -> CloudEntry {
    CloudEntry {
        theta_minus: arc.endpoint_thetas[0],
        theta_plus: arc.endpoint_thetas[1],
        area: arc.enclosed_area,
        length: arc.length,
        curvature: arc.curvature,
    }
}

impl<'a> ArcCloud<'a> {
    /// Scan `grid` rows of fixed first endpoint for roots of the reduced
    /// two-point function and keep the contained perfect arcs, in both
    /// orientations. On a circle every pair is perfect and, by rotational
    /// symmetry, one row suffices.
    pub fn build(curve: &'a SupportCurve, grid: usize) -> Result<Self> {
        if grid < 16 {
            return Err(Error::OutOfRange { what: "grid", value: grid as f64 });
        }
        curve.check_convex(crate::geometry::DEFAULT_GRID)?;
        let builder = ArcBuilder::new(curve);
        let entries: Vec<CloudEntry> = if curve.is_circle() {
            let n = grid.min(128);
            (1..n)
                .filter_map(|k| builder.build(0.0, TAU * k as f64 / n as f64).ok())
                .map(|a| entry(&a))
                .collect()
        } else {
            let rows: Vec<Vec<CloudEntry>> = (0..grid)
                .into_par_iter()
                .map(|i| {
                    let t = TAU * i as f64 / grid as f64;
                    let mut out = Vec::new();
                    for root in arcs::partners(curve, t, grid) {
                        for (lo, hi) in [(root, t), (t, root + TAU)] {
                            if let Ok(a) = builder.build(lo, hi) {
                                if a.contained {
                                    out.push(entry(&a));
                                }
                            }
                        }
                    }
                    out
                })
                .collect();
            rows.into_iter().flatten().collect()
        };
        if entries.is_empty() {
            return Err(Error::NoArcAtArea { area: f64::NAN });
        }
        Ok(Self { builder, entries, grid })
    }

    pub fn entries(&self) -> &[CloudEntry] {
        &self.entries
    }

    /// Shortest curve cutting off `target` area.
    ///
    /// Every cloud entry is turned into a candidate by keeping its endpoints
    /// and bending the connecting arc until it cuts off `target`; the best
    /// distinct candidates are then polished by minimizing that length over
    /// both endpoints. The stationary points of this constrained length are
    /// exactly the perfect arcs of area `target`.
    pub fn query(&self, target: f64) -> Result<OracleResult> {
        let total = self.builder.domain_area();
        if !(target > 0.0 && target < total) {
            return Err(Error::OutOfRange { what: "target area", value: target });
        }
        let lambda = |x: [f64; 2]| {
            self.builder
                .arc_for_area(x[0], x[1], target)
                .map(|(_, l)| l)
                .unwrap_or(f64::INFINITY)
        };
        let mut scored: Vec<(f64, [f64; 2])> = self
            .entries
            .par_iter()
            .map(|e| {
                let x = [e.theta_minus, e.theta_plus];
                (lambda(x), x)
            })
            .filter(|(l, _)| l.is_finite())
            .collect();
        scored.sort_by(|a, b| a.0.total_cmp(&b.0));
        let spacing = TAU / self.grid as f64;
        let mut seeds: Vec<[f64; 2]> = Vec::new();
        for (_, x) in &scored {
            if seeds.len() >= 6 {
                break;
            }
            let close = seeds.iter().any(|s| {
                (numeric::wrap_angle(s[0] - x[0] + PI) - PI).abs() < 3.0 * spacing
                    && (numeric::wrap_angle(s[1] - x[1] + PI) - PI).abs() < 3.0 * spacing
            });
            if !close {
                seeds.push(*x);
            }
        }
        let polished: Vec<([f64; 2], f64)> = seeds
            .par_iter()
            .map(|&s| numeric::nelder_mead_2d(lambda, s, 0.5 * spacing, 1e-15, 4000))
            .collect();
        let mut best: Option<(f64, PerfectArc)> = None;
        let mut found = Vec::new();
        for (x, l) in &polished {
            let Some((phi, _)) = self.builder.arc_for_area(x[0], x[1], target) else { continue };
            let Ok(arc) = self.builder.arc_with_turning(x[0], x[1], phi) else { continue };
            if !arc.contained || arc.orthogonality_residual > 1e-5 {
                continue;
            }
            found.push((*l, *x));
            if best.as_ref().map_or(true, |(bl, _)| l < bl) {
                best = Some((*l, arc));
            }
        }
        let (length, arc) = best.ok_or(Error::NoArcAtArea { area: target })?;
        let minimizers = found
            .into_iter()
            .filter(|(l, _)| l - length <= ORACLE_TOL)
            .map(|(_, x)| x)
            .collect();
        Ok(OracleResult { target_area: target, length, arc, minimizers })
    }
}

/// Isoperimetric profile at `target_area` by arc enumeration and constrained
/// minimization; independent of the symmetric family.
pub fn general_profile_oracle(curve: &SupportCurve, target_area: f64, grid: usize) -> Result<f64> {
    Ok(ArcCloud::build(curve, grid)?.query(target_area)?.length)
}
