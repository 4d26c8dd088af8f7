//! Area-preserving perturbations of the unit disk.
//!
//! A boundary variation `f(u) = Σ aₙ cos nu + bₙ sin nu` (no constant term)
//! changes the length of the disk's perfect arc with endpoints `u`, `u + 2b`
//! at first order by
//!
//! ```text
//! l(u) = −cot b ∫_u^{u+2b} f + f(u) + f(u + 2b).
//! ```
//!
//! For a single mode `n` this vanishes identically exactly when
//! `cos b sin nb − n sin b cos nb = 0`. The experiment here builds the
//! perturbed domains `λ(s)(1 + s f(u))(cos u, sin u)` at area `π`, computes
//! their profile with the general oracle and fits its expansion in `s`.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::disk;
use crate::error::{Error, Result};
use crate::geometry::{SupportCurve, DEFAULT_GRID};
use crate::numeric;
use crate::profile::{self, ArcCloud};

/// Root-scan nodes for the mode condition.
pub const MODE_SCAN_NODES: usize = 10_000;
/// Distance kept from the degenerate ends `b = 0` and `b = π/2`.
pub const MODE_SCAN_MARGIN: f64 = 1e-6;
/// Bisection tolerance for mode roots.
pub const MODE_ROOT_TOL: f64 = 1e-13;

/// Zero-mean boundary variation given by Fourier coefficients of modes `n ≥ 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PerturbationField {
    /// Coefficient of `cos nu` at index `n − 1`.
    pub fourier_cos: Vec<f64>,
    /// Coefficient of `sin nu` at index `n − 1`.
    pub fourier_sin: Vec<f64>,
    #[serde(default)]
    pub description: String,
}

impl PerturbationField {
    pub fn new(fourier_cos: Vec<f64>, fourier_sin: Vec<f64>, description: impl Into<String>) -> Self {
        Self { fourier_cos, fourier_sin, description: description.into() }
    }

    /// `cos nu`.
    pub fn cos_mode(n: usize) -> Self {
        assert!(n >= 1, "mode index starts at 1");
        let mut c = vec![0.0; n];
        c[n - 1] = 1.0;
        Self::new(c, vec![], format!("cos {n}u"))
    }

    /// `sin nu`.
    pub fn sin_mode(n: usize) -> Self {
        assert!(n >= 1, "mode index starts at 1");
        let mut s = vec![0.0; n];
        s[n - 1] = 1.0;
        Self::new(vec![], s, format!("sin {n}u"))
    }

    pub fn max_mode(&self) -> usize {
        self.fourier_cos.len().max(self.fourier_sin.len())
    }

    /// `(aₙ, bₙ)` for `n ≥ 1`.
    pub fn coeff(&self, n: usize) -> (f64, f64) {
        (
            self.fourier_cos.get(n - 1).copied().unwrap_or(0.0),
            self.fourier_sin.get(n - 1).copied().unwrap_or(0.0),
        )
    }

    /// `f, f', f''` at `u`.
    pub fn derivs(&self, u: f64) -> [f64; 3] {
        let mut out = [0.0; 3];
        for n in 1..=self.max_mode() {
            let (a, b) = self.coeff(n);
            if a == 0.0 && b == 0.0 {
                continue;
            }
            let nf = n as f64;
            let (s, c) = (nf * u).sin_cos();
            out[0] += a * c + b * s;
            out[1] += nf * (b * c - a * s);
            out[2] -= nf * nf * (a * c + b * s);
        }
        out
    }

    pub fn value(&self, u: f64) -> f64 {
        self.derivs(u)[0]
    }

    /// Zero-mean primitive `Σ (aₙ sin nu − bₙ cos nu)/n`.
    pub fn antiderivative(&self, u: f64) -> f64 {
        (1..=self.max_mode())
            .map(|n| {
                let (a, b) = self.coeff(n);
                let (s, c) = (n as f64 * u).sin_cos();
                (a * s - b * c) / n as f64
            })
            .sum()
    }

    /// `Σ aₙ² + bₙ²`, so that `∫₀^{2π} f² = π·Σ`.
    pub fn coefficient_energy(&self) -> f64 {
        self.fourier_cos.iter().chain(&self.fourier_sin).map(|c| c * c).sum()
    }

    /// True when only modes `n = 1` are present (a rigid translation).
    pub fn is_translation(&self) -> bool {
        (2..=self.max_mode()).all(|n| self.coeff(n) == (0.0, 0.0))
    }
}

fn check_half_angle(b: f64) -> Result<()> {
    if b > 0.0 && b < FRAC_PI_2 {
        Ok(())
    } else {
        Err(Error::OutOfRange { what: "b", value: b })
    }
}

/// First variation of the length of the disk arc with endpoints `u`, `u + 2b`.
pub fn first_variation_l(f: &PerturbationField, b: f64, u: f64) -> Result<f64> {
    check_half_angle(b)?;
    Ok(l_unchecked(f, b, u))
}

/// `l` for `b ∈ (0, π/2]`; at `π/2` the arcs are diameters and `cot b = 0`.
fn l_unchecked(f: &PerturbationField, b: f64, u: f64) -> f64 {
    let cot = if b == FRAC_PI_2 { 0.0 } else { 1.0 / b.tan() };
    let v = u + 2.0 * b;
    -cot * (f.antiderivative(v) - f.antiderivative(u)) + f.value(u) + f.value(v)
}

/// `∫₀^{2π} l(u) du` by the trapezoid rule, which is exact for the
/// trigonometric polynomial `l`.
pub fn mean_l(f: &PerturbationField, b: f64) -> Result<f64> {
    check_half_angle(b)?;
    let nodes = 4 * (f.max_mode() + 1);
    let h = TAU / nodes as f64;
    let mut total = 0.0;
    for j in 0..nodes {
        total += first_variation_l(f, b, h * j as f64)?;
    }
    Ok(total * h)
}

/// Minimum of `l` over `u ∈ [0, 2π)` and where it occurs.
pub fn min_l(f: &PerturbationField, b: f64) -> Result<(f64, f64)> {
    check_half_angle(b)?;
    Ok(min_l_unchecked(f, b))
}

fn min_l_unchecked(f: &PerturbationField, b: f64) -> (f64, f64) {
    let nodes = 64 * (f.max_mode() + 1);
    let h = TAU / nodes as f64;
    let values: Vec<f64> = (0..nodes).map(|j| l_unchecked(f, b, h * j as f64)).collect();
    let j = (0..nodes).min_by(|&i, &k| values[i].total_cmp(&values[k])).unwrap_or(0);
    let (u, neg) = numeric::golden_max(
        |u| -l_unchecked(f, b, u),
        h * (j as f64 - 1.0),
        h * (j as f64 + 1.0),
        1e-12,
    );
    (numeric::wrap_angle(u), (-neg).min(values[j]))
}

/// `max_u |l(u)|` on a uniform grid.
pub fn l_sup_norm(f: &PerturbationField, b: f64, nodes: usize) -> Result<f64> {
    let h = TAU / nodes as f64;
    (0..nodes).try_fold(0.0_f64, |acc, j| Ok(acc.max(first_variation_l(f, b, h * j as f64)?.abs())))
}

/// `cos b sin nb − n sin b cos nb`; `l ≡ 0` for `f = cos nu` or `sin nu`
/// exactly at its zeros.
pub fn mode_condition(n: i64, b: f64) -> f64 {
    implicit_mode_function(n as f64, b)
}

/// `F(x, y) = cos y sin xy − x sin y cos xy`.
pub fn implicit_mode_function(x: f64, y: f64) -> f64 {
    y.cos() * (x * y).sin() - x * y.sin() * (x * y).cos()
}

/// A contact half-angle at which mode `n` has vanishing first variation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModeRoot {
    pub n: i64,
    pub b: f64,
    /// Disk-family parameter, equal to `b`.
    pub theta: f64,
    /// Area cut off by the disk arcs with half-angle `b`.
    pub area: f64,
}

/// Roots `b ∈ (0, π/2)` of the mode condition for fixed `n` (the slice
/// `x = n` of the zero set of `F`). Empty for `n < 2`, where the condition
/// either holds identically or is not a deformation mode.
pub fn find_mode_roots(n: i64) -> Vec<ModeRoot> {
    if n < 2 {
        return Vec::new();
    }
    let lo = MODE_SCAN_MARGIN;
    let hi = FRAC_PI_2 - MODE_SCAN_MARGIN;
    let nodes = MODE_SCAN_NODES;
    let grid: Vec<f64> = (0..nodes).map(|i| lo + (hi - lo) * i as f64 / (nodes - 1) as f64).collect();
    let values: Vec<f64> = grid.iter().map(|&b| mode_condition(n, b)).collect();
    numeric::sign_change_cells(&values)
        .into_iter()
        .filter_map(|i| numeric::bisect(|b| mode_condition(n, b), grid[i], grid[i + 1], MODE_ROOT_TOL).ok())
        .map(|b| polish_mode_root(n, b))
        .map(|b| ModeRoot { n, b, theta: b, area: disk::area_unchecked(b) })
        .collect()
}

/// Newton steps with `d/db = (n² − 1) sin b sin nb`, kept only while they
/// reduce the residual.
fn polish_mode_root(n: i64, mut b: f64) -> f64 {
    let nf = n as f64;
    for _ in 0..3 {
        let slope = (nf * nf - 1.0) * b.sin() * (nf * b).sin();
        if slope == 0.0 {
            break;
        }
        let next = b - mode_condition(n, b) / slope;
        if mode_condition(n, next).abs() >= mode_condition(n, b).abs() {
            break;
        }
        b = next;
    }
    b
}

/// Roots `x ∈ (0, x_max]` of `F(x, b) = 0` for fixed `b` (the slice `y = b`).
/// `x = 1` is always among them.
pub fn mode_roots_at_angle(b: f64, x_max: f64) -> Vec<f64> {
    let nodes = ((x_max * 2000.0).ceil() as usize).max(100);
    let grid: Vec<f64> = (0..=nodes).map(|i| MODE_SCAN_MARGIN + (x_max - MODE_SCAN_MARGIN) * i as f64 / nodes as f64).collect();
    let values: Vec<f64> = grid.iter().map(|&x| implicit_mode_function(x, b)).collect();
    numeric::sign_change_cells(&values)
        .into_iter()
        .filter_map(|i| numeric::bisect(|x| implicit_mode_function(x, b), grid[i], grid[i + 1], MODE_ROOT_TOL).ok())
        .collect()
}

/// Zero set of `F` as line segments from marching squares.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ImplicitCurve {
    pub segments: Vec<[[f64; 2]; 2]>,
}

impl ImplicitCurve {
    /// CSV with header `x,y`; each segment contributes its two endpoints.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,y\n");
        for seg in &self.segments {
            for p in seg {
                let _ = writeln!(out, "{:.16e},{:.16e}", p[0], p[1]);
            }
        }
        out
    }
}

/// Marching-squares extraction of `F(x, y) = 0` on a `resolution²` cell grid.
pub fn implicit_curve_sample(x_range: (f64, f64), y_range: (f64, f64), resolution: usize) -> Result<ImplicitCurve> {
    for v in [x_range.0, x_range.1, y_range.0, y_range.1] {
        if !v.is_finite() {
            return Err(Error::OutOfRange { what: "range", value: v });
        }
    }
    if resolution < 2 || x_range.1 <= x_range.0 || y_range.1 <= y_range.0 {
        return Err(Error::OutOfRange { what: "resolution", value: resolution as f64 });
    }
    let n = resolution;
    let xs: Vec<f64> = (0..=n).map(|i| x_range.0 + (x_range.1 - x_range.0) * i as f64 / n as f64).collect();
    let ys: Vec<f64> = (0..=n).map(|j| y_range.0 + (y_range.1 - y_range.0) * j as f64 / n as f64).collect();
    let values: Vec<Vec<f64>> = xs.iter().map(|&x| ys.iter().map(|&y| implicit_mode_function(x, y)).collect()).collect();
    let segments: Vec<[[f64; 2]; 2]> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            let values = &values;
            let (xs, ys) = (&xs, &ys);
            (0..n).flat_map(move |j| {
                // corners counterclockwise from (i, j)
                let corners = [(i, j), (i + 1, j), (i + 1, j + 1), (i, j + 1)];
                let v = corners.map(|(a, b)| values[a][b]);
                let p = corners.map(|(a, b)| [xs[a], ys[b]]);
                let mut crossings = Vec::with_capacity(4);
                for e in 0..4 {
                    let (k, m) = (e, (e + 1) % 4);
                    let (va, vb) = (v[k], v[m]);
                    if (va >= 0.0) != (vb >= 0.0) {
                        let t = va / (va - vb);
                        crossings.push([p[k][0] + t * (p[m][0] - p[k][0]), p[k][1] + t * (p[m][1] - p[k][1])]);
                    }
                }
                let mut segs = Vec::new();
                match crossings.len() {
                    2 => segs.push([crossings[0], crossings[1]]),
                    4 => {
                        // saddle: pair crossings according to the centre value
                        let centre = implicit_mode_function(
                            0.5 * (p[0][0] + p[2][0]),
                            0.5 * (p[0][1] + p[2][1]),
                        );
                        if (centre >= 0.0) == (v[0] >= 0.0) {
                            segs.push([crossings[0], crossings[3]]);
                            segs.push([crossings[1], crossings[2]]);
                        } else {
                            segs.push([crossings[0], crossings[1]]);
                            segs.push([crossings[2], crossings[3]]);
                        }
                    }
                    _ => {}
                }
                segs
            })
        })
        .collect();
    Ok(ImplicitCurve { segments })
}

/// `−2∫₀^{2π} f² du = −2π Σ (aₙ² + bₙ²)`.
pub fn aggregate_second_variation(f: &PerturbationField) -> f64 {
    -2.0 * PI * f.coefficient_energy()
}

/// The area-`π` domain `λ(s)(1 + s f(u))(cos u, sin u)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialCurve {
    pub field: PerturbationField,
    pub s: f64,
    pub lambda: f64,
}

/// Build the perturbed domain, checking convexity on a dense grid.
pub fn build_perturbed_domain(f: &PerturbationField, s: f64) -> Result<RadialCurve> {
    if !s.is_finite() {
        return Err(Error::OutOfRange { what: "s", value: s });
    }
    let raw_area = PI + 0.5 * s * s * PI * f.coefficient_energy();
    let lambda = (PI / raw_area).sqrt();
    if !(lambda.is_finite() && lambda > 0.0) {
        return Err(Error::AreaNormalizationFailure { area: raw_area });
    }
    let curve = RadialCurve { field: f.clone(), s, lambda };
    for j in 0..DEFAULT_GRID {
        let u = TAU * j as f64 / DEFAULT_GRID as f64;
        let [r, r1, r2] = curve.radius(u);
        if r <= 0.0 || r * r + 2.0 * r1 * r1 - r * r2 <= 0.0 {
            return Err(Error::NonConvexPerturbation { s, u });
        }
    }
    Ok(curve)
}

impl RadialCurve {
    /// `r, r', r''` at polar angle `u`.
    pub fn radius(&self, u: f64) -> [f64; 3] {
        let [f0, f1, f2] = self.field.derivs(u);
        [
            self.lambda * (1.0 + self.s * f0),
            self.lambda * self.s * f1,
            self.lambda * self.s * f2,
        ]
    }

    pub fn position(&self, u: f64) -> [f64; 2] {
        let r = self.radius(u)[0];
        [r * u.cos(), r * u.sin()]
    }

    pub fn tangent(&self, u: f64) -> [f64; 2] {
        let [r, r1, _] = self.radius(u);
        let (s, c) = u.sin_cos();
        let t = [r1 * c - r * s, r1 * s + r * c];
        let n = t[0].hypot(t[1]);
        [t[0] / n, t[1] / n]
    }

    /// Outward unit normal.
    pub fn normal(&self, u: f64) -> [f64; 2] {
        let t = self.tangent(u);
        [t[1], -t[0]]
    }

    pub fn curvature(&self, u: f64) -> f64 {
        let [r, r1, r2] = self.radius(u);
        (r * r + 2.0 * r1 * r1 - r * r2) / (r * r + r1 * r1).powf(1.5)
    }

    /// `λ²(π + (s²/2)·π·Σ coeff²) = π`.
    pub fn area(&self) -> f64 {
        self.lambda * self.lambda * (PI + 0.5 * self.s * self.s * PI * self.field.coefficient_energy())
    }

    /// Normal angle at polar angle `u`: `u − atan2(r', r)`.
    pub fn normal_angle(&self, u: f64) -> f64 {
        let [r, r1, _] = self.radius(u);
        u - r1.atan2(r)
    }

    /// Polar angle whose outward normal has angle `theta`.
    pub fn polar_angle_for_normal(&self, theta: f64) -> f64 {
        let mut u = theta;
        for _ in 0..60 {
            let [r, r1, r2] = self.radius(u);
            let rate = (r * r + 2.0 * r1 * r1 - r * r2) / (r * r + r1 * r1);
            let step = (self.normal_angle(u) - theta) / rate;
            u -= step;
            if step.abs() < 1e-16 * (1.0 + u.abs()) {
                break;
            }
        }
        u
    }

    /// Support-function form: `h(θ) = r² / √(r² + r'²)` at `u(θ)`.
    pub fn to_support_curve(&self) -> Result<SupportCurve> {
        let curve = SupportCurve::from_fn(|theta| {
            let u = self.polar_angle_for_normal(theta);
            let [r, r1, _] = self.radius(u);
            r * r / (r * r + r1 * r1).sqrt()
        })?;
        let area = curve.area();
        if (area - PI).abs() > 1e-12 * PI {
            return Err(Error::AreaNormalizationFailure { area });
        }
        Ok(curve)
    }
}

/// One-parameter family of area-`π` domains starting at the unit disk.
#[derive(Debug, Clone, PartialEq)]
pub enum PerturbationFamily {
    /// `λ(s)(1 + s f(u))` in polar form.
    Linear(PerturbationField),
    /// The unit disk translated by `(s, 0)`: support function `1 + s cos θ`.
    Translation,
}

impl PerturbationFamily {
    pub fn domain_at(&self, s: f64) -> Result<SupportCurve> {
        match self {
            PerturbationFamily::Linear(f) => build_perturbed_domain(f, s)?.to_support_curve(),
            PerturbationFamily::Translation => SupportCurve::new(vec![1.0, s], vec![0.0]),
        }
    }

    pub fn description(&self) -> String {
        match self {
            PerturbationFamily::Linear(f) => f.description.clone(),
            PerturbationFamily::Translation => "translation".into(),
        }
    }

    /// The first-order field, `cos u` for the translation.
    pub fn field(&self) -> PerturbationField {
        match self {
            PerturbationFamily::Linear(f) => f.clone(),
            PerturbationFamily::Translation => PerturbationField::cos_mode(1),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    FirstOrderDecrease,
    SecondOrderDecrease,
    /// Neither coefficient is significantly negative (rigid motions).
    NoDecrease,
}

/// Fitted expansion `I(s) ≈ I(0) + αs + βs²` of the perturbed profile.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub description: String,
    pub area: f64,
    /// Disk half-angle of the arcs cutting off `area` (or its complement).
    pub b: f64,
    pub s_values: Vec<f64>,
    pub profile_values: Vec<f64>,
    /// Closed-form disk profile at `area`.
    pub i0: f64,
    /// Oracle value on the unperturbed disk.
    pub i0_oracle: f64,
    pub alpha: f64,
    pub beta: f64,
    /// `10 × ORACLE_TOL` propagated through the fit.
    pub alpha_noise_floor: f64,
    pub beta_noise_floor: f64,
    /// `min_u l(u)`, the first-order prediction for `α`.
    pub predicted_alpha: f64,
    pub fit_rms: f64,
    pub verdict: Verdict,
}

/// Compute `I_{Ω_s}(area)` along a family and classify its decrease.
pub fn profile_decrease_experiment(
    family: &PerturbationFamily,
    area: f64,
    s_grid: &[f64],
    oracle_grid: usize,
) -> Result<ExperimentReport> {
    if !(area > 0.0 && area < PI) {
        return Err(Error::OutOfRange { what: "area", value: area });
    }
    let mut distinct: Vec<f64> = s_grid.iter().copied().filter(|s| *s != 0.0).collect();
    distinct.sort_by(f64::total_cmp);
    distinct.dedup();
    if distinct.len() < 3 {
        return Err(Error::FitIllConditioned("need at least three distinct nonzero s values"));
    }
    let b = disk::area_to_theta(area.min(PI - area))?;
    let i0 = disk::profile_I(area)?;
    let unit = SupportCurve::disk(1.0)?;
    let i0_oracle = ArcCloud::build(&unit, oracle_grid)
        .and_then(|c| c.query(area))
        .map_err(|e| Error::OracleFailure { s: 0.0, reason: e.to_string() })?
        .length;
    if (i0_oracle - i0).abs() > 1e3 * profile::ORACLE_TOL {
        return Err(Error::OracleFailure { s: 0.0, reason: format!("disk oracle {i0_oracle} vs closed form {i0}") });
    }
    let profile_values: Vec<f64> = s_grid
        .par_iter()
        .map(|&s| {
            let curve = family.domain_at(s)?;
            ArcCloud::build(&curve, oracle_grid)
                .and_then(|c| c.query(area))
                .map(|r| r.length)
                .map_err(|e| Error::OracleFailure { s, reason: e.to_string() })
        })
        .collect::<Result<_>>()?;
    let rows: Vec<[f64; 2]> = s_grid.iter().map(|&s| [s, s * s]).collect();
    let rhs: Vec<f64> = profile_values.iter().map(|v| v - i0).collect();
    let (coef, inv_diag) =
        numeric::least_squares(&rows, &rhs).ok_or(Error::FitIllConditioned("singular normal equations"))?;
    let [alpha, beta] = coef;
    let alpha_noise_floor = 10.0 * profile::ORACLE_TOL * inv_diag[0].sqrt();
    let beta_noise_floor = 10.0 * profile::ORACLE_TOL * inv_diag[1].sqrt();
    let fit_rms = (rows
        .iter()
        .zip(&rhs)
        .map(|(r, y)| (alpha * r[0] + beta * r[1] - y).powi(2))
        .sum::<f64>()
        / rows.len() as f64)
        .sqrt();
    let predicted_alpha = min_l_unchecked(&family.field(), b).1;
    let verdict = if alpha < -alpha_noise_floor {
        Verdict::FirstOrderDecrease
    } else if alpha.abs() <= alpha_noise_floor && beta < -beta_noise_floor {
        Verdict::SecondOrderDecrease
    } else {
        Verdict::NoDecrease
    };
    Ok(ExperimentReport {
        description: family.description(),
        area,
        b,
        s_values: s_grid.to_vec(),
        profile_values,
        i0,
        i0_oracle,
        alpha,
        beta,
        alpha_noise_floor,
        beta_noise_floor,
        predicted_alpha,
        fit_rms,
        verdict,
    })
}

/// Default perturbation amplitudes `{1, …, 5}·10⁻³`.
pub fn default_s_grid() -> Vec<f64> {
    (1..=5).map(|k| k as f64 * 1e-3).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_4;

    #[test]
    fn translation_has_no_first_variation() {
        let f = PerturbationField::cos_mode(1);
        for b in [0.1, 0.7, 1.4] {
            assert!(l_sup_norm(&f, b, 256).unwrap() < 1e-14);
        }
    }

    #[test]
    fn cos2_at_quarter_angle() {
        let f = PerturbationField::cos_mode(2);
        for k in 0..20 {
            let u = 0.31 * k as f64;
            let l = first_variation_l(&f, FRAC_PI_4, u).unwrap();
            assert!((l - (2.0 * u).sin()).abs() < 1e-14);
        }
        let (_, m) = min_l(&f, FRAC_PI_4).unwrap();
        assert!((m + 1.0).abs() < 1e-12);
    }

    #[test]
    fn mean_is_zero() {
        for (f, b) in [
            (PerturbationField::cos_mode(2), FRAC_PI_4),
            (PerturbationField::sin_mode(3), 1.0),
            (PerturbationField::new(vec![1.0, 0.0, 0.0, 0.0, 0.0], vec![0.0, 0.0, 0.0, 0.0, 0.3], "mix"), 0.7),
        ] {
            assert!(mean_l(&f, b).unwrap().abs() < 1e-14);
        }
        assert!(mean_l(&PerturbationField::cos_mode(2), 0.0).is_err());
    }

    #[test]
    fn mode_condition_reductions() {
        for b in [0.2, 0.9, 1.3] {
            let s: f64 = f64::sin(b);
            let c: f64 = f64::cos(b);
            assert!(mode_condition(1, b).abs() < 1e-15);
            assert!((mode_condition(2, b) - 2.0 * s.powi(3)).abs() < 1e-14);
            assert!((mode_condition(3, b) - 8.0 * s.powi(3) * c).abs() < 1e-14);
            assert!((mode_condition(4, b) - 4.0 * s.powi(3) * (6.0 * c * c - 1.0)).abs() < 1e-14);
        }
    }

    #[test]
    fn mode_roots() {
        assert!(find_mode_roots(2).is_empty());
        assert!(find_mode_roots(3).is_empty());
        let r4 = find_mode_roots(4);
        assert_eq!(r4.len(), 1);
        assert!((r4[0].b - (1.0 / 6f64.sqrt()).acos()).abs() < 1e-12);
        assert!((r4[0].area - 1.01687).abs() < 1e-5);
        let r5 = find_mode_roots(5);
        assert_eq!(r5.len(), 1);
        assert!((r5[0].b - (5.0f64 / 3.0).sqrt().atan()).abs() < 1e-12);
        let f = PerturbationField::cos_mode(4);
        assert!(l_sup_norm(&f, r4[0].b, 1024).unwrap() < 1e-10);
    }

    #[test]
    fn horizontal_slice_contains_translation_and_mode_four() {
        let b = (1.0 / 6f64.sqrt()).acos();
        let xs = mode_roots_at_angle(b, 6.0);
        assert!(xs.iter().any(|x| (x - 1.0).abs() < 1e-10), "{xs:?}");
        assert!(xs.iter().any(|x| (x - 4.0).abs() < 1e-10), "{xs:?}");
    }

    #[test]
    fn implicit_curve_contains_trivial_lines() {
        assert_eq!(implicit_mode_function(1.0, 0.8), 0.0);
        let b = (1.0 / 6f64.sqrt()).acos();
        assert!(implicit_mode_function(4.0, b).abs() < 1e-14);
        assert!(implicit_mode_function(2.0, 0.5).abs() > 1e-2);
        let c = implicit_curve_sample((-2.0, 8.0), (0.05, 1.55), 200).unwrap();
        for x0 in [-1.0, 1.0] {
            let near: Vec<_> = c.segments.iter().filter(|s| (s[0][0] - x0).abs() < 1e-6).collect();
            assert!(near.len() > 100, "{x0}: {}", near.len());
        }
    }

    #[test]
    fn aggregate_values() {
        assert!((aggregate_second_variation(&PerturbationField::cos_mode(4)) + 2.0 * PI).abs() < 1e-15);
        let both = PerturbationField::new(vec![0.0, 0.0, 0.0, 1.0], vec![0.0, 0.0, 0.0, 1.0], "");
        assert!((aggregate_second_variation(&both) + 4.0 * PI).abs() < 1e-15);
        assert_eq!(aggregate_second_variation(&PerturbationField::new(vec![], vec![], "")), 0.0);
    }

    #[test]
    fn perturbed_domains() {
        let f = PerturbationField::cos_mode(4);
        let d = build_perturbed_domain(&f, 0.0).unwrap();
        assert_eq!(d.lambda, 1.0);
        let d = build_perturbed_domain(&f, 1e-2).unwrap();
        assert!((d.area() - PI).abs() < 1e-12);
        let h = d.to_support_curve().unwrap();
        assert!((h.area() - PI).abs() < 1e-12);
        for u in [0.0, 0.4, 1.3] {
            let theta = d.normal_angle(u);
            let p = d.position(u);
            let q = h.position(theta);
            assert!((p[0] - q[0]).abs() < 1e-13 && (p[1] - q[1]).abs() < 1e-13);
            assert!((h.curvature(theta) - d.curvature(u)).abs() < 1e-10);
        }
        assert!(matches!(build_perturbed_domain(&f, 0.2), Err(Error::NonConvexPerturbation { .. })));
        let t = PerturbationField::cos_mode(1);
        let raw = PI * (1.0 + 0.5 * 0.01f64.powi(2));
        let d = build_perturbed_domain(&t, 0.01).unwrap();
        assert!((d.lambda - (PI / raw).sqrt()).abs() < 1e-15);
    }
}
