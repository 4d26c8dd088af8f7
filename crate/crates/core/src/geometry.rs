//! Smooth convex plane curves described by a truncated Fourier support function.
//!
//! A convex curve is parametrized by the angle `θ` of its outward unit normal
//! `N = (cos θ, sin θ)`. With the support function
//!
//! ```text
//! h(θ) = a₀ + Σ_{m≥1} aₘ cos mθ + bₘ sin mθ
//! ```
//!
//! the boundary point is `C(θ) = h N + h' T` with `T = (−sin θ, cos θ)`, the
//! radius of curvature is `ρ = h + h''` and the curvature is `κ = 1/ρ`. The
//! curve is convex exactly when `ρ > 0`, and it closes up automatically
//! because `h` is periodic.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::numeric::{self, Vec2};

/// Nodes used for convexity checks, vertex scans and periodic quadrature.
pub const DEFAULT_GRID: usize = 4096;
/// A coefficient below this magnitude counts as zero for symmetry tests.
pub const SYMMETRY_TOL: f64 = 1e-12;
/// Refinement tolerance for vertex locations.
pub const VERTEX_TOL: f64 = 1e-12;
/// `|κ''|` below this at a vertex marks it as degenerate.
pub const DEGENERATE_VERTEX_TOL: f64 = 1e-8;

/// Sample count ceiling for building Fourier data from a sampled support function.
const MAX_SAMPLES: usize = 8192;

/// A convex curve given by its Fourier support function.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SupportCurve {
    /// `a₀, a₁, …, a_M`
    #[serde(rename = "support_cos")]
    cos: Vec<f64>,
    /// `b₁, …, b_M`
    #[serde(rename = "support_sin")]
    sin: Vec<f64>,
}

/// A boundary point together with its Frenet frame.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvePoint {
    pub theta: f64,
    pub position: [f64; 2],
    pub tangent: [f64; 2],
    pub normal: [f64; 2],
    pub curvature: f64,
}

/// Summary of the shape class of a domain.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DomainClassReport {
    #[serde(rename = "is_class_A")]
    pub is_class_a: bool,
    pub is_disk: bool,
    pub symmetric_both_axes: bool,
    /// Roots of `κ'(θ)` in `[0, 2π)`; empty for a disk.
    pub vertex_thetas: Vec<f64>,
    /// Vertices where `|κ''| < 1e-8`; their presence blocks classification.
    pub degenerate_vertex_thetas: Vec<f64>,
    pub kappa_max: f64,
    pub kappa_min: f64,
    pub area: f64,
    pub perimeter: f64,
    pub note: String,
}

impl SupportCurve {
    /// Builds a curve from `a₀..a_M` and `b₁..b_M`, rejecting non-convex data.
    pub fn new(cos_coeffs: Vec<f64>, sin_coeffs: Vec<f64>) -> Result<Self> {
        if cos_coeffs.is_empty() {
            return Err(Error::InvalidSpec("support_cos must contain a0".into()));
        }
        if cos_coeffs.iter().chain(&sin_coeffs).any(|c| !c.is_finite()) {
            return Err(Error::InvalidSpec("non-finite support coefficient".into()));
        }
        let curve = Self::from_parts(cos_coeffs, sin_coeffs);
        curve.check_convex(DEFAULT_GRID)?;
        Ok(curve)
    }

    fn from_parts(mut cos: Vec<f64>, mut sin: Vec<f64>) -> Self {
        let m = (cos.len() - 1).max(sin.len());
        cos.resize(m + 1, 0.0);
        sin.resize(m, 0.0);
        while cos.len() > 1 && cos[cos.len() - 1] == 0.0 && sin[sin.len() - 1] == 0.0 {
            cos.pop();
            sin.pop();
        }
        Self { cos, sin }
    }

    /// Circle of the given radius centred at the origin.
    pub fn disk(radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::OutOfRange { what: "radius", value: radius });
        }
        Ok(Self::from_parts(vec![radius], vec![]))
    }

    /// Axis-aligned ellipse with semi-axes `a` (along x) and `b` (along y).
    ///
    /// Writing `a cos θ + i b sin θ = ((a+b)/2)·e^{iθ}(1 + q e^{−2iθ})` with
    /// `q = (a−b)/(a+b)` gives `h = ((a+b)/2)·|1 + q e^{−2iθ}|`, whose cosine
    /// coefficients follow from two binomial series in `q`. Only even modes
    /// appear; the series is truncated once the modes fall below `1e-20·a₀`.
    pub fn ellipse(a: f64, b: f64) -> Result<Self> {
        for (what, v) in [("a", a), ("b", b)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::OutOfRange { what, value: v });
            }
        }
        let q = (a - b) / (a + b);
        let half_sum = 0.5 * (a + b);
        // binom[k] = C(1/2, k) q^k
        let mut binom = vec![1.0];
        loop {
            let k = binom.len() - 1;
            let next = binom[k] * (0.5 - k as f64) / (k as f64 + 1.0) * q;
            if next.abs() < 1e-22 || binom.len() > 200_000 {
                break;
            }
            binom.push(next);
        }
        let coeff = |n: usize| -> f64 {
            binom.iter().zip(&binom[n..]).map(|(x, y)| x * y).sum::<f64>()
        };
        let c0 = coeff(0);
        let mut cos = vec![half_sum * c0];
        for n in 1..binom.len() {
            let c = 2.0 * half_sum * coeff(n);
            if c.abs() < 1e-20 * cos[0] {
                break;
            }
            cos.push(0.0);
            cos.push(c);
        }
        let sin = vec![0.0; cos.len() - 1];
        let curve = Self::from_parts(cos, sin);
        curve.check_convex(DEFAULT_GRID)?;
        Ok(curve)
    }

    /// Ellipse of area `π` with axis ratio `(1 + ε)²`, i.e. semi-axes
    /// `1 + ε` and `1/(1 + ε)`.
    pub fn near_disk_ellipse(eps: f64) -> Result<Self> {
        Self::ellipse(1.0 + eps, 1.0 / (1.0 + eps))
    }

    /// Fourier data of a smooth periodic support function given as a closure.
    /// The sample count doubles until the upper half of the spectrum is at
    /// round-off level.
    pub fn from_fn<F: Fn(f64) -> f64>(h: F) -> Result<Self> {
        let mut n = 64;
        loop {
            let samples: Vec<f64> = (0..n).map(|j| h(TAU * j as f64 / n as f64)).collect();
            if samples.iter().any(|v| !v.is_finite()) {
                return Err(Error::InvalidSpec("support function produced a non-finite sample".into()));
            }
            let (mut cos, mut sin) = real_dft(&samples);
            let scale = cos[0].abs().max(1e-300);
            let tail = (n / 4..n / 2)
                .map(|m| cos[m].abs().max(sin[m - 1].abs()))
                .fold(0.0, f64::max);
            if tail <= 1e-14 * scale || n >= MAX_SAMPLES {
                // coefficients at round-off level would break exact symmetries
                for c in cos.iter_mut().skip(1).chain(sin.iter_mut()) {
                    if c.abs() <= 1e-15 * scale {
                        *c = 0.0;
                    }
                }
                let keep = (1..cos.len()).rev().find(|&m| cos[m] != 0.0 || sin[m - 1] != 0.0).unwrap_or(0);
                let cos = cos[..=keep].to_vec();
                let sin = sin[..keep].to_vec();
                let curve = Self::from_parts(cos, sin);
                curve.check_convex(DEFAULT_GRID)?;
                return Ok(curve);
            }
            n *= 2;
        }
    }

    /// `a₀, a₁, …, a_M`.
    pub fn cos_coeffs(&self) -> &[f64] {
        &self.cos
    }

    /// `b₁, …, b_M`.
    pub fn sin_coeffs(&self) -> &[f64] {
        &self.sin
    }

    /// Highest Fourier mode present.
    pub fn degree(&self) -> usize {
        self.cos.len() - 1
    }

    /// `(aₘ, bₘ)` for `m ≥ 1`; `b₀` is zero.
    #[inline]
    pub(crate) fn mode(&self, m: usize) -> (f64, f64) {
        if m == 0 {
            (self.cos[0], 0.0)
        } else {
            (self.cos[m], self.sin[m - 1])
        }
    }

    /// `h, h', …, h⁽⁵⁾` at `theta`.
    pub fn derivatives(&self, theta: f64) -> [f64; 6] {
        let mut out = [self.cos[0], 0.0, 0.0, 0.0, 0.0, 0.0];
        let (s1, c1) = theta.sin_cos();
        let (mut s, mut c) = (0.0_f64, 1.0_f64);
        for m in 1..self.cos.len() {
            if m % 16 == 0 {
                (s, c) = (m as f64 * theta).sin_cos();
            } else {
                (s, c) = (s * c1 + c * s1, c * c1 - s * s1);
            }
            let (a, b) = (self.cos[m], self.sin[m - 1]);
            if a == 0.0 && b == 0.0 {
                continue;
            }
            let mf = m as f64;
            let p = a * c + b * s;
            let q = b * c - a * s;
            let m2 = mf * mf;
            out[0] += p;
            out[1] += mf * q;
            out[2] -= m2 * p;
            out[3] -= m2 * mf * q;
            out[4] += m2 * m2 * p;
            out[5] += m2 * m2 * mf * q;
        }
        out
    }

    pub fn support(&self, theta: f64) -> f64 {
        self.derivatives(theta)[0]
    }

    /// `ρ = h + h''`.
    pub fn radius_of_curvature(&self, theta: f64) -> f64 {
        let d = self.derivatives(theta);
        d[0] + d[2]
    }

    pub fn curvature(&self, theta: f64) -> f64 {
        1.0 / self.radius_of_curvature(theta)
    }

    /// `κ, dκ/dθ, d²κ/dθ², d³κ/dθ³`.
    pub fn curvature_theta_derivs(&self, theta: f64) -> [f64; 4] {
        let d = self.derivatives(theta);
        let (r0, r1, r2, r3) = (d[0] + d[2], d[1] + d[3], d[2] + d[4], d[3] + d[5]);
        let k = 1.0 / r0;
        let k2 = k * k;
        [
            k,
            -r1 * k2,
            -r2 * k2 + 2.0 * r1 * r1 * k2 * k,
            -r3 * k2 + 6.0 * r1 * r2 * k2 * k - 6.0 * r1 * r1 * r1 * k2 * k2,
        ]
    }

    /// Arclength derivatives `κ, κ_s, κ_ss, κ_sss` (using `dθ/ds = κ`).
    pub fn curvature_arclength_derivs(&self, theta: f64) -> [f64; 4] {
        let [k, k1, k2, k3] = self.curvature_theta_derivs(theta);
        let ks = k * k1;
        let kss = k * (k * k2 + k1 * k1);
        let ksss = k * (k * (k * k3 + 3.0 * k1 * k2) + k1 * (k * k2 + k1 * k1));
        [k, ks, kss, ksss]
    }

    pub fn position(&self, theta: f64) -> Vec2 {
        let d = self.derivatives(theta);
        let (s, c) = theta.sin_cos();
        [d[0] * c - d[1] * s, d[0] * s + d[1] * c]
    }

    /// Boundary point, frame and curvature at normal angle `theta`.
    pub fn eval(&self, theta: f64) -> Result<CurvePoint> {
        let d = self.derivatives(theta);
        let rho = d[0] + d[2];
        if rho <= 0.0 || !rho.is_finite() {
            return Err(Error::NonConvex { theta, rho });
        }
        let (s, c) = theta.sin_cos();
        Ok(CurvePoint {
            theta,
            position: [d[0] * c - d[1] * s, d[0] * s + d[1] * c],
            tangent: [-s, c],
            normal: [c, s],
            curvature: 1.0 / rho,
        })
    }

    /// Smallest radius of curvature on a uniform grid, with its location.
    pub fn min_radius_of_curvature(&self, nodes: usize) -> (f64, f64) {
        (0..nodes)
            .map(|j| {
                let t = TAU * j as f64 / nodes as f64;
                (t, self.radius_of_curvature(t))
            })
            .fold((0.0, f64::INFINITY), |acc, (t, r)| if r < acc.1 { (t, r) } else { acc })
    }

    pub fn check_convex(&self, nodes: usize) -> Result<()> {
        let (theta, rho) = self.min_radius_of_curvature(nodes);
        if rho > 0.0 {
            Ok(())
        } else {
            Err(Error::NonConvex { theta, rho })
        }
    }

    /// Enclosed area `½∮ h (h + h'') dθ`, evaluated exactly by Parseval.
    pub fn area(&self) -> f64 {
        let mut area = PI * self.cos[0] * self.cos[0];
        for m in 1..self.cos.len() {
            let (a, b) = self.mode(m);
            let mf = m as f64;
            area += 0.5 * PI * (1.0 - mf * mf) * (a * a + b * b);
        }
        area
    }

    /// `∮ ρ dθ = 2π a₀`.
    pub fn perimeter(&self) -> f64 {
        TAU * self.cos[0]
    }

    /// Uniformly scaled copy.
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            cos: self.cos.iter().map(|c| c * factor).collect(),
            sin: self.sin.iter().map(|c| c * factor).collect(),
        }
    }

    /// Similar curve with the requested area.
    pub fn normalize_area(&self, target: f64) -> Result<Self> {
        if !(target > 0.0 && target.is_finite()) {
            return Err(Error::OutOfRange { what: "target area", value: target });
        }
        self.check_convex(DEFAULT_GRID)?;
        let area = self.area();
        Ok(self.scaled((target / area).sqrt()))
    }

    /// Copy rotated counterclockwise by `angle`.
    pub fn rotated(&self, angle: f64) -> Self {
        let mut cos = self.cos.clone();
        let mut sin = self.sin.clone();
        for m in 1..cos.len() {
            let (a, b) = self.mode(m);
            let (s, c) = (m as f64 * angle).sin_cos();
            cos[m] = a * c - b * s;
            sin[m - 1] = a * s + b * c;
        }
        Self { cos, sin }
    }

    /// Copy translated by `offset`.
    pub fn translated(&self, offset: Vec2) -> Self {
        let mut cos = self.cos.clone();
        let mut sin = self.sin.clone();
        if cos.len() < 2 {
            cos.push(0.0);
            sin.push(0.0);
        }
        cos[1] += offset[0];
        sin[0] += offset[1];
        Self::from_parts(cos, sin)
    }

    /// True when the curve is a circle (only modes 0 and 1 present).
    pub fn is_circle(&self) -> bool {
        let scale = self.cos[0].abs();
        (2..self.cos.len()).all(|m| {
            let (a, b) = self.mode(m);
            a.abs().max(b.abs()) <= 1e-14 * scale
        })
    }

    /// Radius and centre of a circular boundary.
    pub(crate) fn circle_parts(&self) -> (f64, Vec2) {
        let (a1, b1) = if self.cos.len() > 1 { self.mode(1) } else { (0.0, 0.0) };
        (self.cos[0], [a1, b1])
    }

    /// Invariance under both reflections `x ↦ −x` and `y ↦ −y`: no sine terms
    /// and no odd cosine terms.
    pub fn symmetric_in_both_axes(&self) -> bool {
        self.sin.iter().all(|b| b.abs() < SYMMETRY_TOL)
            && self.cos.iter().enumerate().all(|(m, a)| m % 2 == 0 || a.abs() < SYMMETRY_TOL)
    }

    /// Arclength from `θ = 0` to `theta` (closed form, valid for any real `theta`).
    pub fn arclength(&self, theta: f64) -> f64 {
        let mut s = self.cos[0] * theta;
        for m in 2..self.cos.len() {
            let (a, b) = self.mode(m);
            let mf = m as f64;
            let (sn, cs) = (mf * theta).sin_cos();
            s += (1.0 - mf * mf) / mf * (a * sn + b * (1.0 - cs));
        }
        s
    }

    /// Inverse of [`SupportCurve::arclength`].
    pub fn theta_at_arclength(&self, s: f64) -> f64 {
        let total = self.perimeter();
        let mut t = TAU * s / total;
        for _ in 0..60 {
            let step = (self.arclength(t) - s) / self.radius_of_curvature(t);
            t -= step;
            if step.abs() < 1e-15 * (1.0 + t.abs()) {
                return t;
            }
        }
        // Newton stalled: fall back to a bracket of one full turn.
        let lo = TAU * s / total - PI;
        numeric::bisect(|t| self.arclength(t) - s, lo, lo + TAU, 1e-15).unwrap_or(t)
    }

    /// `(∮ cos θ/κ dθ, ∮ sin θ/κ dθ)` by the periodic trapezoid rule; both vanish
    /// for a closed curve.
    pub fn closure_integrals(&self, nodes: usize) -> (f64, f64) {
        let w = TAU / nodes as f64;
        (0..nodes).fold((0.0, 0.0), |acc, j| {
            let t = w * j as f64;
            let rho = self.radius_of_curvature(t);
            (acc.0 + w * t.cos() * rho, acc.1 + w * t.sin() * rho)
        })
    }

    /// `∮ κ ds = ∮ κ ρ dθ`, equal to `2π`.
    pub fn total_curvature(&self, nodes: usize) -> f64 {
        let w = TAU / nodes as f64;
        (0..nodes)
            .map(|j| {
                let t = w * j as f64;
                let rho = self.radius_of_curvature(t);
                w * rho / rho
            })
            .sum()
    }

    /// Short stable identifier derived from the coefficients.
    pub fn domain_id(&self) -> String {
        let mut hasher = Sha256::new();
        for c in self.cos.iter().chain(&self.sin) {
            hasher.update(c.to_le_bytes());
        }
        hasher.finalize()[..8].iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Classify the domain: disk, symmetric four-vertex class, or neither.
    pub fn classify(&self) -> Result<DomainClassReport> {
        self.check_convex(DEFAULT_GRID)?;
        let n = DEFAULT_GRID;
        // Nodes sit half a cell off the axes so that vertices on the axes fall
        // strictly inside a cell, where a sign change is robust to round-off.
        let thetas: Vec<f64> = (0..=n).map(|j| TAU * (j as f64 + 0.5) / n as f64).collect();
        let drho: Vec<f64> = thetas
            .iter()
            .map(|&t| {
                let d = self.derivatives(t);
                d[1] + d[3]
            })
            .collect();
        let kappas: Vec<f64> = thetas[..n].iter().map(|&t| self.curvature(t)).collect();
        let mut kappa_max = kappas.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let mut kappa_min = kappas.iter().copied().fold(f64::INFINITY, f64::min);
        let symmetric = self.symmetric_in_both_axes();
        let scale = self.cos[0].abs();
        let is_disk = drho.iter().all(|v| v.abs() < 1e-12 * scale);

        let mut vertices = Vec::new();
        let mut degenerate = Vec::new();
        if !is_disk {
            for i in numeric::sign_change_cells(&drho) {
                let root = if drho[i] == 0.0 {
                    thetas[i]
                } else {
                    numeric::bisect(
                        |t| {
                            let d = self.derivatives(t);
                            d[1] + d[3]
                        },
                        thetas[i],
                        thetas[i + 1],
                        VERTEX_TOL,
                    )?
                };
                let root = numeric::wrap_angle(root);
                if vertices.iter().any(|&v: &f64| (v - root).abs() < 1e-9 || (TAU - (v - root).abs()) < 1e-9) {
                    continue;
                }
                let [k, _, k2, _] = self.curvature_theta_derivs(root);
                kappa_max = kappa_max.max(k);
                kappa_min = kappa_min.min(k);
                if k2.abs() < DEGENERATE_VERTEX_TOL {
                    degenerate.push(root);
                }
                vertices.push(root);
            }
            vertices.sort_by(f64::total_cmp);
        }
        let is_class_a = symmetric && !is_disk && vertices.len() == 4 && degenerate.is_empty();
        let note = if is_disk {
            "disk: curvature is constant, vertex set is degenerate".to_string()
        } else if !degenerate.is_empty() {
            format!("{} degenerate vertex(es); not classified", degenerate.len())
        } else if is_class_a {
            "symmetric in both axes with exactly four vertices".to_string()
        } else if !symmetric {
            "not symmetric in both coordinate axes".to_string()
        } else {
            format!("symmetric but has {} vertices", vertices.len())
        };
        Ok(DomainClassReport {
            is_class_a,
            is_disk,
            symmetric_both_axes: symmetric,
            vertex_thetas: vertices,
            degenerate_vertex_thetas: degenerate,
            kappa_max,
            kappa_min,
            area: self.area(),
            perimeter: self.perimeter(),
            note,
        })
    }

    /// `κ_max ≥ √(π/A)`: returns `(κ_max, √(π/A))`.
    pub fn pestov_ionin(&self, report: &DomainClassReport) -> (f64, f64) {
        (report.kappa_max, (PI / self.area()).sqrt())
    }

    /// `true` if the domain's larger curvature sits on the x-axis vertices,
    /// i.e. the major axis lies along x.
    pub(crate) fn major_axis_on_x(&self) -> bool {
        self.curvature(0.0) >= self.curvature(FRAC_PI_2)
    }
}

/// Closed-form primitive of `h ρ`, so that the sector area swept between two
/// normal angles is `½(F(θ₁) − F(θ₀))`.
#[derive(Debug, Clone)]
pub struct AreaPrimitive {
    mean: f64,
    /// `(Aₙ, Bₙ)` of `h ρ = mean + Σ Aₙ cos nθ + Bₙ sin nθ`, `n ≥ 1`.
    modes: Vec<(f64, f64)>,
}

impl AreaPrimitive {
    pub fn new(curve: &SupportCurve) -> Self {
        let m_max = curve.degree();
        // complex coefficients c_m of h for m = −M..M, stored at index m + M
        let width = 2 * m_max + 1;
        let mut c = vec![(0.0, 0.0); width];
        for m in 0..=m_max {
            let (a, b) = curve.mode(m);
            if m == 0 {
                c[m_max] = (a, 0.0);
            } else {
                c[m_max + m] = (0.5 * a, -0.5 * b);
                c[m_max - m] = (0.5 * a, 0.5 * b);
            }
        }
        let rho = |idx: usize| {
            let m = idx as f64 - m_max as f64;
            let (re, im) = c[idx];
            ((1.0 - m * m) * re, (1.0 - m * m) * im)
        };
        let product = |n: i64| -> (f64, f64) {
            let (mut re, mut im) = (0.0, 0.0);
            for (i, &(a, b)) in c.iter().enumerate().take(width) {
                let j = n + (2 * m_max) as i64 - i as i64;
                if j < 0 || j >= width as i64 {
                    continue;
                }
                let (x, y) = rho(j as usize);
                re += a * x - b * y;
                im += a * y + b * x;
            }
            (re, im)
        };
        let mean = product(0).0;
        let modes = (1..=2 * m_max as i64)
            .map(|n| {
                let (re, im) = product(n);
                (2.0 * re, -2.0 * im)
            })
            .collect();
        Self { mean, modes }
    }

    /// `∫₀^θ h ρ dθ'`.
    pub fn eval(&self, theta: f64) -> f64 {
        let mut out = self.mean * theta;
        for (k, &(a, b)) in self.modes.iter().enumerate() {
            if a == 0.0 && b == 0.0 {
                continue;
            }
            let n = (k + 1) as f64;
            let (s, c) = (n * theta).sin_cos();
            out += (a * s + b * (1.0 - c)) / n;
        }
        out
    }

    /// Area swept by the position vector from `t0` to `t1`: `½∫ h ρ dθ`.
    pub fn sector(&self, t0: f64, t1: f64) -> f64 {
        0.5 * (self.eval(t1) - self.eval(t0))
    }
}

/// Real DFT of uniform samples on `[0, 2π)`: returns `(a₀..a_{N/2−1}, b₁..b_{N/2−1})`.
fn real_dft(samples: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let n = samples.len();
    let half = n / 2;
    let mut cos = vec![0.0; half];
    let mut sin = vec![0.0; half.saturating_sub(1)];
    cos[0] = samples.iter().sum::<f64>() / n as f64;
    for m in 1..half {
        let (mut a, mut b) = (0.0, 0.0);
        for (j, v) in samples.iter().enumerate() {
            // exact reduction of m·j mod n keeps the angles accurate
            let k = (m * j) % n;
            let (s, c) = (TAU * k as f64 / n as f64).sin_cos();
            a += v * c;
            b += v * s;
        }
        cos[m] = 2.0 * a / n as f64;
        sin[m - 1] = 2.0 * b / n as f64;
    }
    (cos, sin)
}

/// JSON description of a domain.
///
/// ```json
/// { "preset": "ellipse", "params": { "a": 1.4142135623730951, "b": 0.7071067811865476 } }
/// { "support_cos": [1.0, 0.0, 0.15], "support_sin": [], "normalize_area": 3.141592653589793 }
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum DomainSpec {
    Preset {
        preset: Preset,
        #[serde(default)]
        params: PresetParams,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        normalize_area: Option<f64>,
    },
    Fourier {
        support_cos: Vec<f64>,
        #[serde(default)]
        support_sin: Vec<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        normalize_area: Option<f64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Preset {
    Disk,
    Ellipse,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresetParams {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radius: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<f64>,
    /// Area-π ellipse with semi-axes `1 + eps`, `1/(1 + eps)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
}

impl DomainSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidSpec(e.to_string()))
    }

    pub fn build(&self) -> Result<SupportCurve> {
        let (curve, normalize) = match self {
            DomainSpec::Preset { preset, params, normalize_area } => {
                let curve = match preset {
                    Preset::Disk => SupportCurve::disk(params.radius.unwrap_or(1.0))?,
                    Preset::Ellipse => match (params.eps, params.a, params.b) {
                        (Some(eps), None, None) => SupportCurve::near_disk_ellipse(eps)?,
                        (None, Some(a), Some(b)) => SupportCurve::ellipse(a, b)?,
                        _ => {
                            return Err(Error::InvalidSpec(
                                "ellipse needs either {a, b} or {eps}".into(),
                            ))
                        }
                    },
                };
                (curve, *normalize_area)
            }
            DomainSpec::Fourier { support_cos, support_sin, normalize_area } => {
                (SupportCurve::new(support_cos.clone(), support_sin.clone())?, *normalize_area)
            }
        };
        match normalize {
            Some(area) => curve.normalize_area(area),
            None => Ok(curve),
        }
    }
}
