//! Gauss–Legendre rules and the even, 2π-periodic integrator used for the
//! dispersion-relation Fourier coefficients.

use std::f64::consts::PI;

use crate::error::{invalid, FracError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadratureScheme {
    /// Equally spaced nodes on the full period, refined by doubling.
    PeriodicTrapezoid,
    /// Gauss–Legendre panels graded geometrically toward κ = 0 with
    /// adaptive bisection.
    AdaptiveGauss,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub scheme: QuadratureScheme,
    /// Gauss order per panel, or the starting node count for the trapezoid rule.
    pub points: usize,
    pub abs_tol: f64,
    pub rel_tol: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self { scheme: QuadratureScheme::AdaptiveGauss, points: 20, abs_tol: 1e-12, rel_tol: 0.0 }
    }
}

impl QuadratureSpec {
    pub fn new(scheme: QuadratureScheme, points: usize, abs_tol: f64, rel_tol: f64) -> Result<Self> {
        let spec = Self { scheme, points, abs_tol, rel_tol };
        spec.validate()?;
        Ok(spec)
    }

    pub fn trapezoid(points: usize, abs_tol: f64) -> Result<Self> {
        Self::new(QuadratureScheme::PeriodicTrapezoid, points, abs_tol, 0.0)
    }

    pub fn validate(&self) -> Result<()> {
        if self.points < 16 {
            return Err(invalid(format!("quadrature needs at least 16 points, got {}", self.points)));
        }
        if !(self.abs_tol >= 0.0 && self.rel_tol >= 0.0) {
            return Err(invalid("quadrature tolerances must be non-negative"));
        }
        if self.abs_tol == 0.0 && self.rel_tol == 0.0 {
            return Err(invalid("at least one of abs_tol, rel_tol must be positive"));
        }
        Ok(())
    }

    pub(crate) fn target(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

/// Gauss–Legendre nodes and weights on [−1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(order: usize) -> Self {
        assert!(order >= 1);
        let n = order;
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..(n + 1) / 2 {
            let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut deriv = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, z);
                for k in 2..=n {
                    let k = k as f64;
                    let p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                let pn = if n == 1 { z } else { p1 };
                let pm = if n == 1 { 1.0 } else { p0 };
                deriv = n as f64 * (z * pn - pm) / (z * z - 1.0);
                let dz = pn / deriv;
                z -= dz;
                if dz.abs() < 1e-16 {
                    break;
                }
            }
            let w = 2.0 / ((1.0 - z * z) * deriv * deriv);
            nodes[i] = z;
            nodes[n - 1 - i] = -z;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    /// Nodes and weights mapped onto `[a, b]`.
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes.iter().zip(&self.weights).map(move |(x, w)| (mid + half * x, half * w))
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F, a: f64, b: f64) -> f64 {
        self.mapped(a, b).map(|(x, w)| w * f(x)).sum()
    }
}

/// Smallest panel width of the geometric grading toward κ = 0.
pub const GRADING_FLOOR: f64 = 1e-8;

/// Breakpoints `0 < w < 2w < … < π/2 < π` halving toward zero until the
/// innermost panel is narrower than `floor`.
pub fn graded_breakpoints(upper: f64, floor: f64) -> Vec<f64> {
    let mut pts = vec![upper];
    let mut x = upper;
    while x > floor {
        x *= 0.5;
        pts.push(x);
    }
    pts.push(0.0);
    pts.reverse();
    pts
}

const MAX_DEPTH: u32 = 40;

fn adaptive_panel<F: Fn(f64) -> f64>(
    rule: &GaussLegendre,
    f: &F,
    a: f64,
    b: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> (f64, f64) {
    let mid = 0.5 * (a + b);
    let left = rule.integrate(f, a, mid);
    let right = rule.integrate(f, mid, b);
    let refined = left + right;
    let err = (refined - whole).abs();
    if err <= tol || depth >= MAX_DEPTH || (b - a) < 1e-15 * b.abs().max(1.0) {
        return (refined, err);
    }
    let (l, el) = adaptive_panel(rule, f, a, mid, left, 0.5 * tol, depth + 1);
    let (r, er) = adaptive_panel(rule, f, mid, b, right, 0.5 * tol, depth + 1);
    (l + r, el + er)
}

/// `∫_{−π}^{π} f(κ) dκ` for an even, 2π-periodic `f`, evaluated as `2 ∫_0^π`.
///
/// The adaptive scheme grades panels geometrically (ratio 1/2) toward
/// κ = 0 where integrands of the form `|κ|^α` lose smoothness. The
/// trapezoid scheme doubles its node count from `spec.points` until two
/// successive estimates agree.
pub fn integrate_even_periodic<F: Fn(f64) -> f64>(f: F, spec: &QuadratureSpec) -> Result<f64> {
    spec.validate()?;
    match spec.scheme {
        QuadratureScheme::AdaptiveGauss => adaptive_gauss(&f, spec),
        QuadratureScheme::PeriodicTrapezoid => trapezoid(&f, spec),
    }
}

fn adaptive_gauss<F: Fn(f64) -> f64>(f: &F, spec: &QuadratureSpec) -> Result<f64> {
    let rule = GaussLegendre::new(spec.points);
    let breaks = graded_breakpoints(PI, GRADING_FLOOR);
    let coarse: Vec<f64> = breaks.windows(2).map(|w| rule.integrate(f, w[0], w[1])).collect();
    let rough: f64 = coarse.iter().sum();
    // factor 2 from folding the symmetric interval
    let tol = 0.5 * spec.target(2.0 * rough);
    let mut total = 0.0;
    let mut err = 0.0;
    for (w, c) in breaks.windows(2).zip(&coarse) {
        let share = tol * (w[1] - w[0]) / PI;
        let (v, e) = adaptive_panel(&rule, f, w[0], w[1], *c, share, 0);
        total += v;
        err += e;
    }
    let value = 2.0 * total;
    let requested = spec.target(value);
    if 2.0 * err > requested {
        return Err(FracError::Tolerance { achieved: 2.0 * err, requested });
    }
    Ok(value)
}

const TRAPEZOID_MAX_NODES: usize = 1 << 24;

fn trapezoid<F: Fn(f64) -> f64>(f: &F, spec: &QuadratureSpec) -> Result<f64> {
    // Nodes at κ_k = 2πk/m; evenness folds them onto [0, π].
    let rule = |m: usize| -> f64 {
        let h = 2.0 * PI / m as f64;
        let half = m / 2;
        let mut s = f(0.0);
        for k in 1..half {
            s += 2.0 * f(k as f64 * h);
        }
        if m % 2 == 0 {
            s += f(PI);
        } else {
            s += 2.0 * f(half as f64 * h);
        }
        s * h
    };
    let mut m = spec.points;
    let mut prev = rule(m);
    loop {
        m *= 2;
        let cur = rule(m);
        let err = (cur - prev).abs();
        if err <= spec.target(cur) {
            return Ok(cur);
        }
        if m >= TRAPEZOID_MAX_NODES {
            return Err(FracError::Tolerance { achieved: err, requested: spec.target(cur) });
        }
        prev = cur;
    }
}
