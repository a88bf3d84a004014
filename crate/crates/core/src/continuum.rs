//! Continuum limit: Riesz fractional-derivative kernels on the line and on
//! the L-periodic string, and the convergence of h-scaled lattice elements
//! to them.

use crate::error::{domain, invalid, Result};
use crate::lattice1d::{element_infinite_closed, FractionalOrder};
use crate::special::zeta::hurwitz_zeta_unchecked;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KernelPeriod {
    Finite(f64),
    Infinite,
}

/// Continuum kernel descriptor. `rho0` is the mass density and `a_alpha`
/// the elastic modulus in `Ω²(h) = A_α h^{−α}`, `μ(h) = ρ₀ h`.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelSpec {
    order: FractionalOrder,
    period: KernelPeriod,
    rho0: f64,
    a_alpha: f64,
}

impl KernelSpec {
    pub fn infinite(alpha: f64) -> Result<Self> {
        Self::new(alpha, KernelPeriod::Infinite, 1.0, 1.0)
    }

    pub fn periodic(alpha: f64, length: f64) -> Result<Self> {
        Self::new(alpha, KernelPeriod::Finite(length), 1.0, 1.0)
    }

    pub fn new(alpha: f64, period: KernelPeriod, rho0: f64, a_alpha: f64) -> Result<Self> {
        let order = FractionalOrder::new(alpha)?;
        if order.is_integer_half() {
            return Err(domain(format!(
                "pointwise kernels need non-integer alpha/2, got alpha = {alpha}"
            )));
        }
        if let KernelPeriod::Finite(l) = period {
            if !(l > 0.0) || !l.is_finite() {
                return Err(invalid(format!("period must be positive, got {l}")));
            }
        }
        for (name, v) in [("rho0", rho0), ("a_alpha", a_alpha)] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(invalid(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(Self { order, period, rho0, a_alpha })
    }

    pub fn alpha(&self) -> f64 {
        self.order.alpha()
    }

    pub fn period(&self) -> KernelPeriod {
        self.period
    }

    pub fn rho0(&self) -> f64 {
        self.rho0
    }

    pub fn a_alpha(&self) -> f64 {
        self.a_alpha
    }

    /// `Γ(α+1) sin(απ/2) / π`.
    pub fn coefficient(&self) -> f64 {
        self.order.riesz_coefficient()
    }
}

/// `𝒦_∞(x) = Γ(α+1) sin(απ/2) / π · |x|^{−α−1}`.
pub fn riesz_kernel_infinite(spec: &KernelSpec, x: f64) -> Result<f64> {
    if spec.period != KernelPeriod::Infinite {
        return Err(invalid("riesz_kernel_infinite needs an infinite-period spec"));
    }
    if x == 0.0 || !x.is_finite() {
        return Err(domain(format!("kernel is singular at x = {x}")));
    }
    Ok(spec.coefficient() * x.abs().powf(-spec.alpha() - 1.0))
}

/// Kernel of the L-periodic string, `Σ_n 𝒦_∞(x − nL)`, evaluated as
/// `c L^{−α−1} [ζ(α+1, ξ) + ζ(α+1, 1−ξ)]` with `ξ = x/L` folded into (0, 1).
pub fn riesz_kernel_periodic(spec: &KernelSpec, x: f64) -> Result<f64> {
    let l = match spec.period {
        KernelPeriod::Finite(l) => l,
        KernelPeriod::Infinite => return Err(invalid("riesz_kernel_periodic needs a finite period")),
    };
    if !x.is_finite() {
        return Err(domain(format!("kernel argument must be finite, got {x}")));
    }
    let xi = (x / l).rem_euclid(1.0);
    if xi == 0.0 || xi == 1.0 {
        return Err(domain(format!("kernel is singular at x = {x} (multiple of L = {l})")));
    }
    let s = spec.alpha() + 1.0;
    let bracket = hurwitz_zeta_unchecked(s, xi) + hurwitz_zeta_unchecked(s, 1.0 - xi);
    Ok(spec.coefficient() * l.powf(-s) * bracket)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRow {
    pub h: f64,
    pub p: u64,
    /// `−ρ₀ A_α h^{−1−α} f(p)` with `Ω² = 1`
    pub value: f64,
    pub reference: f64,
    pub abs_error: f64,
    pub rel_error: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub alpha: f64,
    pub x: f64,
    pub rows: Vec<ConvergenceRow>,
}

impl ConvergenceReport {
    /// True when the absolute error strictly decreases along `rows`.
    pub fn is_monotone(&self) -> bool {
        self.rows.windows(2).all(|w| w[1].abs_error < w[0].abs_error)
    }

    /// Least-squares slope of `ln(abs_error)` against `ln(h)`.
    pub fn empirical_rate(&self) -> Option<f64> {
        let pts: Vec<(f64, f64)> = self
            .rows
            .iter()
            .filter(|r| r.abs_error > 0.0)
            .map(|r| (r.h.ln(), r.abs_error.ln()))
            .collect();
        if pts.len() < 2 {
            return None;
        }
        let m = pts.len() as f64;
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
        let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
        (sxx > 0.0).then(|| sxy / sxx)
    }

    pub fn final_rel_error(&self) -> Option<f64> {
        self.rows.last().map(|r| r.rel_error)
    }
}

/// Compares h-scaled lattice elements at `p = round(x/h)` with
/// `ρ₀ A_α 𝒦_∞(x)`, one row per spacing in the given order.
pub fn continuum_convergence_check(spec: &KernelSpec, x: f64, h_values: &[f64]) -> Result<ConvergenceReport> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(invalid(format!("x must be positive, got {x}")));
    }
    if h_values.is_empty() {
        return Err(invalid("at least one spacing h is required"));
    }
    let alpha = spec.alpha();
    let unit = FractionalOrder::new(alpha)?;
    let infinite = KernelSpec { period: KernelPeriod::Infinite, ..spec.clone() };
    let reference = spec.rho0 * spec.a_alpha * riesz_kernel_infinite(&infinite, x)?;
    let mut rows = Vec::with_capacity(h_values.len());
    for &h in h_values {
        if !(h > 0.0) || !h.is_finite() {
            return Err(invalid(format!("spacing h must be positive, got {h}")));
        }
        let p = (x / h).round();
        if p < 1.0 {
            return Err(invalid(format!("spacing h = {h} exceeds x = {x}")));
        }
        let p = p as u64;
        let value = -spec.rho0 * spec.a_alpha * h.powf(-1.0 - alpha) * element_infinite_closed(&unit, p);
        let abs_error = (value - reference).abs();
        rows.push(ConvergenceRow { h, p, value, reference, abs_error, rel_error: abs_error / reference.abs() });
    }
    Ok(ConvergenceReport { alpha, x, rows })
}
