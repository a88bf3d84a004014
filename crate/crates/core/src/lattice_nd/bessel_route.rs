//! Infinite-lattice elements through a product of Bessel functions.
//!
//! With `G(ξ) = e^{2inξ} (−i)^{Σo} ∏_j J_{o_j}(2ξ)` and the regularizing
//! kernel `𝒟_ε(ξ) = Re Γ(β+1) / (π (ε − iξ)^{β+1})`,
//!
//! `F(ε) = 2 ∫_0^∞ 𝒟_ε(ξ) Re G(ξ) dξ = [L^β e^{−εL}]_o`,
//!
//! which tends to the element as ε → 0. The integral is done by Gauss
//! panels up to `xi_max` and by a Hankel expansion beyond it; ε → 0 is
//! reached by Richardson extrapolation on halving ε.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::{check_offset, OffsetVector};
use crate::error::{domain, invalid, FracError, Result};
use crate::lattice1d::FractionalOrder;
use crate::special::bessel::{bessel_j, hankel_coefficients};
use crate::special::gamma::log_gamma_unchecked;
use crate::special::quadrature::GaussLegendre;

const PANEL_ORDER: usize = 20;
const MAX_PANEL: f64 = 0.25;
const TAIL_TERMS: usize = 14;
const TAIL_DECAY: f64 = 40.0;
const TAIL_PANELS: usize = 8;

#[derive(Debug, Clone, PartialEq)]
pub struct BesselConfig {
    /// Largest regularization ε; later levels halve it.
    pub epsilon: f64,
    /// Number of ε values in the Richardson table.
    pub levels: usize,
    /// Switch-over from panel quadrature to the asymptotic tail; `None`
    /// picks `48 + max o_j²`.
    pub xi_max: Option<f64>,
    /// Largest accepted difference between the last two diagonal entries.
    pub tol: f64,
}

impl Default for BesselConfig {
    fn default() -> Self {
        Self { epsilon: 0.1, levels: 8, xi_max: None, tol: 1e-8 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Extrapolated {
    pub value: f64,
    pub error_estimate: f64,
    /// `F(ε)` for each ε used, largest ε first.
    pub samples: Vec<(f64, f64)>,
}

fn default_xi_max(o: &[u32]) -> f64 {
    48.0 + o.iter().map(|&v| (v as f64).powi(2)).fold(0.0, f64::max)
}

fn check_inputs(order: &FractionalOrder, dim: usize, offset: &OffsetVector) -> Result<()> {
    check_offset(dim, offset)?;
    if order.is_integer_half() {
        return Err(domain(format!(
            "the Bessel route needs non-integer alpha/2, got alpha = {}",
            order.alpha()
        )));
    }
    Ok(())
}

/// Real part of `e^{iθ} (−i)^s`.
fn phase_re(theta: f64, s: u64) -> f64 {
    match s % 4 {
        0 => theta.cos(),
        1 => theta.sin(),
        2 => -theta.cos(),
        _ => -theta.sin(),
    }
}

/// `∫_Ξ^∞ ξ^{−s} e^{iωξ} dξ`.
fn tail_moment(omega: f64, s: f64, xi: f64, rule: &GaussLegendre) -> Complex64 {
    if omega == 0.0 {
        return Complex64::new(xi.powf(1.0 - s) / (s - 1.0), 0.0);
    }
    // rotate the contour to ξ = Ξ + iy
    let ymax = TAIL_DECAY / omega;
    let h = ymax / TAIL_PANELS as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..TAIL_PANELS {
        for (y, w) in rule.mapped(k as f64 * h, (k + 1) as f64 * h) {
            acc += w * Complex64::new(xi, y).powf(-s) * (-omega * y).exp();
        }
    }
    Complex64::i() * Complex64::from_polar(1.0, omega * xi) * acc
}

fn series_mul(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); TAIL_TERMS];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate().take(TAIL_TERMS - i) {
            out[i + j] += x * y;
        }
    }
    out
}

fn asymptotic_tail(beta: f64, eps: f64, o: &[u32], xi: f64, rule: &GaussLegendre) -> f64 {
    let n = o.len();
    // Hankel series of each factor in powers of 1/ξ
    let hankel: Vec<Vec<Complex64>> = o
        .iter()
        .map(|&nu| {
            let lead = Complex64::from_polar(1.0, -(nu as f64 * PI / 2.0 + PI / 4.0));
            hankel_coefficients(nu, TAIL_TERMS)
                .iter()
                .enumerate()
                .map(|(k, a)| lead * Complex64::i().powu(k as u32) * (a / 2f64.powi(k as i32)))
                .collect()
        })
        .collect();
    // (1 + iε/ξ)^{−β−1}
    let mut binom = vec![Complex64::new(0.0, 0.0); TAIL_TERMS];
    let mut c = 1.0;
    for (k, b) in binom.iter_mut().enumerate() {
        *b = c * Complex64::new(0.0, eps).powu(k as u32);
        c *= (-beta - 1.0 - k as f64) / (k as f64 + 1.0);
    }
    let s_total: u64 = o.iter().map(|&v| v as u64).sum();
    let pref = (log_gamma_unchecked(beta + 1.0)).exp() / PI
        * 2f64.powi(-(n as i32))
        * PI.powf(-0.5 * n as f64);
    let offset_phase = Complex64::new(0.0, -1.0).powu((s_total % 4) as u32);
    let s0 = beta + 1.0 + 0.5 * n as f64;

    let mut total = Complex64::new(0.0, 0.0);
    for mask in 0..(1u32 << n) {
        let mut series = vec![Complex64::new(0.0, 0.0); TAIL_TERMS];
        series[0] = Complex64::new(1.0, 0.0);
        let mut sigma = 0i64;
        for (j, h) in hankel.iter().enumerate() {
            if mask & (1 << j) != 0 {
                sigma += 1;
                series = series_mul(&series, h);
            } else {
                sigma -= 1;
                let conj: Vec<Complex64> = h.iter().map(|z| z.conj()).collect();
                series = series_mul(&series, &conj);
            }
        }
        let omega = 2.0 * (n as i64 + sigma) as f64;
        for sign in [1.0, -1.0] {
            let rot = Complex64::from_polar(1.0, sign * PI * (beta + 1.0) / 2.0);
            let g: Vec<Complex64> = binom.iter().map(|b| if sign > 0.0 { *b } else { b.conj() }).collect();
            let prod = series_mul(&series, &g);
            let mut part = Complex64::new(0.0, 0.0);
            for (k, coeff) in prod.iter().enumerate() {
                part += coeff * tail_moment(omega, s0 + k as f64, xi, rule);
            }
            total += rot * part;
        }
    }
    (pref * offset_phase * total).re
}

fn main_panels(eps: f64, xi: f64) -> Vec<f64> {
    let mut b = vec![0.0];
    let mut x = eps.min(MAX_PANEL);
    while x < xi {
        b.push(x);
        let width = (x).min(MAX_PANEL);
        x += width;
    }
    b.push(xi);
    b
}

/// `F(ε) = [L^{α/2} e^{−εL}]_o` scaled by Ω², for a single ε.
pub fn element_infinite_nd_bessel(
    order: &FractionalOrder,
    dim: usize,
    offset: &OffsetVector,
    epsilon: f64,
    xi_max: Option<f64>,
) -> Result<f64> {
    check_inputs(order, dim, offset)?;
    if !(epsilon > 0.0) || !epsilon.is_finite() {
        return Err(invalid(format!("epsilon must be positive, got {epsilon}")));
    }
    let o = offset.abs_components();
    let min_xi = default_xi_max(&o) - 16.0;
    let xi = xi_max.unwrap_or_else(|| default_xi_max(&o));
    if !(xi >= min_xi) || !xi.is_finite() {
        return Err(invalid(format!("xi_max must be at least {min_xi} for this offset, got {xi}")));
    }
    if epsilon >= 0.5 * xi {
        return Err(invalid(format!("epsilon {epsilon} too large for xi_max {xi}")));
    }
    let beta = order.half();
    let n = dim as f64;
    let s_total: u64 = o.iter().map(|&v| v as u64).sum();
    let kernel_scale = (log_gamma_unchecked(beta + 1.0)).exp() / PI;
    let integrand = |x: f64| {
        let r = (eps_sq(epsilon) + x * x).sqrt();
        let d = kernel_scale * r.powf(-beta - 1.0) * ((beta + 1.0) * x.atan2(epsilon)).cos();
        let prod: f64 = o.iter().map(|&v| bessel_j(v, 2.0 * x)).product();
        2.0 * d * phase_re(2.0 * n * x, s_total) * prod
    };
    let rule = GaussLegendre::new(PANEL_ORDER);
    let main: f64 = main_panels(epsilon, xi)
        .windows(2)
        .map(|w| rule.integrate(&integrand, w[0], w[1]))
        .sum();
    let tail = asymptotic_tail(beta, epsilon, &o, xi, &rule);
    Ok(order.omega_sq() * (main + tail))
}

fn eps_sq(e: f64) -> f64 {
    e * e
}

/// Element of the infinite-lattice characteristic matrix by the Bessel
/// route, extrapolated to ε → 0.
pub fn element_infinite_nd_bessel_extrapolated(
    order: &FractionalOrder,
    dim: usize,
    offset: &OffsetVector,
    config: &BesselConfig,
) -> Result<Extrapolated> {
    check_inputs(order, dim, offset)?;
    if config.levels < 3 {
        return Err(invalid(format!("Richardson extrapolation needs at least 3 levels, got {}", config.levels)));
    }
    if !(config.tol > 0.0) {
        return Err(invalid("extrapolation tolerance must be positive"));
    }
    let eps: Vec<f64> = (0..config.levels).map(|i| config.epsilon / 2f64.powi(i as i32)).collect();
    let values = eps
        .iter()
        .map(|&e| element_infinite_nd_bessel(order, dim, offset, e, config.xi_max))
        .collect::<Result<Vec<f64>>>()?;
    let mut row = values.clone();
    let mut diag = vec![row[0]];
    for k in 1..config.levels {
        let factor = 2f64.powi(k as i32) - 1.0;
        let next: Vec<f64> = row.windows(2).map(|w| w[1] + (w[1] - w[0]) / factor).collect();
        diag.push(next[next.len() - 1]);
        row = next;
    }
    // row now holds the single fully extrapolated entry; compare with the
    // best estimate one level lower
    let value = row[0];
    let error_estimate = (value - diag[diag.len() - 2]).abs();
    if error_estimate > config.tol {
        let m = eps.len();
        return Err(FracError::NonConvergence { eps: [eps[m - 3], eps[m - 2], eps[m - 1]], spread: error_estimate });
    }
    Ok(Extrapolated { value, error_estimate, samples: eps.into_iter().zip(values).collect() })
}
