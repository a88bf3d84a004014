//! Brillouin-zone quadrature for the infinite lattice.

use std::f64::consts::PI;

use rayon::prelude::*;

use super::{check_offset, OffsetVector};
use crate::error::{invalid, FracError, Result};
use crate::lattice1d::FractionalOrder;
use crate::special::quadrature::{graded_breakpoints, GaussLegendre, QuadratureScheme, QuadratureSpec};

/// Tensor-product quadrature is limited to three dimensions.
pub const MAX_BZ_DIM: usize = 3;
const MAX_TRAPEZOID_POINTS: u128 = 1 << 26;
/// Order drop of the embedded error-estimating rule.
const ESTIMATOR_DROP: usize = 6;

fn grading_floor(dim: usize) -> f64 {
    match dim {
        1 => 1e-8,
        2 => 1e-6,
        _ => 1e-4,
    }
}

struct AxisRule {
    lam: Vec<f64>,
    /// weight × cos(o κ)
    wc: Vec<f64>,
}

fn axis_rule(rule: &GaussLegendre, o: u32, floor: f64) -> AxisRule {
    let max_width = (PI / 4.0).min(3.0 / o.max(1) as f64);
    let mut breaks = vec![0.0];
    for w in graded_breakpoints(PI, floor).windows(2) {
        let pieces = ((w[1] - w[0]) / max_width).ceil().max(1.0) as usize;
        let h = (w[1] - w[0]) / pieces as f64;
        for k in 1..=pieces {
            breaks.push(if k == pieces { w[1] } else { w[0] + k as f64 * h });
        }
    }
    let mut lam = Vec::new();
    let mut wc = Vec::new();
    for w in breaks.windows(2) {
        for (x, wt) in rule.mapped(w[0], w[1]) {
            lam.push(4.0 * (0.5 * x).sin().powi(2));
            wc.push(wt * (o as f64 * x).cos());
        }
    }
    AxisRule { lam, wc }
}

fn tensor_sum<G: Fn(f64) -> f64>(axes: &[AxisRule], lam: f64, weight: f64, g: &G) -> f64 {
    match axes.split_first() {
        None => weight * g(lam),
        Some((a, rest)) => a
            .lam
            .iter()
            .zip(&a.wc)
            .map(|(l, w)| tensor_sum(rest, lam + l, weight * w, g))
            .sum(),
    }
}

fn gauss_tensor<G: Fn(f64) -> f64 + Sync>(order: usize, o: &[u32], g: &G) -> f64 {
    let rule = GaussLegendre::new(order);
    let floor = grading_floor(o.len());
    let axes: Vec<AxisRule> = o.iter().map(|&oj| axis_rule(&rule, oj, floor)).collect();
    let (first, rest) = axes.split_first().expect("dim >= 1");
    let sum: f64 = first
        .lam
        .par_iter()
        .zip(first.wc.par_iter())
        .map(|(l, w)| tensor_sum(rest, *l, *w, g))
        .sum();
    sum / PI.powi(o.len() as i32)
}

fn uniform_grid<G: Fn(f64) -> f64 + Sync>(m: usize, o: &[u32], g: &G) -> f64 {
    // periodic trapezoid on the full zone with m nodes per axis
    let axes: Vec<AxisRule> = o
        .iter()
        .map(|&oj| {
            let mm = m as u64;
            AxisRule {
                lam: (0..m).map(|l| 4.0 * (PI * l as f64 / m as f64).sin().powi(2)).collect(),
                wc: (0..mm)
                    .map(|l| ((l * oj as u64 % mm) as f64 * 2.0 * PI / m as f64).cos() / m as f64)
                    .collect(),
            }
        })
        .collect();
    let (first, rest) = axes.split_first().expect("dim >= 1");
    first
        .lam
        .par_iter()
        .zip(first.wc.par_iter())
        .map(|(l, w)| tensor_sum(rest, *l, *w, g))
        .sum()
}

/// `(2π)^{−n} ∫_{[−π,π]^n} cos(κ·o) g(λ(κ)) dκ` for a spectral function `g`.
///
/// The adaptive scheme is a tensor product of per-axis Gauss panels graded
/// toward κ = 0; its error is estimated against a lower-order rule on the
/// same panels. The trapezoid scheme doubles a uniform grid.
pub fn bz_average<G: Fn(f64) -> f64 + Sync>(offset: &OffsetVector, spec: &QuadratureSpec, g: G) -> Result<f64> {
    spec.validate()?;
    let dim = offset.dim();
    if dim == 0 || dim > MAX_BZ_DIM {
        return Err(invalid(format!("zone quadrature supports 1..={MAX_BZ_DIM} dimensions, got {dim}")));
    }
    let o = offset.abs_components();
    match spec.scheme {
        QuadratureScheme::AdaptiveGauss => {
            let value = gauss_tensor(spec.points, &o, &g);
            let check = gauss_tensor(spec.points - ESTIMATOR_DROP, &o, &g);
            let achieved = (value - check).abs();
            let requested = spec.target(value);
            if achieved > requested {
                return Err(FracError::Tolerance { achieved, requested });
            }
            Ok(value)
        }
        QuadratureScheme::PeriodicTrapezoid => {
            let mut m = spec.points;
            let mut prev = uniform_grid(m, &o, &g);
            loop {
                m *= 2;
                if (m as u128).pow(dim as u32) > MAX_TRAPEZOID_POINTS {
                    return Err(FracError::Tolerance { achieved: f64::NAN, requested: spec.target(prev) });
                }
                let next = uniform_grid(m, &o, &g);
                let achieved = (next - prev).abs();
                if achieved <= spec.target(next) {
                    return Ok(next);
                }
                prev = next;
            }
        }
    }
}

/// Element of the infinite-lattice characteristic matrix by Brillouin-zone
/// quadrature, `Ω² (2π)^{−n} ∫ cos(κ·o) λ(κ)^{α/2} dκ`.
pub fn element_infinite_nd_bz(order: &FractionalOrder, dim: usize, offset: &OffsetVector, spec: &QuadratureSpec) -> Result<f64> {
    check_offset(dim, offset)?;
    let beta = order.half();
    Ok(order.omega_sq() * bz_average(offset, spec, |lam| lam.powf(beta))?)
}
