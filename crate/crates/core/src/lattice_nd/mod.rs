//! Fractional Laplacian on nD cubic lattices: periodic tori and the
//! infinite lattice.
//!
//! The generator `L_n = 2n − Σ_j (D_j + D_j†)` has Bloch eigenvalues
//! `λ(κ) = 4 Σ_j sin²(κ_j/2)`; the characteristic matrix is `Ω² L_n^{α/2}`
//! and the Laplacian is `−μ Ω² L_n^{α/2}`.

mod bessel_route;
mod bz;

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::error::{domain, invalid, FracError, Result};
use crate::lattice1d::FractionalOrder;
use crate::special::gamma::{log_gamma_unchecked, reciprocal_gamma};

pub use bessel_route::{
    element_infinite_nd_bessel, element_infinite_nd_bessel_extrapolated, BesselConfig, Extrapolated,
};
pub use bz::{bz_average, element_infinite_nd_bz};

/// Upper bound on the number of Bloch vectors summed by the periodic route.
pub const MAX_SPECTRAL_POINTS: u128 = 10_000_000;
pub const MAX_DIM: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeSizes {
    Finite(Vec<usize>),
    Infinite,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LatticeSpec {
    dim: usize,
    sizes: LatticeSizes,
    mass: f64,
}

impl LatticeSpec {
    pub fn periodic(sizes: Vec<usize>) -> Result<Self> {
        Self::new(sizes.len(), LatticeSizes::Finite(sizes), 1.0)
    }

    pub fn infinite(dim: usize) -> Result<Self> {
        Self::new(dim, LatticeSizes::Infinite, 1.0)
    }

    pub fn new(dim: usize, sizes: LatticeSizes, mass: f64) -> Result<Self> {
        if dim == 0 || dim > MAX_DIM {
            return Err(invalid(format!("lattice dimension must be in 1..={MAX_DIM}, got {dim}")));
        }
        if let LatticeSizes::Finite(ref s) = sizes {
            if s.len() != dim {
                return Err(invalid(format!("{} sizes given for a {dim}D lattice", s.len())));
            }
            if let Some(bad) = s.iter().find(|&&n| n < 2) {
                return Err(invalid(format!("periodic sizes must be >= 2, got {bad}")));
            }
        }
        if !(mass > 0.0) || !mass.is_finite() {
            return Err(invalid(format!("mass must be positive, got {mass}")));
        }
        Ok(Self { dim, sizes, mass })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn sizes(&self) -> &LatticeSizes {
        &self.sizes
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    /// Total number of sites `∏ N_j`, or `None` for the infinite lattice.
    pub fn total_points(&self) -> Option<u128> {
        match &self.sizes {
            LatticeSizes::Finite(s) => Some(s.iter().map(|&n| n as u128).product()),
            LatticeSizes::Infinite => None,
        }
    }
}

/// Site offset `p − q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OffsetVector(Vec<i64>);

impl OffsetVector {
    pub fn new(components: Vec<i64>) -> Self {
        Self(components)
    }

    /// Offset `(p, 0, …, 0)` along the first axis.
    pub fn along_axis(dim: usize, p: i64) -> Self {
        let mut c = vec![0; dim];
        c[0] = p;
        Self(c)
    }

    pub fn components(&self) -> &[i64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Components reduced into `0..N_j`.
    pub fn reduced(&self, sizes: &[usize]) -> Self {
        Self(self.0.iter().zip(sizes).map(|(&c, &n)| c.rem_euclid(n as i64)).collect())
    }

    pub fn abs_components(&self) -> Vec<u32> {
        self.0.iter().map(|c| c.unsigned_abs() as u32).collect()
    }

    pub fn l1_norm(&self) -> u64 {
        self.0.iter().map(|c| c.unsigned_abs()).sum()
    }
}

impl std::fmt::Display for OffsetVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `λ(κ) = 2n − 2 Σ_j cos κ_j`, computed as `4 Σ_j sin²(κ_j/2)`.
pub fn eigenvalue_nd(kappa: &[f64]) -> f64 {
    kappa.iter().map(|k| 4.0 * (0.5 * k).sin().powi(2)).sum()
}

pub(crate) fn check_offset(dim: usize, offset: &OffsetVector) -> Result<()> {
    if offset.dim() != dim {
        return Err(invalid(format!(
            "offset {offset} has {} components for a {dim}D lattice",
            offset.dim()
        )));
    }
    Ok(())
}

struct Axis {
    /// `4 sin²(κ/2)` at each Bloch point
    lam: Vec<f64>,
    /// `cos(κ o_j)` at each Bloch point
    phase: Vec<f64>,
}

fn sum_axes(axes: &[Axis], lam: f64, phase: f64, alpha: f64) -> f64 {
    match axes.split_first() {
        None => phase * lam.powf(0.5 * alpha),
        Some((axis, rest)) => axis
            .lam
            .iter()
            .zip(&axis.phase)
            .map(|(l, c)| sum_axes(rest, lam + l, phase * c, alpha))
            .sum(),
    }
}

fn periodic_axes(sizes: &[usize], offset: &OffsetVector) -> Vec<Axis> {
    sizes
        .iter()
        .zip(offset.reduced(sizes).components())
        .map(|(&n, &o)| {
            let nn = n as u64;
            let o = o as u64;
            let step = 2.0 * PI / n as f64;
            Axis {
                lam: (0..n).map(|l| 4.0 * (PI * l as f64 / n as f64).sin().powi(2)).collect(),
                phase: (0..nn).map(|l| ((l * o % nn) as f64 * step).cos()).collect(),
            }
        })
        .collect()
}

/// Exact element of the periodic characteristic matrix,
/// `(Ω²/N) Σ_ℓ cos(κ_ℓ · offset) λ_ℓ^{α/2}` over all Bloch vectors.
pub fn element_periodic_nd(order: &FractionalOrder, lattice: &LatticeSpec, offset: &OffsetVector) -> Result<f64> {
    let sizes = match lattice.sizes() {
        LatticeSizes::Finite(s) => s,
        LatticeSizes::Infinite => return Err(invalid("element_periodic_nd needs a finite lattice")),
    };
    check_offset(lattice.dim(), offset)?;
    let total = lattice.total_points().unwrap_or(0);
    if total > MAX_SPECTRAL_POINTS {
        return Err(FracError::SizeLimit { points: total, limit: MAX_SPECTRAL_POINTS });
    }
    let axes = periodic_axes(sizes, offset);
    let alpha = order.alpha();
    let (first, rest) = axes.split_first().expect("dim >= 1");
    let sum: f64 = first
        .lam
        .par_iter()
        .zip(first.phase.par_iter())
        .map(|(l, c)| sum_axes(rest, *l, *c, alpha))
        .sum();
    Ok(order.omega_sq() * sum / total as f64)
}

/// The whole fundamental cell of the periodic characteristic matrix, in
/// row-major offset order, together with the Bloch eigenvalues
/// `Ω² λ_ℓ^{α/2}` in the same multi-index order.
pub fn periodic_cell_nd(order: &FractionalOrder, lattice: &LatticeSpec) -> Result<(Vec<OffsetVector>, Vec<f64>, Vec<f64>)> {
    let sizes = match lattice.sizes() {
        LatticeSizes::Finite(s) => s.clone(),
        LatticeSizes::Infinite => return Err(invalid("periodic_cell_nd needs a finite lattice")),
    };
    let total = lattice.total_points().unwrap_or(0);
    // the cell costs N spectral sums of N terms each
    if total * total > MAX_SPECTRAL_POINTS * 100 {
        return Err(FracError::SizeLimit { points: total * total / 100, limit: MAX_SPECTRAL_POINTS });
    }
    let offsets: Vec<OffsetVector> = (0..total as usize)
        .map(|flat| {
            let mut rem = flat;
            let mut comps = vec![0i64; sizes.len()];
            for (j, &n) in sizes.iter().enumerate().rev() {
                comps[j] = (rem % n) as i64;
                rem /= n;
            }
            OffsetVector::new(comps)
        })
        .collect();
    let entries = offsets
        .par_iter()
        .map(|o| element_periodic_nd(order, lattice, o))
        .collect::<Result<Vec<f64>>>()?;
    let eigen = offsets
        .iter()
        .map(|l| {
            let kappa: Vec<f64> = l
                .components()
                .iter()
                .zip(&sizes)
                .map(|(&c, &n)| 2.0 * PI * c as f64 / n as f64)
                .collect();
            order.omega_sq() * eigenvalue_nd(&kappa).powf(order.half())
        })
        .collect();
    Ok((offsets, entries, eigen))
}

/// `C_{n,α} = 2^{α−1} α Γ((α+n)/2) / (π^{n/2} Γ(1 − α/2))`, the far-field
/// constant in `L^{α/2}(p) ≈ −C_{n,α} / p^{n+α}`.
///
/// `1/Γ(1 − α/2)` is taken through the reflection formula for `α > 2`, so the
/// constant changes sign on `2 < α < 4` and is exactly zero for integer
/// `α/2`, where the far field vanishes.
pub fn asymptotic_constant_nd(dim: usize, alpha: f64) -> Result<f64> {
    if dim == 0 {
        return Err(domain("dimension must be positive"));
    }
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(domain(format!("alpha must be positive, got {alpha}")));
    }
    let order = FractionalOrder::new(alpha)?;
    if order.is_integer_half() {
        return Ok(0.0);
    }
    let n = dim as f64;
    let log_mag = (alpha - 1.0) * 2f64.ln() + log_gamma_unchecked(0.5 * (alpha + n)) - 0.5 * n * PI.ln();
    Ok(alpha * log_mag.exp() * reciprocal_gamma(1.0 - 0.5 * alpha))
}

/// `ω_α(κ₁, κ₂) / ω_{α=2}(π, π) = 2^{(α−3)/2} (sin²(κ₁/2) + sin²(κ₂/2))^{α/4}`
/// on the square lattice.
pub fn normalized_frequency_2d(alpha: f64, k1: f64, k2: f64) -> f64 {
    let s = (0.5 * k1).sin().powi(2) + (0.5 * k2).sin().powi(2);
    2f64.powf(0.5 * (alpha - 3.0)) * s.powf(0.25 * alpha)
}

/// `ω_α(κ) / ω_{α=2}(π)` on the chain.
pub fn normalized_frequency_1d(alpha: f64, k: f64) -> f64 {
    (2.0 * (0.5 * k).sin().abs()).powf(0.5 * alpha) / 2.0
}

/// `m × m` samples `(κ₁, κ₂, ω_normalized)` of the square-lattice dispersion
/// sheet over `[0, π]²`, endpoints included, κ₂ varying fastest.
pub fn dispersion_surface(order: &FractionalOrder, grid: usize) -> Result<Vec<(f64, f64, f64)>> {
    if grid < 2 {
        return Err(invalid(format!("dispersion grid needs m >= 2, got {grid}")));
    }
    let step = PI / (grid - 1) as f64;
    let alpha = order.alpha();
    Ok((0..grid)
        .flat_map(|i| {
            (0..grid).map(move |j| {
                let (k1, k2) = (i as f64 * step, j as f64 * step);
                (k1, k2, normalized_frequency_2d(alpha, k1, k2))
            })
        })
        .collect())
}
