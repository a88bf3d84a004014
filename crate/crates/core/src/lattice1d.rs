//! Fractional Laplacian on the infinite chain and the N-periodic ring.
//!
//! The characteristic matrix `f = Ω² (2 − D − D†)^{α/2}` is Toeplitz, so
//! everything here is a function of the offset `p = |i − j|`. The
//! Laplacian itself is `Δ = −μ f` (negative semidefinite convention).

use std::f64::consts::PI;

use rayon::prelude::*;
use rustfft::{num_complex::Complex64, FftPlanner};

use crate::error::{domain, invalid, FracError, Result};
use crate::special::gamma::{ln_gamma_ratio_shifted, log_gamma_unchecked, sin_pi};
use crate::special::quadrature::{integrate_even_periodic, QuadratureSpec};
use crate::special::zeta::hurwitz_zeta_unchecked;

/// Tolerance on `|α/2 − round(α/2)|` below which `α/2` counts as an integer.
pub const INTEGER_HALF_TOL: f64 = 1e-12;

/// The exponent `α` of the power-law characteristic function together with
/// its frequency scale `Ω²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FractionalOrder {
    alpha: f64,
    omega_sq: f64,
}

impl FractionalOrder {
    /// Order `alpha` with `Ω² = 1`.
    pub fn new(alpha: f64) -> Result<Self> {
        Self::with_omega_sq(alpha, 1.0)
    }

    pub fn with_omega_sq(alpha: f64, omega_sq: f64) -> Result<Self> {
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(invalid(format!("alpha must be positive and finite, got {alpha}")));
        }
        if !(omega_sq > 0.0) || !omega_sq.is_finite() {
            return Err(invalid(format!("omega_sq must be positive and finite, got {omega_sq}")));
        }
        Ok(Self { alpha, omega_sq })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn omega_sq(&self) -> f64 {
        self.omega_sq
    }

    /// `α / 2`, the power applied to the generator.
    pub fn half(&self) -> f64 {
        0.5 * self.alpha
    }

    pub fn is_integer_half(&self) -> bool {
        self.integer_half().is_some()
    }

    /// `Some(m)` when `α/2 = m` within [`INTEGER_HALF_TOL`].
    pub fn integer_half(&self) -> Option<u64> {
        let h = self.half();
        let r = h.round();
        ((h - r).abs() < INTEGER_HALF_TOL).then_some(r as u64)
    }

    /// `Γ(α+1) sin(απ/2) / π`, the coefficient of the `p^{−α−1}` far field
    /// and of the Riesz kernel.
    pub fn riesz_coefficient(&self) -> f64 {
        if self.is_integer_half() {
            return 0.0;
        }
        log_gamma_unchecked(self.alpha + 1.0).exp() * sin_pi(self.half()) / PI
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainSize {
    Finite(usize),
    Infinite,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainSpec {
    pub size: ChainSize,
    /// Particle mass μ.
    pub mass: f64,
}

impl ChainSpec {
    pub fn finite(n: usize) -> Result<Self> {
        Self::new(ChainSize::Finite(n), 1.0)
    }

    pub fn infinite() -> Self {
        Self { size: ChainSize::Infinite, mass: 1.0 }
    }

    pub fn new(size: ChainSize, mass: f64) -> Result<Self> {
        if let ChainSize::Finite(n) = size {
            if n < 2 {
                return Err(invalid(format!("a periodic chain needs N >= 2, got {n}")));
            }
        }
        if !(mass > 0.0) || !mass.is_finite() {
            return Err(invalid(format!("mass must be positive, got {mass}")));
        }
        Ok(Self { size, mass })
    }
}

/// N-periodic fractional Laplacian stored by its first row.
///
/// `first_row[p]` is the Laplacian entry `Δ(p) = −μ f(p)` for offsets
/// `p = 0..N−1` taken cyclically.
#[derive(Debug, Clone, PartialEq)]
pub struct CirculantMatrix {
    order: FractionalOrder,
    mass: f64,
    first_row: Vec<f64>,
}

impl CirculantMatrix {
    /// Wraps a first row after checking symmetry, zero row sum and
    /// negative semidefiniteness.
    pub fn new(order: FractionalOrder, mass: f64, first_row: Vec<f64>) -> Result<Self> {
        let m = Self { order, mass, first_row };
        m.check_invariants()?;
        Ok(m)
    }

    pub fn order(&self) -> FractionalOrder {
        self.order
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn n(&self) -> usize {
        self.first_row.len()
    }

    pub fn first_row(&self) -> &[f64] {
        &self.first_row
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let n = self.n();
        self.first_row[(j + n - i % n) % n]
    }

    /// Largest absolute entry, used to scale the invariant tolerances.
    pub fn scale(&self) -> f64 {
        self.first_row.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    pub fn row_sum(&self) -> f64 {
        self.first_row.iter().sum()
    }

    /// Eigenvalues `Σ_p Δ(p) e^{−2πiℓp/N}` for `ℓ = 0..N−1`.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let n = self.n();
        let mut buf: Vec<Complex64> = self.first_row.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        FftPlanner::new().plan_fft_forward(n).process(&mut buf);
        buf.into_iter().map(|z| z.re).collect()
    }

    pub fn check_invariants(&self) -> Result<()> {
        let n = self.n();
        if n < 2 {
            return Err(invalid("circulant matrix needs N >= 2"));
        }
        let scale = self.scale().max(f64::MIN_POSITIVE);
        for p in 1..n {
            if (self.first_row[p] - self.first_row[n - p]).abs() > 1e-12 * scale {
                return Err(invalid(format!("first row is not centrally symmetric at offset {p}")));
            }
        }
        if self.row_sum().abs() > 1e-10 * scale {
            return Err(invalid(format!("row sum {} is not zero", self.row_sum())));
        }
        if let Some(bad) = self.eigenvalues().into_iter().find(|&e| e > 1e-10 * scale) {
            return Err(invalid(format!("positive eigenvalue {bad}: matrix is not negative semidefinite")));
        }
        Ok(())
    }
}

/// `C(2m, m+p)` as a float, exact for the sizes that fit a double.
fn binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0f64;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc.round()
}

/// Infinite-chain element `f(p) = Ω² α! / ((α/2)! (α/2+p)!) · (−1)^p ∏_{s<p} (α/2 − s)`.
///
/// The product is split at `m = ⌊α/2⌋`: factors up to `m` are multiplied
/// directly and the rest become a ratio of gamma functions with positive
/// arguments, so no pole is ever touched. For integer `α/2` the element is
/// the signed binomial `(−1)^p C(α, α/2 + p)` and vanishes for `p > α/2`.
pub fn element_infinite_closed(order: &FractionalOrder, p: u64) -> f64 {
    let w = order.omega_sq();
    if let Some(m) = order.integer_half() {
        if p > m {
            return 0.0;
        }
        let sign = if p % 2 == 0 { 1.0 } else { -1.0 };
        return w * sign * binomial(2 * m, m + p);
    }
    let alpha = order.alpha();
    let beta = order.half();
    let m = beta.floor() as u64;
    if p <= m {
        // All product factors positive; sign is (−1)^p.
        let mut log_mag = log_gamma_unchecked(alpha + 1.0)
            - log_gamma_unchecked(beta + 1.0)
            - log_gamma_unchecked(beta + p as f64 + 1.0);
        for s in 0..p {
            log_mag += (beta - s as f64).ln();
        }
        let sign = if p % 2 == 0 { 1.0 } else { -1.0 };
        return w * sign * log_mag.exp();
    }
    // p > m: ∏_{s≤m}(β−s) / Γ(β+1) = 1/Γ(β−m) and the remaining factors give
    // (−1)^{p−1−m} Γ(p−β)/Γ(m+1−β); the overall sign is (−1)^{m+1}.
    let frac = beta - m as f64;
    let log_mag = log_gamma_unchecked(alpha + 1.0)
        - log_gamma_unchecked(frac)
        - log_gamma_unchecked(1.0 - frac)
        + ln_gamma_ratio_shifted(p as f64, -beta, beta + 1.0);
    let sign = if m % 2 == 0 { -1.0 } else { 1.0 };
    w * sign * log_mag.exp()
}

/// Infinite-chain element as the Fourier coefficient
/// `(Ω²/2π) ∫_{−π}^{π} cos(κp) (4 sin²(κ/2))^{α/2} dκ`.
pub fn element_infinite_quadrature(order: &FractionalOrder, p: u64, spec: &QuadratureSpec) -> Result<f64> {
    let alpha = order.alpha();
    let pf = p as f64;
    let integrand = |k: f64| (pf * k).cos() * (2.0 * (0.5 * k).sin().abs()).powf(alpha);
    let v = integrate_even_periodic(integrand, spec)?;
    Ok(order.omega_sq() * v / (2.0 * PI))
}

/// `ω²(κ) = Ω² (4 sin²(κ/2))^{α/2}`.
pub fn dispersion_1d(order: &FractionalOrder, kappa: f64) -> f64 {
    order.omega_sq() * (2.0 * (0.5 * kappa).sin().abs()).powf(order.alpha())
}

/// Far-field approximation `−Ω² Γ(α+1) sin(απ/2)/π · p^{−α−1}`.
pub fn element_asymptotic(order: &FractionalOrder, p: u64) -> Result<f64> {
    if order.is_integer_half() {
        return Err(domain(format!(
            "no power-law far field for integer alpha/2 (alpha = {})",
            order.alpha()
        )));
    }
    if p == 0 {
        return Err(domain("asymptotic form needs p >= 1"));
    }
    Ok(-order.omega_sq() * order.riesz_coefficient() * (p as f64).powf(-order.alpha() - 1.0))
}

fn reduce_offset(p: i64, n: usize) -> usize {
    p.rem_euclid(n as i64) as usize
}

/// Exact N-periodic element by the Bloch spectral sum
/// `(Ω²/N) Σ_ℓ cos(2πℓp/N) (4 sin²(πℓ/N))^{α/2}`.
pub fn element_periodic_bloch(order: &FractionalOrder, n: usize, p: i64) -> Result<f64> {
    if n < 2 {
        return Err(invalid(format!("periodic chain needs N >= 2, got {n}")));
    }
    let p = reduce_offset(p, n) as u64;
    let alpha = order.alpha();
    let nn = n as u64;
    let step = 2.0 * PI / n as f64;
    let sum: f64 = (1..nn)
        .map(|l| {
            let eig = (2.0 * (PI * l as f64 / n as f64).sin()).powf(alpha);
            ((l * p % nn) as f64 * step).cos() * eig
        })
        .sum();
    Ok(order.omega_sq() * sum / n as f64)
}

/// Number of even-power terms kept in the far-field expansion.
const FAR_FIELD_TERMS: usize = 8;
const IMAGE_BUDGET: u64 = 10_000_000;

/// Bernoulli numbers `B_0..B_19` (with `B_1 = −1/2`).
const BERNOULLI: [f64; 20] = [
    1.0,
    -0.5,
    1.0 / 6.0,
    0.0,
    -1.0 / 30.0,
    0.0,
    1.0 / 42.0,
    0.0,
    -1.0 / 30.0,
    0.0,
    5.0 / 66.0,
    0.0,
    -691.0 / 2730.0,
    0.0,
    7.0 / 6.0,
    0.0,
    -3617.0 / 510.0,
    0.0,
    43867.0 / 798.0,
    0.0,
];

fn bernoulli_poly(k: usize, x: f64) -> f64 {
    let mut sum = 0.0;
    let mut binom = 1.0;
    for j in 0..=k {
        if j > 0 {
            binom = binom * (k + 1 - j) as f64 / j as f64;
        }
        sum += binom * BERNOULLI[j] * x.powi((k - j) as i32);
    }
    sum
}

/// Coefficients `r_j` with `Γ(q−β)/Γ(q+β+1) ~ q^{−2β−1} Σ_j r_j q^{−2j}`.
///
/// From the Stirling series of the log-gamma difference; only even powers
/// survive because the two shifts are symmetric about −1/2.
pub fn far_field_series(beta: f64, terms: usize) -> Vec<f64> {
    assert!(2 * terms < BERNOULLI.len());
    // log series coefficients e_j of q^{−2j}
    let e: Vec<f64> = (0..terms)
        .map(|j| {
            if j == 0 {
                0.0
            } else {
                let k = 2 * j;
                -2.0 * bernoulli_poly(k + 1, -beta) / (k * (k + 1)) as f64
            }
        })
        .collect();
    let mut r = vec![0.0; terms];
    r[0] = 1.0;
    for j in 1..terms {
        let mut acc = 0.0;
        for k in 1..=j {
            acc += k as f64 * e[k] * r[j - k];
        }
        r[j] = acc / j as f64;
    }
    r
}

/// N-periodic element as the image sum `Σ_s f_∞(|p + sN|)`.
///
/// Images are summed directly until every remaining offset exceeds a
/// threshold; the remainder is summed in closed form from the far-field
/// expansion of `f_∞` with Hurwitz zeta functions, and the threshold is
/// raised until the first neglected expansion term is below `tol`.
pub fn element_periodic_images(order: &FractionalOrder, n: usize, p: i64, tol: f64) -> Result<f64> {
    if n < 2 {
        return Err(invalid(format!("periodic chain needs N >= 2, got {n}")));
    }
    if !(tol > 0.0) {
        return Err(invalid(format!("tolerance must be positive, got {tol}")));
    }
    if p < 0 || p as usize >= n {
        return Err(invalid(format!("offset must satisfy 0 <= p < N, got p = {p}, N = {n}")));
    }
    let p = p as u64;
    let nn = n as u64;
    let direct = |s_max: u64| -> f64 {
        let mut sum = element_infinite_closed(order, p);
        for s in 1..=s_max {
            sum += element_infinite_closed(order, p + s * nn) + element_infinite_closed(order, s * nn - p);
        }
        sum
    };

    if let Some(m) = order.integer_half() {
        // images vanish once sN − p > m
        let s_max = (m + p) / nn + 1;
        return Ok(direct(s_max));
    }

    let alpha = order.alpha();
    let beta = order.half();
    let coef = -order.omega_sq() * order.riesz_coefficient();
    let series = far_field_series(beta, FAR_FIELD_TERMS + 1);
    let nf = n as f64;
    let shift = p as f64 / nf;
    let tail = |s_max: u64, j: usize| -> f64 {
        let s = alpha + 1.0 + 2.0 * j as f64;
        let a = (s_max + 1) as f64;
        series[j] * nf.powf(-s) * (hurwitz_zeta_unchecked(s, a + shift) + hurwitz_zeta_unchecked(s, a - shift))
    };

    let threshold = 24.0f64.max(2.0 * beta + 4.0);
    let mut s_max = (((threshold + p as f64) / nf).ceil() as u64).max(2) - 1;
    loop {
        let neglected = (coef * tail(s_max, FAR_FIELD_TERMS)).abs();
        if neglected <= tol {
            break;
        }
        s_max = 2 * s_max + 1;
        if s_max > IMAGE_BUDGET {
            return Err(FracError::Truncation(format!(
                "image sum cannot reach tol {tol:e} within {IMAGE_BUDGET} images"
            )));
        }
    }
    let far: f64 = (0..FAR_FIELD_TERMS).map(|j| tail(s_max, j)).sum();
    Ok(direct(s_max) + coef * far)
}

/// Largest chain assembled by [`build_laplacian_1d`].
pub const MAX_CHAIN_LENGTH: u128 = 10_000_000;

/// Assembles the N-periodic Laplacian `Δ = −μ f` from the Bloch spectrum.
pub fn build_laplacian_1d(order: &FractionalOrder, chain: &ChainSpec) -> Result<CirculantMatrix> {
    let n = match chain.size {
        ChainSize::Finite(n) => n,
        ChainSize::Infinite => return Err(invalid("build_laplacian_1d needs a finite chain")),
    };
    if n as u128 > MAX_CHAIN_LENGTH {
        return Err(FracError::SizeLimit { points: n as u128, limit: MAX_CHAIN_LENGTH });
    }
    let chain = ChainSpec::new(chain.size, chain.mass)?;
    if let Some(m) = order.integer_half() {
        // finite stencil, wrapped onto the ring exactly
        let mut row = vec![0.0; n];
        for p in -(m as i64)..=m as i64 {
            row[reduce_offset(p, n)] -= chain.mass * element_infinite_closed(order, p.unsigned_abs());
        }
        return CirculantMatrix::new(*order, chain.mass, row);
    }
    let alpha = order.alpha();
    let mut buf: Vec<Complex64> = (0..n)
        .into_par_iter()
        .map(|l| Complex64::new((2.0 * (PI * l as f64 / n as f64).sin()).powf(alpha), 0.0))
        .collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let factor = -chain.mass * order.omega_sq() / n as f64;
    let raw: Vec<f64> = buf.iter().map(|z| factor * z.re).collect();
    let row = (0..n).map(|p| 0.5 * (raw[p] + raw[(n - p) % n])).collect();
    CirculantMatrix::new(*order, chain.mass, row)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::quadrature::QuadratureScheme;
    use proptest::prelude::*;

    fn ord(alpha: f64) -> FractionalOrder {
        FractionalOrder::new(alpha).unwrap()
    }

    #[test]
    fn order_validation() {
        assert!(FractionalOrder::new(0.0).is_err());
        assert!(FractionalOrder::new(-1.0).is_err());
        assert!(FractionalOrder::with_omega_sq(1.0, 0.0).is_err());
        assert!(ord(4.0).is_integer_half());
        assert!(ord(4.0 + 1e-13).is_integer_half());
        assert!(!ord(4.0 + 1e-9).is_integer_half());
        assert!(!ord(3.0).is_integer_half());
    }

    #[test]
    fn binomial_stencils() {
        let two = ord(2.0);
        assert_eq!(element_infinite_closed(&two, 0), 2.0);
        assert_eq!(element_infinite_closed(&two, 1), -1.0);
        assert_eq!(element_infinite_closed(&two, 2), 0.0);
        let four = ord(4.0);
        let expect = [6.0, -4.0, 1.0, 0.0];
        for (p, e) in expect.iter().enumerate() {
            assert_eq!(element_infinite_closed(&four, p as u64), *e);
        }
        let six = FractionalOrder::with_omega_sq(6.0, 2.5).unwrap();
        let expect = [20.0, -15.0, 6.0, -1.0, 0.0];
        for (p, e) in expect.iter().enumerate() {
            assert_eq!(element_infinite_closed(&six, p as u64), 2.5 * e);
        }
    }

    #[test]
    fn alpha_one_closed_form() {
        let one = ord(1.0);
        assert!((element_infinite_closed(&one, 0) - 4.0 / PI).abs() < 1e-14);
        assert!((element_infinite_closed(&one, 1) + 4.0 / (3.0 * PI)).abs() < 1e-14);
        // f(p) = −4/(π(4p² − 1)) at α = 1
        for p in 0..50u64 {
            let exact = -4.0 / (PI * (4.0 * (p * p) as f64 - 1.0));
            assert!((element_infinite_closed(&one, p) - exact).abs() < 1e-14 * exact.abs());
        }
    }

    #[test]
    fn quadrature_route() {
        let spec = QuadratureSpec::default();
        let v = element_infinite_quadrature(&ord(2.0), 1, &spec).unwrap();
        assert!((v + 1.0).abs() < 1e-10);
        // Γ(4)/Γ(5/2)² at α = 3, p = 0
        let exact = (log_gamma_unchecked(4.0) - 2.0 * log_gamma_unchecked(2.5)).exp();
        let v = element_infinite_quadrature(&ord(3.0), 0, &spec).unwrap();
        assert!((v - exact).abs() < 1e-10);
        let half = ord(0.5);
        let v = element_infinite_quadrature(&half, 5, &spec).unwrap();
        assert!((v - element_infinite_closed(&half, 5)).abs() < 1e-10);
    }

    #[test]
    fn closed_form_large_offsets_match_far_field_series() {
        // far-field expansion against the closed form well beyond the threshold
        for &alpha in &[0.3, 1.5, 2.7, 5.1] {
            let o = ord(alpha);
            let beta = o.half();
            let series = far_field_series(beta, 6);
            for &q in &[40u64, 400, 100_000] {
                let qf = q as f64;
                let approx: f64 = series.iter().enumerate().map(|(j, r)| r * qf.powi(-2 * j as i32)).sum::<f64>()
                    * qf.powf(-alpha - 1.0)
                    * -o.riesz_coefficient();
                let exact = element_infinite_closed(&o, q);
                assert!((approx / exact - 1.0).abs() < 1e-13, "alpha={alpha} q={q}");
            }
        }
    }

    #[test]
    fn bloch_examples() {
        let two = ord(2.0);
        assert!((element_periodic_bloch(&two, 4, 0).unwrap() - 2.0).abs() < 1e-14);
        assert!((element_periodic_bloch(&two, 4, 1).unwrap() + 1.0).abs() < 1e-14);
        assert!(element_periodic_bloch(&two, 4, 2).unwrap().abs() < 1e-14);
        let o = ord(1.5);
        for n in [5usize, 8, 13] {
            for p in 0..n as i64 {
                let a = element_periodic_bloch(&o, n, p).unwrap();
                let b = element_periodic_bloch(&o, n, n as i64 - p).unwrap();
                let c = element_periodic_bloch(&o, n, p - n as i64).unwrap();
                assert!((a - b).abs() < 1e-14 && (a - c).abs() < 1e-14);
            }
        }
        assert!(element_periodic_bloch(&o, 1, 0).is_err());
    }

    #[test]
    fn image_sum_examples() {
        let v = element_periodic_images(&ord(2.0), 6, 1, 1e-12).unwrap();
        assert!((v + 1.0).abs() < 1e-14);
        let o = ord(0.8);
        let a = element_periodic_images(&o, 10, 0, 1e-12).unwrap();
        let b = element_periodic_bloch(&o, 10, 0).unwrap();
        assert!((a - b).abs() < 1e-10, "{a} {b}");
        let o = ord(1.5);
        let a = element_periodic_images(&o, 8, 3, 1e-12).unwrap();
        let b = element_periodic_bloch(&o, 8, 3).unwrap();
        assert!((a - b).abs() < 1e-10, "{a} {b}");
        assert!(element_periodic_images(&o, 8, 8, 1e-12).is_err());
        assert!(element_periodic_images(&o, 8, 1, 0.0).is_err());
    }

    #[test]
    fn image_sum_wraps_integer_stencil() {
        // α = 4 stencil (6, −4, 1) folded onto N = 3: f(0) = 6 + 2·1·0 …
        let four = ord(4.0);
        for n in 2..7usize {
            for p in 0..n as i64 {
                let a = element_periodic_images(&four, n, p, 1e-12).unwrap();
                let b = element_periodic_bloch(&four, n, p).unwrap();
                assert!((a - b).abs() < 1e-12, "n={n} p={p}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn periodization_approaches_infinite_chain() {
        let o = ord(1.2);
        let exact = element_infinite_closed(&o, 2);
        let mut last = f64::INFINITY;
        for n in [10usize, 100, 1000] {
            let err = (element_periodic_bloch(&o, n, 2).unwrap() - exact).abs();
            assert!(err < (n as f64).powf(-o.alpha()));
            assert!(err < last);
            last = err;
        }
    }

    #[test]
    fn dispersion_values() {
        let o = FractionalOrder::with_omega_sq(1.3, 2.0).unwrap();
        assert_eq!(dispersion_1d(&o, 0.0), 0.0);
        assert!((dispersion_1d(&o, PI) - 2.0 * 2f64.powf(1.3)).abs() < 1e-14);
        let two = ord(2.0);
        for k in [0.1, 1.0, 2.5, -2.0] {
            let bvk = 4.0 * (0.5 * k as f64).sin().powi(2);
            assert!((dispersion_1d(&two, k) - bvk).abs() < 1e-14);
        }
    }

    #[test]
    fn asymptotic_form() {
        let v = element_asymptotic(&ord(1.0), 10).unwrap();
        assert!((v + 1.0 / (PI * 100.0)).abs() < 1e-16);
        assert!(element_asymptotic(&ord(3.0), 7).unwrap() > 0.0);
        assert!(element_asymptotic(&ord(2.0), 7).is_err());
        assert!(element_asymptotic(&ord(1.0), 0).is_err());
        let o = ord(0.5);
        let ratio = element_infinite_closed(&o, 50) / element_asymptotic(&o, 50).unwrap();
        assert!((ratio - 1.0).abs() < 0.02);
    }

    #[test]
    fn laplacian_assembly() {
        let m = build_laplacian_1d(&ord(2.0), &ChainSpec::finite(5).unwrap()).unwrap();
        assert_eq!(m.first_row(), &[-2.0, 1.0, 0.0, 0.0, 1.0]);
        // stencil wider than the ring wraps onto itself
        let m = build_laplacian_1d(&ord(4.0), &ChainSpec::finite(3).unwrap()).unwrap();
        assert_eq!(m.first_row(), &[-6.0, 3.0, 3.0]);
        let o = ord(0.5);
        let m = build_laplacian_1d(&o, &ChainSpec::finite(8).unwrap()).unwrap();
        for (l, e) in m.eigenvalues().iter().enumerate() {
            let expect = -(4.0 * (PI * l as f64 / 8.0).sin().powi(2)).powf(0.25);
            assert!((e - expect).abs() < 1e-13);
        }
        for p in 0..8 {
            let direct = -element_periodic_bloch(&o, 8, p).unwrap();
            assert!((m.first_row()[p as usize] - direct).abs() < 1e-14);
        }
        assert!(m.row_sum().abs() < 1e-14);
        assert_eq!(m.get(2, 5), m.first_row()[3]);
        assert_eq!(m.get(5, 2), m.first_row()[5]);
        assert!(build_laplacian_1d(&o, &ChainSpec::infinite()).is_err());
        let big = build_laplacian_1d(&o, &ChainSpec::finite(20_000_000).unwrap());
        assert!(matches!(big, Err(FracError::SizeLimit { .. })));
    }

    #[test]
    fn circulant_rejects_bad_rows() {
        let o = ord(1.0);
        assert!(CirculantMatrix::new(o, 1.0, vec![-2.0, 1.0, 0.5, 1.0]).is_err());
        assert!(CirculantMatrix::new(o, 1.0, vec![2.0, -1.0, 0.0, -1.0]).is_err());
        assert!(CirculantMatrix::new(o, 1.0, vec![-2.0, 1.5, 0.0, 0.5]).is_err());
        assert!(CirculantMatrix::new(o, 1.0, vec![-2.0, 1.0, 0.0, 1.0]).is_ok());
    }

    #[test]
    fn trapezoid_oracle_agrees_for_smooth_case() {
        // α = 4: integrand is a trigonometric polynomial
        let spec = QuadratureSpec::new(QuadratureScheme::PeriodicTrapezoid, 16, 1e-13, 0.0).unwrap();
        let v = element_infinite_quadrature(&ord(4.0), 1, &spec).unwrap();
        assert!((v + 4.0).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn off_diagonal_negative_below_two(alpha in 0.05f64..1.99, p in 1u64..5000) {
            prop_assert!(element_infinite_closed(&ord(alpha), p) < 0.0);
        }

        #[test]
        fn closed_matches_quadrature(alpha in 0.2f64..5.0, p in 0u64..20) {
            let o = ord(alpha);
            let q = element_infinite_quadrature(&o, p, &QuadratureSpec::default()).unwrap();
            prop_assert!((q - element_infinite_closed(&o, p)).abs() < 1e-10);
        }

        #[test]
        fn far_field_constant(alpha in 0.1f64..3.9, p in 200u64..5000) {
            let o = ord(alpha);
            prop_assume!(!o.is_integer_half());
            let c = -o.riesz_coefficient();
            let v = element_infinite_closed(&o, p) * (p as f64).powf(alpha + 1.0);
            prop_assert!((v / c - 1.0).abs() <= 10.0 / p as f64);
        }
    }
}
