use crate::error::{domain, Result};

/// Stirling-series coefficients `B_{2k} / (2k (2k - 1))`.
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

/// Below this argument the series is entered after upward shifting.
const STIRLING_MIN: f64 = 15.0;

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

fn stirling_tail(x: f64) -> f64 {
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let mut pow = inv;
    let mut sum = 0.0;
    for c in STIRLING {
        sum += c * pow;
        pow *= inv2;
    }
    sum
}

/// Natural logarithm of the gamma function for `x > 0`.
///
/// Arguments below 15 are shifted upward with the recurrence
/// `Γ(x + 1) = x Γ(x)` before the Stirling series is applied.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain(format!("log_gamma requires x > 0, got {x}")));
    }
    Ok(log_gamma_unchecked(x))
}

pub(crate) fn log_gamma_unchecked(x: f64) -> f64 {
    if x >= STIRLING_MIN {
        return (x - 0.5) * x.ln() - x + HALF_LN_2PI + stirling_tail(x);
    }
    let shift = (STIRLING_MIN - x).ceil();
    let mut prod = 1.0;
    let mut y = x;
    for _ in 0..shift as usize {
        prod *= y;
        y += 1.0;
    }
    log_gamma_unchecked(y) - prod.ln()
}

/// `ln Γ(a) − ln Γ(b)` for positive arguments, without the cancellation a
/// plain difference suffers when `a` and `b` are large and close.
pub fn ln_gamma_ratio(a: f64, b: f64) -> Result<f64> {
    if !(a > 0.0 && b > 0.0) {
        return Err(domain(format!(
            "ln_gamma_ratio requires positive arguments, got ({a}, {b})"
        )));
    }
    Ok(ln_gamma_ratio_unchecked(a, b))
}

pub(crate) fn ln_gamma_ratio_unchecked(a: f64, b: f64) -> f64 {
    ln_gamma_ratio_with_gap(a, b, a - b)
}

/// `ln Γ(q + s1) − ln Γ(q + s2)` where the shifts are small and `q` may be
/// huge; the gap `s1 − s2` is taken exactly from the shifts rather than from
/// the rounded sums.
pub fn ln_gamma_ratio_shifted(q: f64, s1: f64, s2: f64) -> f64 {
    ln_gamma_ratio_with_gap(q + s1, q + s2, s1 - s2)
}

fn ln_gamma_ratio_with_gap(a: f64, b: f64, gap: f64) -> f64 {
    let lo = a.min(b);
    if lo >= STIRLING_MIN {
        return (a - 0.5) * (gap / b).ln_1p() + gap * b.ln() - gap + stirling_tail(a) - stirling_tail(b);
    }
    let shift = (STIRLING_MIN - lo).ceil() as usize;
    let mut log_prod = 0.0;
    for j in 0..shift {
        log_prod += (gap / (b + j as f64)).ln_1p();
    }
    ln_gamma_ratio_with_gap(a + shift as f64, b + shift as f64, gap) - log_prod
}

/// `1 / Γ(x)` for any real `x`, using reflection for `x < 1/2`.
///
/// Returns exactly zero at the poles `x = 0, −1, −2, …`.
pub fn reciprocal_gamma(x: f64) -> f64 {
    if x >= 0.5 {
        return (-log_gamma_unchecked(x)).exp();
    }
    if x == x.floor() {
        return 0.0;
    }
    // 1/Γ(x) = Γ(1 − x) sin(πx) / π
    let s = sin_pi(x);
    log_gamma_unchecked(1.0 - x).exp() * s / std::f64::consts::PI
}

/// `sin(πx)` with exact zeros at integers.
pub fn sin_pi(x: f64) -> f64 {
    let r = x - 2.0 * (x / 2.0).floor(); // r in [0, 2)
    if r == 0.0 || r == 1.0 {
        return 0.0;
    }
    if r == 0.5 {
        return 1.0;
    }
    if r == 1.5 {
        return -1.0;
    }
    (std::f64::consts::PI * r).sin()
}
