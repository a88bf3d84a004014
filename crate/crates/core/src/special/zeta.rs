//! Hurwitz zeta functions by partial summation with an Euler–Maclaurin tail.

use crate::error::{domain, Result};

/// Number of leading terms summed directly before the Euler–Maclaurin tail.
const DIRECT_TERMS: usize = 16;

/// `B_{2k} / (2k)!` for k = 1, 2, 3.
const EM_COEFFS: [f64; 3] = [1.0 / 12.0, -1.0 / 720.0, 1.0 / 30_240.0];

/// `ζ(s, x) = Σ_{n≥0} (x + n)^{−s}` for `s > 1`, `x > 0`.
pub fn hurwitz_zeta(s: f64, x: f64) -> Result<f64> {
    if !(s > 1.0) || !s.is_finite() {
        return Err(domain(format!("hurwitz_zeta requires s > 1, got {s}")));
    }
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain(format!("hurwitz_zeta requires x > 0, got {x}")));
    }
    Ok(hurwitz_zeta_unchecked(s, x))
}

pub(crate) fn hurwitz_zeta_unchecked(s: f64, x: f64) -> f64 {
    let mut sum = 0.0;
    for n in (0..DIRECT_TERMS).rev() {
        sum += (x + n as f64).powf(-s);
    }
    let a = x + DIRECT_TERMS as f64;
    let a_pow = a.powf(-s);
    let mut tail = a * a_pow / (s - 1.0) + 0.5 * a_pow;
    // c_k · s(s+1)…(s+2k−2) · a^{1−s−2k}
    let inv_a2 = 1.0 / (a * a);
    let mut rising = s;
    let mut term = a_pow / a;
    for (k, c) in EM_COEFFS.iter().enumerate() {
        if k > 0 {
            let j = (2 * k) as f64;
            rising *= (s + j - 1.0) * (s + j);
            term *= inv_a2;
        }
        tail += c * rising * term;
    }
    sum + tail
}

/// `ζ̃(s, x) = Σ_{n≥0} |x + n|^{−s}`, defined for any real `x` that is not
/// zero or a negative integer.
///
/// Negative `x` is reduced by summing the terms with `x + n < 0` directly
/// and handing the rest to [`hurwitz_zeta`].
pub fn hurwitz_zeta_abs(s: f64, x: f64) -> Result<f64> {
    if !(s > 1.0) || !s.is_finite() {
        return Err(domain(format!("hurwitz_zeta_abs requires s > 1, got {s}")));
    }
    if !x.is_finite() || (x <= 0.0 && x == x.floor()) {
        return Err(domain(format!(
            "hurwitz_zeta_abs is singular at non-positive integer x = {x}"
        )));
    }
    if x > 0.0 {
        return Ok(hurwitz_zeta_unchecked(s, x));
    }
    let negative_terms = (-x).ceil() as u64;
    let head: f64 = (0..negative_terms).map(|n| (x + n as f64).abs().powf(-s)).sum();
    Ok(head + hurwitz_zeta_unchecked(s, x + negative_terms as f64))
}
