//! Bessel functions of the first kind for integer order and real argument.

use std::f64::consts::PI;

/// Above this argument `J_0` and `J_1` come from the Hankel expansion.
const HANKEL_MIN: f64 = 25.0;

/// Coefficients `a_k(ν) = Π_{j=1..k} (4ν² − (2j−1)²) / (k! 8^k)` of the
/// large-argument Hankel expansion, for `k = 0..count`.
pub fn hankel_coefficients(order: u32, count: usize) -> Vec<f64> {
    let mu = 4.0 * (order as f64).powi(2);
    let mut out = Vec::with_capacity(count);
    let mut a = 1.0;
    out.push(a);
    for k in 1..count {
        let odd = (2 * k - 1) as f64;
        a *= (mu - odd * odd) / (k as f64 * 8.0);
        out.push(a);
    }
    out
}

fn hankel(order: u32, x: f64) -> f64 {
    let coeffs = hankel_coefficients(order, 40);
    let (mut p, mut q) = (0.0, 0.0);
    let mut pow = 1.0;
    let mut last = f64::INFINITY;
    for (k, a) in coeffs.iter().enumerate() {
        let term = a * pow;
        if term.abs() > last && k > 2 {
            break;
        }
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            p += sign * term;
        } else {
            q += sign * term;
        }
        if term.abs() < 1e-17 {
            break;
        }
        last = term.abs();
        pow /= x;
    }
    let chi = x - (order as f64 * 0.5 + 0.25) * PI;
    (2.0 / (PI * x)).sqrt() * (p * chi.cos() - q * chi.sin())
}

/// Miller's backward recurrence normalized by `J_0 + 2 Σ J_{2k} = 1`.
fn miller(order: usize, x: f64) -> f64 {
    const BIG: f64 = 1e250;
    let scale = order.max(x.ceil() as usize);
    let start = scale + 20 + (40.0 * scale as f64).sqrt() as usize;
    let start = start + start % 2;
    let two_over_x = 2.0 / x;
    let (mut above, mut here) = (0.0, 1.0);
    let mut even_sum = 0.0;
    let mut wanted = 0.0;
    for k in (1..=start).rev() {
        let below = k as f64 * two_over_x * here - above;
        above = here;
        here = below;
        if here.abs() > BIG {
            here /= BIG;
            above /= BIG;
            even_sum /= BIG;
            wanted /= BIG;
        }
        // `here` now holds the unnormalized J_{k-1}
        if k - 1 == order {
            wanted = here;
        }
        if (k - 1) % 2 == 0 && k > 1 {
            even_sum += here;
        }
    }
    wanted / (here + 2.0 * even_sum)
}

/// `J_order(x)` with absolute error near 1e−15.
pub fn bessel_j(order: u32, x: f64) -> f64 {
    if x == 0.0 {
        return if order == 0 { 1.0 } else { 0.0 };
    }
    if x < 0.0 {
        let v = bessel_j(order, -x);
        return if order % 2 == 1 { -v } else { v };
    }
    if x >= HANKEL_MIN && (order as f64) < x {
        let j0 = hankel(0, x);
        if order == 0 {
            return j0;
        }
        let mut prev = j0;
        let mut cur = hankel(1, x);
        for k in 1..order {
            let next = 2.0 * k as f64 / x * cur - prev;
            prev = cur;
            cur = next;
        }
        return cur;
    }
    miller(order as usize, x)
}
