//! Runnable cross-route and invariant suites.
//!
//! Every check compares two independent computations (or one computation
//! against an exact identity) and reports the achieved discrepancy next to
//! its tolerance. Tolerances can be overridden by check name.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::continuum::{continuum_convergence_check, riesz_kernel_infinite, riesz_kernel_periodic, KernelSpec};
use crate::error::{invalid, FracError, Result};
use crate::lattice1d::{
    build_laplacian_1d, element_infinite_closed, element_infinite_quadrature, element_periodic_bloch,
    element_periodic_images, ChainSpec, FractionalOrder,
};
use crate::lattice_nd::{
    asymptotic_constant_nd, element_infinite_nd_bessel_extrapolated, element_infinite_nd_bz, element_periodic_nd,
    normalized_frequency_2d, BesselConfig, LatticeSpec, OffsetVector,
};
use crate::special::quadrature::QuadratureSpec;
use crate::special::{bessel_j, hurwitz_zeta};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    Oracles,
    Asymptotics,
    Continuum,
}

impl FromStr for Suite {
    type Err = FracError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(Suite::All),
            "oracles" => Ok(Suite::Oracles),
            "asymptotics" => Ok(Suite::Asymptotics),
            "continuum" => Ok(Suite::Continuum),
            _ => Err(invalid(format!("unknown suite '{s}' (all, oracles, asymptotics, continuum)"))),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::All => "all",
            Suite::Oracles => "oracles",
            Suite::Asymptotics => "asymptotics",
            Suite::Continuum => "continuum",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub suite: Suite,
    pub name: String,
    pub achieved: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub detail: String,
}

/// Primary routes under test. Replacing one with a perturbed version must
/// make the suites fail.
#[derive(Clone, Copy)]
pub struct Routes {
    pub closed: fn(&FractionalOrder, u64) -> f64,
}

impl Default for Routes {
    fn default() -> Self {
        Self { closed: element_infinite_closed }
    }
}

const ORDERS_1D: [f64; 6] = [0.3, 0.5, 1.0, 1.5, 2.7, 3.5];

/// Check names and default tolerances.
pub const DEFAULT_TOLERANCES: &[(&str, f64)] = &[
    ("binomial_stencil", 1e-13),
    ("closed_vs_quadrature", 1e-10),
    ("bloch_vs_images", 1e-9),
    ("periodic_to_infinite", 1.0),
    ("hurwitz_shift", 1e-11),
    ("bessel_recurrence", 1e-10),
    ("matrix_invariants", 1e-10),
    ("nd_cross_routes", 1e-6),
    ("chain_prefactor", 0.02),
    ("chain_slope", 0.02),
    ("nd_constant_identity", 1e-10),
    ("nd_exponent", 0.05),
    ("nd_prefactor", 0.05),
    ("dispersion_crossing", 1e-12),
    ("kernel_zeta_vs_images", 1e-9),
    ("kernel_large_period", 0.05),
    ("continuum_final_rel_error", 0.01),
];

pub struct Verifier {
    tolerances: BTreeMap<String, f64>,
    routes: Routes,
}

impl Default for Verifier {
    fn default() -> Self {
        Self {
            tolerances: DEFAULT_TOLERANCES.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            routes: Routes::default(),
        }
    }
}

fn slope(points: &[(f64, f64)]) -> f64 {
    let m = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / m;
    let my = points.iter().map(|p| p.1).sum::<f64>() / m;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

impl Verifier {
    pub fn with_routes(routes: Routes) -> Self {
        Self { routes, ..Self::default() }
    }

    pub fn override_tolerance(&mut self, name: &str, value: f64) -> Result<()> {
        if !(value >= 0.0) {
            return Err(invalid(format!("tolerance for '{name}' must be non-negative")));
        }
        match self.tolerances.get_mut(name) {
            Some(t) => {
                *t = value;
                Ok(())
            }
            None => Err(invalid(format!(
                "unknown check '{name}'; known: {}",
                DEFAULT_TOLERANCES.iter().map(|t| t.0).collect::<Vec<_>>().join(", ")
            ))),
        }
    }

    pub fn tolerances(&self) -> &BTreeMap<String, f64> {
        &self.tolerances
    }

    pub fn run(&self, suite: Suite) -> Vec<CheckResult> {
        let mut out = Vec::new();
        if matches!(suite, Suite::All | Suite::Oracles) {
            self.oracles(&mut out);
        }
        if matches!(suite, Suite::All | Suite::Asymptotics) {
            self.asymptotics(&mut out);
        }
        if matches!(suite, Suite::All | Suite::Continuum) {
            self.continuum(&mut out);
        }
        out
    }

    fn check(&self, out: &mut Vec<CheckResult>, suite: Suite, name: &str, f: impl FnOnce() -> Result<(f64, String)>) {
        let tolerance = self.tolerances[name];
        let (achieved, detail) = match f() {
            Ok(v) => v,
            Err(e) => (f64::NAN, e.to_string()),
        };
        out.push(CheckResult {
            suite,
            name: name.to_string(),
            achieved,
            tolerance,
            passed: achieved.is_finite() && achieved <= tolerance,
            detail,
        });
    }

    fn oracles(&self, out: &mut Vec<CheckResult>) {
        let s = Suite::Oracles;
        let closed = self.routes.closed;
        self.check(out, s, "binomial_stencil", || {
            let mut err: f64 = 0.0;
            for (alpha, stencil) in [(2.0, vec![2.0, -1.0]), (4.0, vec![6.0, -4.0, 1.0])] {
                let o = FractionalOrder::new(alpha)?;
                for p in 0..8u64 {
                    let want = stencil.get(p as usize).copied().unwrap_or(0.0);
                    err = err.max((closed(&o, p) - want).abs());
                }
            }
            Ok((err, "alpha in {2, 4}, p in 0..8".into()))
        });
        self.check(out, s, "closed_vs_quadrature", || {
            let spec = QuadratureSpec::default();
            let mut err: f64 = 0.0;
            for alpha in ORDERS_1D {
                let o = FractionalOrder::new(alpha)?;
                for p in 0..=30u64 {
                    err = err.max((closed(&o, p) - element_infinite_quadrature(&o, p, &spec)?).abs());
                }
            }
            Ok((err, "6 orders, p in 0..=30".into()))
        });
        self.check(out, s, "bloch_vs_images", || {
            let mut err: f64 = 0.0;
            for alpha in ORDERS_1D {
                let o = FractionalOrder::new(alpha)?;
                for n in [4usize, 7, 16, 101] {
                    for p in 0..n as i64 {
                        let a = element_periodic_bloch(&o, n, p)?;
                        let b = element_periodic_images(&o, n, p, 1e-12)?;
                        err = err.max((a - b).abs());
                    }
                }
            }
            Ok((err, "N in {4, 7, 16, 101}, image tol 1e-12".into()))
        });
        self.check(out, s, "periodic_to_infinite", || {
            // |periodic − infinite| against N^{−α}, floored at the rounding
            // level of an N-term sum of diagonal-sized terms
            let n = 10_000usize;
            let mut worst: f64 = 0.0;
            for alpha in ORDERS_1D {
                let o = FractionalOrder::new(alpha)?;
                let scale = (n as f64).powf(-alpha) + 64.0 * f64::EPSILON * closed(&o, 0).abs();
                for p in 0..=10u64 {
                    let d = (element_periodic_bloch(&o, n, p as i64)? - closed(&o, p)).abs();
                    worst = worst.max(d / scale);
                }
            }
            Ok((worst, "N = 10^4, p in 0..=10, relative to N^-alpha".into()))
        });
        self.check(out, s, "hurwitz_shift", || {
            let mut err: f64 = 0.0;
            for &sv in &[1.1, 2.0, 3.5, 7.9] {
                for &x in &[0.1, 0.5, 1.3, 4.9] {
                    let lhs = hurwitz_zeta(sv, x)? - hurwitz_zeta(sv, x + 1.0)?;
                    let rhs = x.powf(-sv);
                    err = err.max((lhs - rhs).abs() / rhs);
                }
            }
            Ok((err, "relative".into()))
        });
        self.check(out, s, "bessel_recurrence", || {
            let mut err: f64 = 0.0;
            for p in 1..=20u32 {
                for k in 1..=40 {
                    let x = 0.5 + (k as f64 - 1.0) * 39.5 / 39.0;
                    let lhs = bessel_j(p - 1, x) + bessel_j(p + 1, x);
                    err = err.max((lhs - 2.0 * p as f64 / x * bessel_j(p, x)).abs());
                }
            }
            Ok((err, "p <= 20, x in [0.5, 40]".into()))
        });
        self.check(out, s, "matrix_invariants", || {
            let mut worst: f64 = 0.0;
            for k in 0..50 {
                let alpha = 0.1 + 3.8 * ((k as f64 * 0.618_033_988_749_895) % 1.0);
                let n = 2 + (k * 37) % 199;
                let m = build_laplacian_1d(&FractionalOrder::new(alpha)?, &ChainSpec::finite(n)?)?;
                let scale = m.scale();
                let eig = m.eigenvalues().into_iter().fold(f64::NEG_INFINITY, f64::max);
                worst = worst.max(eig.max(0.0) / scale).max(m.row_sum().abs() / scale);
            }
            Ok((worst, "50 (alpha, N) pairs; max eigenvalue and row sum over scale".into()))
        });
        self.check(out, s, "nd_cross_routes", || {
            let mut worst: f64 = 0.0;
            let cases: [(f64, Vec<i64>, Vec<usize>); 3] = [
                (0.5, vec![0, 0], vec![1024, 1024]),
                (1.5, vec![2, 1], vec![1024, 1024]),
                (1.0, vec![1, 0, 0], vec![128, 128, 128]),
            ];
            for (alpha, comps, sizes) in cases {
                let o = FractionalOrder::new(alpha)?;
                let dim = comps.len();
                let off = OffsetVector::new(comps);
                let per = element_periodic_nd(&o, &LatticeSpec::periodic(sizes)?, &off)?;
                let bz = element_infinite_nd_bz(&o, dim, &off, &QuadratureSpec::default())?;
                let be = element_infinite_nd_bessel_extrapolated(&o, dim, &off, &BesselConfig::default())?.value;
                worst = worst.max((per - bz).abs()).max((per - be).abs()).max((bz - be).abs());
            }
            Ok((worst, "spectral sum, zone quadrature, Bessel product".into()))
        });
    }

    fn asymptotics(&self, out: &mut Vec<CheckResult>) {
        let s = Suite::Asymptotics;
        let closed = self.routes.closed;
        self.check(out, s, "chain_prefactor", || {
            let mut worst: f64 = 0.0;
            for alpha in [0.5, 1.5] {
                let o = FractionalOrder::new(alpha)?;
                let scaled = closed(&o, 200) * 200f64.powf(alpha + 1.0);
                let want = -o.riesz_coefficient();
                worst = worst.max(((scaled - want) / want).abs());
            }
            Ok((worst, "relative, p = 200".into()))
        });
        self.check(out, s, "chain_slope", || {
            let mut worst: f64 = 0.0;
            for alpha in [0.5, 1.5] {
                let o = FractionalOrder::new(alpha)?;
                let pts: Vec<(f64, f64)> = (100..=200u64)
                    .step_by(10)
                    .map(|p| ((p as f64).ln(), closed(&o, p).abs().ln()))
                    .collect();
                worst = worst.max((slope(&pts) + alpha + 1.0).abs());
            }
            Ok((worst, "log-log slope over p in 100..=200".into()))
        });
        self.check(out, s, "nd_constant_identity", || {
            let mut worst: f64 = 0.0;
            for k in 0..10 {
                let alpha = 0.15 + 3.7 * ((k as f64 * 0.754_877_666_246_692_7) % 1.0);
                let c1 = asymptotic_constant_nd(1, alpha)?;
                let want = FractionalOrder::new(alpha)?.riesz_coefficient();
                worst = worst.max((c1 - want).abs());
            }
            Ok((worst, "C_{1,alpha} against the chain coefficient".into()))
        });
        let fit = || -> Result<(f64, f64)> {
            let o = FractionalOrder::new(0.5)?;
            let spec = QuadratureSpec::default();
            let mut pts = Vec::new();
            let mut last = 0.0;
            for p in (20..=60i64).step_by(5) {
                let v = element_infinite_nd_bz(&o, 2, &OffsetVector::new(vec![p, 0]), &spec)?;
                pts.push(((p as f64).ln(), v.abs().ln()));
                last = v * (p as f64).powf(2.5);
            }
            let c = asymptotic_constant_nd(2, 0.5)?;
            Ok((slope(&pts), ((last + c) / c).abs()))
        };
        let fitted = fit();
        self.check(out, s, "nd_exponent", || {
            let (sl, _) = fitted.clone()?;
            Ok(((sl + 2.5).abs(), format!("n = 2, alpha = 0.5, slope {sl:.6}")))
        });
        self.check(out, s, "nd_prefactor", || {
            let (_, rel) = fitted.clone()?;
            Ok((rel, "n = 2, alpha = 0.5, relative to -C at p = 60".into()))
        });
        self.check(out, s, "dispersion_crossing", || {
            let target = 2f64.powf(-1.5);
            let mut worst: f64 = 0.0;
            for alpha in [1.0, 1.5, 2.0, 3.0] {
                for k in 0..=16 {
                    // sin²(κ₁/2) + sin²(κ₂/2) = 1/4
                    let t = 0.25 * k as f64 / 16.0;
                    let k1 = 2.0 * t.sqrt().asin();
                    let k2 = 2.0 * (0.25 - t).sqrt().asin();
                    worst = worst.max((normalized_frequency_2d(alpha, k1, k2) - target).abs());
                }
                if alpha == 2.0 {
                    worst = worst.max((normalized_frequency_2d(alpha, PI, PI) - 1.0).abs());
                }
            }
            Ok((worst, "on the lambda = 1 contour".into()))
        });
    }

    fn continuum(&self, out: &mut Vec<CheckResult>) {
        let s = Suite::Continuum;
        self.check(out, s, "kernel_zeta_vs_images", || {
            let mut worst: f64 = 0.0;
            for alpha in [0.4, 1.0, 1.7, 2.5] {
                for xi in [0.1, 0.25, 0.5] {
                    let spec = KernelSpec::periodic(alpha, 1.0)?;
                    let direct = direct_image_sum(alpha, xi);
                    worst = worst.max((riesz_kernel_periodic(&spec, xi)? - direct).abs());
                }
            }
            Ok((worst, "L = 1, 10^6 images plus tail".into()))
        });
        self.check(out, s, "kernel_large_period", || {
            let inf = riesz_kernel_infinite(&KernelSpec::infinite(0.5)?, 1.0)?;
            let mut pts = Vec::new();
            for l in [1e2, 1e3, 1e4] {
                let v = riesz_kernel_periodic(&KernelSpec::periodic(0.5, l)?, 1.0)?;
                pts.push((l.ln(), (v - inf).abs().ln()));
            }
            let sl = slope(&pts);
            Ok(((sl + 1.5).abs(), format!("alpha = 0.5, error slope {sl:.4} in L")))
        });
        let h = [0.1, 1.0 / 40.0, 1.0 / 160.0, 1.0 / 640.0];
        match KernelSpec::infinite(0.5).and_then(|k| continuum_convergence_check(&k, 1.0, &h)) {
            Ok(report) => {
                let mut prev = f64::INFINITY;
                for row in &report.rows {
                    out.push(CheckResult {
                        suite: s,
                        name: format!("continuum_error[h={}]", row.h),
                        achieved: row.abs_error,
                        tolerance: prev,
                        passed: row.abs_error < prev,
                        detail: format!("p = {}, relative {:.3e}", row.p, row.rel_error),
                    });
                    prev = row.abs_error;
                }
                self.check(out, s, "continuum_final_rel_error", || {
                    let rate = report.empirical_rate().unwrap_or(f64::NAN);
                    Ok((report.final_rel_error().unwrap_or(f64::NAN), format!("empirical rate {rate:.3}")))
                });
            }
            Err(e) => self.check(out, s, "continuum_final_rel_error", || Err(e)),
        }
    }
}

fn direct_image_sum(alpha: f64, xi: f64) -> f64 {
    let sv = alpha + 1.0;
    let m = 1_000_000i64;
    let mut sum = 0.0;
    for n in (1..=m).rev() {
        sum += (n as f64 - xi).powf(-sv) + (n as f64 + xi).powf(-sv);
    }
    sum += xi.powf(-sv);
    let edge = m as f64 + 0.5;
    sum += ((edge - xi).powf(1.0 - sv) + (edge + xi).powf(1.0 - sv)) / (sv - 1.0);
    FractionalOrder::new(alpha).map(|o| o.riesz_coefficient()).unwrap_or(f64::NAN) * sum
}

pub fn all_passed(results: &[CheckResult]) -> bool {
    results.iter().all(|r| r.passed)
}
