//! Acceptance criteria. Runs without the libtest harness so every criterion
//! prints its `[PASS]` / `[FAIL]` line with the achieved figures; the process
//! exits non-zero if any criterion fails.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fraclat_core::continuum::{continuum_convergence_check, riesz_kernel_infinite, riesz_kernel_periodic, KernelSpec};
use fraclat_core::lattice1d::{
    build_laplacian_1d, element_infinite_closed, element_infinite_quadrature, element_periodic_bloch,
    element_periodic_images,
};
use fraclat_core::lattice_nd::{
    asymptotic_constant_nd, dispersion_surface, element_infinite_nd_bessel_extrapolated, element_infinite_nd_bz,
    element_periodic_nd, normalized_frequency_2d, BesselConfig,
};
use fraclat_core::{ChainSpec, FractionalOrder, LatticeSpec, OffsetVector, QuadratureSpec};

const ORDERS: [f64; 6] = [0.3, 0.5, 1.0, 1.5, 2.7, 3.5];

fn report(id: u32, title: &str, passed: bool, detail: String) {
    let tag = if passed { "PASS" } else { "FAIL" };
    println!("[{tag}] #{id} {title}: {detail}");
    assert!(passed, "criterion #{id} failed: {detail}");
}

fn ord(alpha: f64) -> FractionalOrder {
    FractionalOrder::new(alpha).unwrap()
}

fn slope(points: &[(f64, f64)]) -> f64 {
    let m = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / m;
    let my = points.iter().map(|p| p.1).sum::<f64>() / m;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

fn criterion_01_binomial_degeneration() {
    let start = Instant::now();
    let mut err: f64 = 0.0;
    for (alpha, stencil) in [(2.0, vec![2.0, -1.0]), (4.0, vec![6.0, -4.0, 1.0])] {
        for p in 0..20u64 {
            let want = stencil.get(p as usize).copied().unwrap_or(0.0);
            err = err.max((element_infinite_closed(&ord(alpha), p) - want).abs());
        }
    }
    let t = start.elapsed();
    report(
        1,
        "binomial degeneration",
        err <= 1e-13 && t < Duration::from_secs(1),
        format!("max error {err:.2e} (tol 1e-13), {t:.2?} (< 1 s)"),
    );
}

fn criterion_02_closed_vs_quadrature() {
    let start = Instant::now();
    let spec = QuadratureSpec::default();
    let mut err: f64 = 0.0;
    for alpha in ORDERS {
        for p in 0..=30u64 {
            let a = element_infinite_closed(&ord(alpha), p);
            let b = element_infinite_quadrature(&ord(alpha), p, &spec).unwrap();
            err = err.max((a - b).abs());
        }
    }
    let t = start.elapsed();
    report(
        2,
        "closed form vs quadrature",
        err <= 1e-10 && t < Duration::from_secs(10),
        format!("max difference {err:.2e} (tol 1e-10), {t:.2?} (< 10 s)"),
    );
}

fn criterion_03_finite_lattice_dual_route() {
    let start = Instant::now();
    let mut err: f64 = 0.0;
    for alpha in ORDERS {
        for n in [4usize, 7, 16, 101] {
            for p in 0..n as i64 {
                let a = element_periodic_bloch(&ord(alpha), n, p).unwrap();
                let b = element_periodic_images(&ord(alpha), n, p, 1e-12).unwrap();
                err = err.max((a - b).abs());
            }
        }
    }
    // N = 10^4 against the infinite chain: |difference| / N^{−α}, with the
    // double-precision floor of an N-term sum of diagonal-sized terms
    let n = 10_000usize;
    let mut ratio: f64 = 0.0;
    for alpha in ORDERS {
        let o = ord(alpha);
        let scale = (n as f64).powf(-alpha) + 64.0 * f64::EPSILON * element_infinite_closed(&o, 0).abs();
        for p in 0..=20u64 {
            let d = element_periodic_bloch(&o, n, p as i64).unwrap() - element_infinite_closed(&o, p);
            ratio = ratio.max(d.abs() / scale);
        }
    }
    let t = start.elapsed();
    report(
        3,
        "Bloch sum vs image sum",
        err <= 1e-9 && ratio <= 1.0 && t < Duration::from_secs(30),
        format!("max difference {err:.2e} (tol 1e-9); N=1e4 |periodic-infinite|/N^-alpha <= {ratio:.2e} (<= 1); {t:.2?} (< 30 s)"),
    );
}

fn criterion_04_power_law_asymptotics() {
    let mut worst_rel: f64 = 0.0;
    let mut worst_slope: f64 = 0.0;
    for alpha in [0.5, 1.5] {
        let o = ord(alpha);
        let c = o.riesz_coefficient();
        let rel = ((element_infinite_closed(&o, 200) * 200f64.powf(alpha + 1.0) + c) / c).abs();
        let pts: Vec<(f64, f64)> = (100..=200u64)
            .step_by(5)
            .map(|p| ((p as f64).ln(), element_infinite_closed(&o, p).abs().ln()))
            .collect();
        worst_rel = worst_rel.max(rel);
        worst_slope = worst_slope.max((slope(&pts) + alpha + 1.0).abs());
    }
    report(
        4,
        "far-field power law",
        worst_rel <= 0.02 && worst_slope <= 0.02,
        format!("prefactor rel error {worst_rel:.2e} (tol 0.02), slope deviation {worst_slope:.2e} (tol 0.02)"),
    );
}

fn criterion_05_semidefinite_and_translation_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    let mut worst_eig: f64 = f64::NEG_INFINITY;
    let mut worst_sum: f64 = 0.0;
    for _ in 0..50 {
        let alpha = rng.gen_range(0.05..4.0);
        let n = rng.gen_range(2..=512usize);
        let m = build_laplacian_1d(&ord(alpha), &ChainSpec::finite(n).unwrap()).unwrap();
        let scale = m.scale();
        let top = m.eigenvalues().into_iter().fold(f64::NEG_INFINITY, f64::max);
        worst_eig = worst_eig.max(top / scale);
        worst_sum = worst_sum.max(m.row_sum().abs() / scale);
    }
    report(
        5,
        "negative semidefinite, zero row sums",
        worst_eig <= 1e-10 && worst_sum <= 1e-10,
        format!("max eigenvalue/scale {worst_eig:.2e}, max |row sum|/scale {worst_sum:.2e} (tol 1e-10, 50 pairs)"),
    );
}

fn direct_image_sum(alpha: f64, length: f64, x: f64) -> f64 {
    let s = alpha + 1.0;
    let m = 1_000_000i64;
    let mut sum = 0.0;
    for n in (1..=m).rev() {
        sum += (n as f64 * length - x).powf(-s) + (n as f64 * length + x).powf(-s);
    }
    sum += x.powf(-s);
    let edge = (m as f64 + 0.5) * length;
    sum += ((edge - x).powf(1.0 - s) + (edge + x).powf(1.0 - s)) / ((s - 1.0) * length);
    ord(alpha).riesz_coefficient() * sum
}

fn criterion_06_periodic_kernel() {
    let mut err: f64 = 0.0;
    for alpha in [0.4, 1.0, 1.7, 2.5] {
        for xi in [0.1, 0.25, 0.5] {
            let l = 2.0;
            let v = riesz_kernel_periodic(&KernelSpec::periodic(alpha, l).unwrap(), xi * l).unwrap();
            err = err.max((v - direct_image_sum(alpha, l, xi * l)).abs());
        }
    }
    let inf = riesz_kernel_infinite(&KernelSpec::infinite(0.5).unwrap(), 1.0).unwrap();
    let pts: Vec<(f64, f64)> = [1e2, 1e3, 1e4]
        .iter()
        .map(|&l| {
            let v = riesz_kernel_periodic(&KernelSpec::periodic(0.5, l).unwrap(), 1.0).unwrap();
            (l.ln(), (v - inf).abs().ln())
        })
        .collect();
    let decreasing = pts.windows(2).all(|w| w[1].1 < w[0].1);
    let sl = slope(&pts);
    report(
        6,
        "periodic Riesz kernel",
        err <= 1e-9 && decreasing && (sl + 1.5).abs() <= 0.05,
        format!("zeta vs image sum {err:.2e} (tol 1e-9); large-L error slope {sl:.4} (expected -1.5)"),
    );
}

fn criterion_07_continuum_limit() {
    let h = [0.1, 1.0 / 40.0, 1.0 / 160.0, 1.0 / 640.0];
    let mut ok = true;
    let mut parts = Vec::new();
    for alpha in [0.5, 1.5] {
        let r = continuum_convergence_check(&KernelSpec::infinite(alpha).unwrap(), 1.0, &h).unwrap();
        let fin = r.final_rel_error().unwrap();
        ok &= r.is_monotone() && fin <= 0.01;
        parts.push(format!(
            "alpha={alpha}: monotone {}, final rel error {fin:.2e}, rate {:.3}",
            r.is_monotone(),
            r.empirical_rate().unwrap()
        ));
    }
    report(7, "h-scaled elements to the Riesz kernel", ok, parts.join("; "));
}

fn criterion_08_nd_cross_representation() {
    let start = Instant::now();
    let cases: [(f64, Vec<i64>, Vec<usize>); 3] = [
        (0.5, vec![0, 0], vec![1024, 1024]),
        (1.5, vec![2, 1], vec![1024, 1024]),
        (1.0, vec![1, 0, 0], vec![128, 128, 128]),
    ];
    let mut worst: f64 = 0.0;
    for (alpha, comps, sizes) in cases {
        let o = ord(alpha);
        let dim = comps.len();
        let off = OffsetVector::new(comps);
        let per = element_periodic_nd(&o, &LatticeSpec::periodic(sizes).unwrap(), &off).unwrap();
        let bz = element_infinite_nd_bz(&o, dim, &off, &QuadratureSpec::default()).unwrap();
        let be = element_infinite_nd_bessel_extrapolated(&o, dim, &off, &BesselConfig::default()).unwrap().value;
        worst = worst.max((per - bz).abs()).max((per - be).abs()).max((bz - be).abs());
    }
    let t = start.elapsed();
    report(
        8,
        "nD spectral sum / zone quadrature / Bessel product",
        worst <= 1e-6 && t < Duration::from_secs(120),
        format!("max pairwise difference {worst:.2e} (tol 1e-6), {t:.2?} (< 2 min)"),
    );
}

fn criterion_09_nd_asymptotic_constant() {
    let o = ord(0.5);
    let spec = QuadratureSpec::default();
    let c = asymptotic_constant_nd(2, 0.5).unwrap();
    let mut pts = Vec::new();
    let mut prefactor = 0.0;
    for p in (20..=60i64).step_by(5) {
        let v = element_infinite_nd_bz(&o, 2, &OffsetVector::new(vec![p, 0]), &spec).unwrap();
        pts.push(((p as f64).ln(), v.abs().ln()));
        prefactor = v * (p as f64).powf(2.5);
    }
    let exponent = slope(&pts);
    let rel = ((prefactor + c) / c).abs();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0009);
    let mut identity: f64 = 0.0;
    for _ in 0..10 {
        let alpha = rng.gen_range(0.05..3.95);
        let want = ord(alpha).riesz_coefficient();
        identity = identity.max((asymptotic_constant_nd(1, alpha).unwrap() - want).abs());
    }
    report(
        9,
        "nD far-field constant",
        (exponent + 2.5).abs() <= 0.05 && rel <= 0.05 && identity <= 1e-10,
        format!("exponent {exponent:.4} (-2.5 +/- 0.05), prefactor rel error {rel:.2e} (tol 0.05), C_1 identity {identity:.2e} (tol 1e-10)"),
    );
}

fn criterion_10_dispersion_crossing() {
    let target = 2f64.powf(-1.5);
    let mut err: f64 = 0.0;
    for alpha in [1.0, 1.5, 2.0, 3.0] {
        for k in 0..=32 {
            let t = 0.25 * k as f64 / 32.0;
            let (k1, k2) = (2.0 * t.sqrt().asin(), 2.0 * (0.25 - t).sqrt().asin());
            err = err.max((normalized_frequency_2d(alpha, k1, k2) - target).abs());
        }
        // grid points (π/3, 0) and (0, π/3) of a 4 × 4 sheet sit on λ = 1
        let sheet = dispersion_surface(&ord(alpha), 4).unwrap();
        for (k1, k2, w) in sheet {
            let lam = 4.0 * ((0.5 * k1).sin().powi(2) + (0.5 * k2).sin().powi(2));
            if (lam - 1.0).abs() < 1e-12 {
                err = err.max((w - target).abs());
            }
        }
    }
    let top = (normalized_frequency_2d(2.0, PI, PI) - 1.0).abs();
    report(
        10,
        "dispersion sheets cross at 2^-3/2",
        err <= 1e-12 && top <= 1e-12,
        format!("max deviation {err:.2e} from 0.35355 (tol 1e-12); alpha=2 at (pi,pi) off by {top:.2e}"),
    );
}

fn main() {
    // failures are reported through the [FAIL] line, keep the panic hook quiet
    std::panic::set_hook(Box::new(|_| {}));
    let criteria: [fn(); 10] = [
        criterion_01_binomial_degeneration,
        criterion_02_closed_vs_quadrature,
        criterion_03_finite_lattice_dual_route,
        criterion_04_power_law_asymptotics,
        criterion_05_semidefinite_and_translation_invariant,
        criterion_06_periodic_kernel,
        criterion_07_continuum_limit,
        criterion_08_nd_cross_representation,
        criterion_09_nd_asymptotic_constant,
        criterion_10_dispersion_crossing,
    ];
    let failed = criteria.iter().filter(|c| std::panic::catch_unwind(**c).is_err()).count();
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
