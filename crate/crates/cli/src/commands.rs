use std::f64::consts::PI;

use fraclat_core::continuum::{riesz_kernel_infinite, riesz_kernel_periodic, KernelPeriod, KernelSpec};
use fraclat_core::lattice1d::{
    build_laplacian_1d, element_infinite_closed, element_infinite_quadrature, element_periodic_bloch,
    element_periodic_images,
};
use fraclat_core::lattice_nd::{
    dispersion_surface, element_infinite_nd_bessel_extrapolated, element_infinite_nd_bz, element_periodic_nd,
    normalized_frequency_1d, normalized_frequency_2d, periodic_cell_nd, BesselConfig,
};
use fraclat_core::record::{Cell, OutputRecord};
use fraclat_core::verify::{all_passed, Suite, Verifier};
use fraclat_core::{
    ChainSize, ChainSpec, FractionalOrder, LatticeSizes, LatticeSpec, OffsetVector, QuadratureScheme, QuadratureSpec,
};

use crate::args::{parse_dims, parse_offset, parse_range, Command, Cut, FiniteLattice, Lattice, Period, Route, SuiteArg};

pub struct Outcome {
    pub record: OutputRecord,
    pub passed: bool,
}

type CmdResult<T> = Result<T, String>;

fn s<E: ToString>(e: E) -> String {
    e.to_string()
}

pub fn run(cmd: &Command) -> CmdResult<Outcome> {
    let record = match cmd {
        Command::Elements { alpha, lattice, dim, p, offset, route, tol, omega_sq, .. } => {
            elements(*alpha, lattice, *dim, p.as_deref(), offset.as_deref(), *route, *tol, *omega_sq)?
        }
        Command::Matrix { alpha, lattice, mu, omega_sq, .. } => matrix(*alpha, lattice, *mu, *omega_sq)?,
        Command::Dispersion { alpha, dim, grid, cut, .. } => dispersion(alpha, *dim, *grid, *cut)?,
        Command::Kernel { alpha, period, x, samples, .. } => kernel(*alpha, period, x, *samples)?,
        Command::Verify { suite, tol_override, .. } => return verify(*suite, tol_override),
    };
    Ok(Outcome { record, passed: true })
}

enum Kind {
    Chain(usize),
    Torus(Vec<usize>),
    Infinite,
}

fn lattice_kind(n: Option<usize>, dims: Option<&str>) -> CmdResult<Kind> {
    match (n, dims) {
        (Some(n), _) => Ok(Kind::Chain(n)),
        (None, Some(d)) => Ok(Kind::Torus(parse_dims(d)?)),
        (None, None) => Ok(Kind::Infinite),
    }
}

fn offsets_along_axis(dim: usize, range: (i64, i64)) -> Vec<OffsetVector> {
    (range.0..=range.1).map(|p| OffsetVector::along_axis(dim, p)).collect()
}

fn offset_columns(dim: usize, tail: &[&str]) -> Vec<String> {
    (1..=dim).map(|j| format!("o{j}")).chain(tail.iter().map(|t| t.to_string())).collect()
}

fn new_record(command: &str, columns: &[String]) -> OutputRecord {
    let cols: Vec<&str> = columns.iter().map(String::as_str).collect();
    OutputRecord::new(command, &cols)
}

#[allow(clippy::too_many_arguments)]
fn elements(
    alpha: f64,
    lattice: &Lattice,
    dim: Option<usize>,
    p: Option<&str>,
    offset: Option<&str>,
    route: Option<Route>,
    tol: Option<f64>,
    omega_sq: f64,
) -> CmdResult<OutputRecord> {
    let order = FractionalOrder::with_omega_sq(alpha, omega_sq).map_err(s)?;
    if let Some(t) = tol {
        if !(t > 0.0) {
            return Err(format!("--tol must be positive, got {t}"));
        }
    }
    let kind = lattice_kind(lattice.n, lattice.dims.as_deref())?;
    let offset = offset.map(parse_offset).transpose()?;
    let range = p.map(parse_range::<i64>).transpose()?;
    let route = route.unwrap_or(match (&kind, dim, &offset) {
        (Kind::Infinite, None | Some(1), None) => Route::Closed,
        (Kind::Infinite, _, _) => Route::NdBz,
        _ => Route::Bloch,
    });

    let one_dim = |default_hi: i64| -> CmdResult<Vec<i64>> {
        if dim.is_some_and(|d| d != 1) {
            return Err(format!("route {} is one-dimensional; drop --dim", route.name()));
        }
        match (&offset, range) {
            (Some(o), _) if o.len() == 1 => Ok(vec![o[0]]),
            (Some(o), _) => Err(format!("route {} needs a 1-component offset, got {}", route.name(), o.len())),
            (None, Some((a, b))) => Ok((a..=b).collect()),
            (None, None) => Ok((0..=default_hi).collect()),
        }
    };

    let mut rec;
    match (&kind, route) {
        (Kind::Infinite, Route::Closed | Route::Quadrature) => {
            let ps = one_dim(10)?;
            rec = new_record("elements", &["p".into(), "value".into(), "route".into()]);
            let spec = QuadratureSpec::new(QuadratureScheme::AdaptiveGauss, 20, tol.unwrap_or(1e-12), 0.0).map_err(s)?;
            if route == Route::Quadrature {
                rec.tolerance("abs_tol", spec.abs_tol);
            }
            for p in ps {
                let q = p.unsigned_abs();
                let v = match route {
                    Route::Closed => element_infinite_closed(&order, q),
                    _ => element_infinite_quadrature(&order, q, &spec).map_err(s)?,
                };
                rec.push_row(vec![Cell::Int(p), Cell::Real(v), route.name().into()]).map_err(s)?;
            }
        }
        (Kind::Chain(n), Route::Bloch | Route::Images) => {
            let ps = one_dim(*n as i64 - 1)?;
            let t = tol.unwrap_or(1e-12);
            rec = new_record("elements", &["p".into(), "value".into(), "route".into()]);
            rec.param("n", n);
            if route == Route::Images {
                rec.tolerance("image_tol", t);
            }
            for p in ps {
                let v = match route {
                    Route::Bloch => element_periodic_bloch(&order, *n, p),
                    _ => element_periodic_images(&order, *n, p, t),
                }
                .map_err(s)?;
                rec.push_row(vec![Cell::Int(p), Cell::Real(v), route.name().into()]).map_err(s)?;
            }
        }
        (Kind::Torus(sizes), Route::Bloch) => {
            let d = sizes.len();
            if dim.is_some_and(|x| x != d) {
                return Err(format!("--dim {} disagrees with --dims of dimension {d}", dim.unwrap_or(0)));
            }
            let lat = LatticeSpec::periodic(sizes.clone()).map_err(s)?;
            let offsets = match (&offset, range) {
                (Some(o), _) => vec![OffsetVector::new(o.clone())],
                (None, r) => offsets_along_axis(d, r.unwrap_or((0, sizes[0] as i64 - 1))),
            };
            rec = new_record("elements", &offset_columns(d, &["value", "route"]));
            rec.param("dims", sizes.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("x"));
            for o in offsets {
                let v = element_periodic_nd(&order, &lat, &o).map_err(s)?;
                let mut row: Vec<Cell> = o.components().iter().map(|&c| Cell::Int(c)).collect();
                row.extend([Cell::Real(v), route.name().into()]);
                rec.push_row(row).map_err(s)?;
            }
        }
        (Kind::Infinite, Route::NdBz | Route::NdBessel) => {
            let d = match (dim, &offset) {
                (Some(d), Some(o)) if o.len() != d => {
                    return Err(format!("--offset has {} components but --dim is {d}", o.len()))
                }
                (Some(d), _) => d,
                (None, Some(o)) => o.len(),
                (None, None) => 2,
            };
            let offsets = match (&offset, range) {
                (Some(o), _) => vec![OffsetVector::new(o.clone())],
                (None, r) => offsets_along_axis(d, r.unwrap_or((0, 5))),
            };
            rec = new_record("elements", &offset_columns(d, &["value", "route"]));
            rec.param("dim", d);
            let spec = QuadratureSpec::new(QuadratureScheme::AdaptiveGauss, 20, tol.unwrap_or(1e-12), 0.0).map_err(s)?;
            let cfg = BesselConfig { tol: tol.unwrap_or(1e-8), ..BesselConfig::default() };
            match route {
                Route::NdBz => rec.tolerance("abs_tol", spec.abs_tol),
                _ => rec.tolerance("extrapolation_tol", cfg.tol),
            };
            for o in offsets {
                let v = match route {
                    Route::NdBz => element_infinite_nd_bz(&order, d, &o, &spec),
                    _ => element_infinite_nd_bessel_extrapolated(&order, d, &o, &cfg).map(|e| e.value),
                }
                .map_err(s)?;
                let mut row: Vec<Cell> = o.components().iter().map(|&c| Cell::Int(c)).collect();
                row.extend([Cell::Real(v), route.name().into()]);
                rec.push_row(row).map_err(s)?;
            }
        }
        (Kind::Infinite, r) => return Err(format!("route {} needs a finite lattice (--n or --dims)", r.name())),
        (Kind::Chain(_), r) => return Err(format!("route {} is not available on a periodic chain", r.name())),
        (Kind::Torus(_), r) => return Err(format!("route {} is not available on a periodic nD lattice", r.name())),
    }
    rec.param("alpha", alpha).param("omega_sq", omega_sq).param("route", route.name());
    Ok(rec)
}

fn matrix(alpha: f64, lattice: &FiniteLattice, mu: f64, omega_sq: f64) -> CmdResult<OutputRecord> {
    let order = FractionalOrder::with_omega_sq(alpha, omega_sq).map_err(s)?;
    let mut rec;
    match lattice_kind(lattice.n, lattice.dims.as_deref())? {
        Kind::Chain(n) => {
            let m = build_laplacian_1d(&order, &ChainSpec::new(ChainSize::Finite(n), mu).map_err(s)?).map_err(s)?;
            rec = OutputRecord::new("matrix", &["index", "entry", "eigenvalue"]);
            rec.param("n", n);
            for (l, entry) in m.first_row().iter().enumerate() {
                let lam = (2.0 * (PI * l as f64 / n as f64).sin()).powf(alpha);
                let eig = -mu * omega_sq * lam + 0.0;
                rec.push_row(vec![Cell::Int(l as i64), Cell::Real(*entry), Cell::Real(eig)]).map_err(s)?;
            }
        }
        Kind::Torus(sizes) => {
            let lat = LatticeSpec::new(sizes.len(), LatticeSizes::Finite(sizes.clone()), mu).map_err(s)?;
            let (offsets, entries, eigen) = periodic_cell_nd(&order, &lat).map_err(s)?;
            rec = new_record("matrix", &offset_columns(sizes.len(), &["entry", "eigenvalue"]));
            rec.param("dims", sizes.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("x"));
            for ((o, e), ev) in offsets.iter().zip(&entries).zip(&eigen) {
                let mut row: Vec<Cell> = o.components().iter().map(|&c| Cell::Int(c)).collect();
                row.extend([Cell::Real(-mu * e), Cell::Real(-mu * ev + 0.0)]);
                rec.push_row(row).map_err(s)?;
            }
        }
        Kind::Infinite => unreachable!("clap requires --n or --dims"),
    }
    rec.param("alpha", alpha).param("mu", mu).param("omega_sq", omega_sq);
    Ok(rec)
}

fn dispersion(alphas: &[f64], dim: usize, grid: usize, cut: Cut) -> CmdResult<OutputRecord> {
    if grid < 2 {
        return Err(format!("--grid must be at least 2, got {grid}"));
    }
    let cut_name = match cut {
        Cut::Full => "full",
        Cut::Plane010 => "plane_010",
        Cut::Plane110 => "plane_110",
    };
    let path: Vec<f64> = (0..grid).map(|j| PI * j as f64 / (grid - 1) as f64).collect();
    let mut rec = match (dim, cut) {
        (2, Cut::Full) => OutputRecord::new("dispersion", &["alpha", "kappa1", "kappa2", "omega"]),
        (1, Cut::Full) | (2, _) => OutputRecord::new("dispersion", &["alpha", "kappa", "omega"]),
        (1, _) => return Err(format!("cut {cut_name} needs --dim 2")),
        (d, _) => return Err(format!("--dim must be 1 or 2, got {d}")),
    };
    for &alpha in alphas {
        let order = FractionalOrder::new(alpha).map_err(s)?;
        match (dim, cut) {
            (2, Cut::Full) => {
                for (k1, k2, w) in dispersion_surface(&order, grid).map_err(s)? {
                    rec.push_row(vec![alpha.into(), k1.into(), k2.into(), w.into()]).map_err(s)?;
                }
            }
            _ => {
                for &k in &path {
                    let w = match (dim, cut) {
                        (1, _) => normalized_frequency_1d(alpha, k),
                        (_, Cut::Plane010) => normalized_frequency_2d(alpha, k, 0.0),
                        _ => normalized_frequency_2d(alpha, k, k),
                    };
                    rec.push_row(vec![alpha.into(), k.into(), w.into()]).map_err(s)?;
                }
            }
        }
    }
    let alpha_list: Vec<String> = alphas.iter().map(|a| a.to_string()).collect();
    rec.param("alpha", alpha_list.join(",")).param("dim", dim).param("grid", grid).param("cut", cut_name);
    Ok(rec)
}

fn kernel(alpha: f64, period: &Period, x: &str, samples: usize) -> CmdResult<OutputRecord> {
    let (a, b) = parse_range::<f64>(x)?;
    if samples == 0 {
        return Err("--samples must be positive".into());
    }
    let kp = match period.length {
        Some(l) => KernelPeriod::Finite(l),
        None => KernelPeriod::Infinite,
    };
    let spec = KernelSpec::new(alpha, kp, 1.0, 1.0).map_err(s)?;
    let line = KernelSpec::infinite(alpha).map_err(s)?;
    let mut rec = OutputRecord::new("kernel", &["x", "kernel", "kernel_infinite", "flag"]);
    for i in 0..samples {
        let xi = if samples == 1 { a } else { a + (b - a) * i as f64 / (samples - 1) as f64 };
        let inf = riesz_kernel_infinite(&line, xi).ok();
        let k = match kp {
            KernelPeriod::Finite(_) => riesz_kernel_periodic(&spec, xi).ok(),
            KernelPeriod::Infinite => inf,
        };
        let flag = if k.is_some() && inf.is_some() { "ok" } else { "singular" };
        rec.push_row(vec![
            xi.into(),
            k.unwrap_or(f64::NAN).into(),
            inf.unwrap_or(f64::NAN).into(),
            flag.into(),
        ])
        .map_err(s)?;
    }
    rec.param("alpha", alpha).param("x", x).param("samples", samples);
    match kp {
        KernelPeriod::Finite(l) => rec.param("L", l),
        KernelPeriod::Infinite => rec.param("L", "infinite"),
    };
    Ok(rec)
}

fn verify(suite: SuiteArg, overrides: &[String]) -> CmdResult<Outcome> {
    let suite = match suite {
        SuiteArg::All => Suite::All,
        SuiteArg::Oracles => Suite::Oracles,
        SuiteArg::Asymptotics => Suite::Asymptotics,
        SuiteArg::Continuum => Suite::Continuum,
    };
    let mut v = Verifier::default();
    for o in overrides {
        let (name, value) = o.split_once('=').ok_or_else(|| format!("--tol-override must be name=value, got '{o}'"))?;
        let value: f64 = value.parse().map_err(|_| format!("bad tolerance value in '{o}'"))?;
        v.override_tolerance(name, value).map_err(s)?;
    }
    let results = v.run(suite);
    let mut rec = OutputRecord::new("verify", &["suite", "check", "achieved", "tolerance", "status", "detail"]);
    rec.param("suite", suite);
    for (k, t) in v.tolerances() {
        rec.tolerance(k, *t);
    }
    for r in &results {
        rec.push_row(vec![
            r.suite.to_string().as_str().into(),
            r.name.as_str().into(),
            r.achieved.into(),
            r.tolerance.into(),
            if r.passed { "pass" } else { "fail" }.into(),
            r.detail.as_str().into(),
        ])
        .map_err(s)?;
    }
    Ok(Outcome { record: rec, passed: all_passed(&results) })
}
