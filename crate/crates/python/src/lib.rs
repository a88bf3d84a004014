//! Python bindings: `import fraclat`.
//!
//! Library errors surface as `ValueError` with the library's message.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use fraclat_core::continuum::{self, KernelSpec};
use fraclat_core::lattice1d::{self, ChainSpec};
use fraclat_core::lattice_nd::{self, BesselConfig, LatticeSpec, OffsetVector};
use fraclat_core::special;
use fraclat_core::verify::{Suite, Verifier};
use fraclat_core::{FracError, QuadratureScheme, QuadratureSpec};

fn py_err(e: FracError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn order(alpha: f64, omega_sq: f64) -> PyResult<lattice1d::FractionalOrder> {
    lattice1d::FractionalOrder::with_omega_sq(alpha, omega_sq).map_err(py_err)
}

fn gauss(abs_tol: f64) -> PyResult<QuadratureSpec> {
    QuadratureSpec::new(QuadratureScheme::AdaptiveGauss, 20, abs_tol, 0.0).map_err(py_err)
}

#[pyclass(name = "FractionalOrder", frozen)]
struct PyFractionalOrder(lattice1d::FractionalOrder);

#[pymethods]
impl PyFractionalOrder {
    #[new]
    #[pyo3(signature = (alpha, omega_sq = 1.0))]
    fn new(alpha: f64, omega_sq: f64) -> PyResult<Self> {
        order(alpha, omega_sq).map(Self)
    }

    #[getter]
    fn alpha(&self) -> f64 {
        self.0.alpha()
    }

    #[getter]
    fn omega_sq(&self) -> f64 {
        self.0.omega_sq()
    }

    #[getter]
    fn is_integer_half(&self) -> bool {
        self.0.is_integer_half()
    }

    fn riesz_coefficient(&self) -> f64 {
        self.0.riesz_coefficient()
    }

    /// Infinite-chain element `f(p)` in closed form.
    fn element(&self, p: u64) -> f64 {
        lattice1d::element_infinite_closed(&self.0, p)
    }

    fn dispersion(&self, kappa: f64) -> f64 {
        lattice1d::dispersion_1d(&self.0, kappa)
    }

    fn __repr__(&self) -> String {
        format!("FractionalOrder(alpha={}, omega_sq={})", self.0.alpha(), self.0.omega_sq())
    }
}

#[pyclass(name = "CirculantMatrix", frozen)]
struct PyCirculantMatrix(lattice1d::CirculantMatrix);

#[pymethods]
impl PyCirculantMatrix {
    #[new]
    #[pyo3(signature = (alpha, n, mu = 1.0, omega_sq = 1.0))]
    fn new(alpha: f64, n: usize, mu: f64, omega_sq: f64) -> PyResult<Self> {
        let chain = ChainSpec::new(lattice1d::ChainSize::Finite(n), mu).map_err(py_err)?;
        lattice1d::build_laplacian_1d(&order(alpha, omega_sq)?, &chain).map(Self).map_err(py_err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    #[getter]
    fn first_row(&self) -> Vec<f64> {
        self.0.first_row().to_vec()
    }

    fn get(&self, i: usize, j: usize) -> PyResult<f64> {
        if i >= self.0.n() || j >= self.0.n() {
            return Err(PyValueError::new_err("index out of range"));
        }
        Ok(self.0.get(i, j))
    }

    fn eigenvalues(&self) -> Vec<f64> {
        self.0.eigenvalues()
    }

    fn row_sum(&self) -> f64 {
        self.0.row_sum()
    }

    fn __len__(&self) -> usize {
        self.0.n()
    }
}

#[pyfunction]
fn log_gamma(x: f64) -> PyResult<f64> {
    special::log_gamma(x).map_err(py_err)
}

#[pyfunction]
fn hurwitz_zeta(s: f64, x: f64) -> PyResult<f64> {
    special::hurwitz_zeta(s, x).map_err(py_err)
}

#[pyfunction]
fn bessel_j(order: u32, x: f64) -> f64 {
    special::bessel_j(order, x)
}

#[pyfunction]
#[pyo3(signature = (alpha, p, omega_sq = 1.0))]
fn element_infinite_closed(alpha: f64, p: u64, omega_sq: f64) -> PyResult<f64> {
    Ok(lattice1d::element_infinite_closed(&order(alpha, omega_sq)?, p))
}

#[pyfunction]
#[pyo3(signature = (alpha, p, omega_sq = 1.0, abs_tol = 1e-12))]
fn element_infinite_quadrature(alpha: f64, p: u64, omega_sq: f64, abs_tol: f64) -> PyResult<f64> {
    lattice1d::element_infinite_quadrature(&order(alpha, omega_sq)?, p, &gauss(abs_tol)?).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (alpha, n, p, omega_sq = 1.0))]
fn element_periodic_bloch(alpha: f64, n: usize, p: i64, omega_sq: f64) -> PyResult<f64> {
    lattice1d::element_periodic_bloch(&order(alpha, omega_sq)?, n, p).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (alpha, n, p, tol = 1e-12, omega_sq = 1.0))]
fn element_periodic_images(alpha: f64, n: usize, p: i64, tol: f64, omega_sq: f64) -> PyResult<f64> {
    lattice1d::element_periodic_images(&order(alpha, omega_sq)?, n, p, tol).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (alpha, sizes, offset, omega_sq = 1.0))]
fn element_periodic_nd(alpha: f64, sizes: Vec<usize>, offset: Vec<i64>, omega_sq: f64) -> PyResult<f64> {
    let lat = LatticeSpec::periodic(sizes).map_err(py_err)?;
    lattice_nd::element_periodic_nd(&order(alpha, omega_sq)?, &lat, &OffsetVector::new(offset)).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (alpha, offset, abs_tol = 1e-12, omega_sq = 1.0))]
fn element_infinite_nd_bz(alpha: f64, offset: Vec<i64>, abs_tol: f64, omega_sq: f64) -> PyResult<f64> {
    let dim = offset.len();
    lattice_nd::element_infinite_nd_bz(&order(alpha, omega_sq)?, dim, &OffsetVector::new(offset), &gauss(abs_tol)?)
        .map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (alpha, offset, epsilon = 0.1, levels = 8, tol = 1e-8, omega_sq = 1.0))]
fn element_infinite_nd_bessel(
    alpha: f64,
    offset: Vec<i64>,
    epsilon: f64,
    levels: usize,
    tol: f64,
    omega_sq: f64,
) -> PyResult<f64> {
    let dim = offset.len();
    let cfg = BesselConfig { epsilon, levels, tol, xi_max: None };
    lattice_nd::element_infinite_nd_bessel_extrapolated(&order(alpha, omega_sq)?, dim, &OffsetVector::new(offset), &cfg)
        .map(|e| e.value)
        .map_err(py_err)
}

#[pyfunction]
fn asymptotic_constant_nd(dim: usize, alpha: f64) -> PyResult<f64> {
    lattice_nd::asymptotic_constant_nd(dim, alpha).map_err(py_err)
}

#[pyfunction]
fn normalized_frequency_2d(alpha: f64, k1: f64, k2: f64) -> f64 {
    lattice_nd::normalized_frequency_2d(alpha, k1, k2)
}

#[pyfunction]
fn riesz_kernel_infinite(alpha: f64, x: f64) -> PyResult<f64> {
    continuum::riesz_kernel_infinite(&KernelSpec::infinite(alpha).map_err(py_err)?, x).map_err(py_err)
}

#[pyfunction]
fn riesz_kernel_periodic(alpha: f64, length: f64, x: f64) -> PyResult<f64> {
    continuum::riesz_kernel_periodic(&KernelSpec::periodic(alpha, length).map_err(py_err)?, x).map_err(py_err)
}

/// Rows `(h, p, value, reference, abs_error, rel_error)`.
#[pyfunction]
fn continuum_convergence(alpha: f64, x: f64, h_values: Vec<f64>) -> PyResult<Vec<(f64, u64, f64, f64, f64, f64)>> {
    let spec = KernelSpec::infinite(alpha).map_err(py_err)?;
    let report = continuum::continuum_convergence_check(&spec, x, &h_values).map_err(py_err)?;
    Ok(report.rows.iter().map(|r| (r.h, r.p, r.value, r.reference, r.abs_error, r.rel_error)).collect())
}

/// Rows `(suite, check, achieved, tolerance, passed, detail)`.
#[pyfunction]
#[pyo3(signature = (suite = "all"))]
fn verify(py: Python<'_>, suite: &str) -> PyResult<Vec<(String, String, f64, f64, bool, String)>> {
    let suite: Suite = suite.parse().map_err(py_err)?;
    let results = py.detach(|| Verifier::default().run(suite));
    Ok(results
        .into_iter()
        .map(|r| (r.suite.to_string(), r.name, r.achieved, r.tolerance, r.passed, r.detail))
        .collect())
}

#[pymodule]
fn fraclat(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyFractionalOrder>()?;
    m.add_class::<PyCirculantMatrix>()?;
    m.add_function(wrap_pyfunction!(log_gamma, m)?)?;
    m.add_function(wrap_pyfunction!(hurwitz_zeta, m)?)?;
    m.add_function(wrap_pyfunction!(bessel_j, m)?)?;
    m.add_function(wrap_pyfunction!(element_infinite_closed, m)?)?;
    m.add_function(wrap_pyfunction!(element_infinite_quadrature, m)?)?;
    m.add_function(wrap_pyfunction!(element_periodic_bloch, m)?)?;
    m.add_function(wrap_pyfunction!(element_periodic_images, m)?)?;
    m.add_function(wrap_pyfunction!(element_periodic_nd, m)?)?;
    m.add_function(wrap_pyfunction!(element_infinite_nd_bz, m)?)?;
    m.add_function(wrap_pyfunction!(element_infinite_nd_bessel, m)?)?;
    m.add_function(wrap_pyfunction!(asymptotic_constant_nd, m)?)?;
    m.add_function(wrap_pyfunction!(normalized_frequency_2d, m)?)?;
    m.add_function(wrap_pyfunction!(riesz_kernel_infinite, m)?)?;
    m.add_function(wrap_pyfunction!(riesz_kernel_periodic, m)?)?;
    m.add_function(wrap_pyfunction!(continuum_convergence, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
