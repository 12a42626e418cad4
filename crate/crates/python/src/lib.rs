//! Python module `airy_evolve`: grid functions, special functions, transforms,
//! evolution solvers, exact polynomials and the named validation checks.

use std::str::FromStr;

use airy_evolve::evolution::{self, HeatMethod};
use airy_evolve::special_fn::{self, AiryScale};
use airy_evolve::validation::Criterion;
use airy_evolve::wei_norman::{self, CoeffFunctions, Method};
use airy_evolve::{polynomials, transforms, GridSpec};
use num_complex::Complex64;
use num_rational::BigRational;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn py_err(e: airy_evolve::Error) -> PyErr {
    match e {
        airy_evolve::Error::Domain(_) | airy_evolve::Error::Grid(_) => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn scale(a: f64) -> PyResult<AiryScale> {
    AiryScale::new(a).map_err(py_err)
}

/// Complex samples on the uniform grid `x0 + j*dx`.
#[pyclass(name = "GridFunction", frozen)]
struct PyGridFunction(airy_evolve::GridFunction);

#[pymethods]
impl PyGridFunction {
    #[new]
    fn new(x0: f64, dx: f64, values: Vec<Complex64>) -> PyResult<Self> {
        airy_evolve::GridFunction::new(x0, dx, values).map(Self).map_err(py_err)
    }

    /// `n` samples of a Python callable on the half-open interval `[x_min, x_max)`.
    #[staticmethod]
    fn sample(x_min: f64, x_max: f64, n: usize, f: &Bound<'_, PyAny>) -> PyResult<Self> {
        let spec = GridSpec::new(x_min, x_max, n).map_err(py_err)?;
        let values = (0..n)
            .map(|j| f.call1((x_min + j as f64 * spec.dx(),))?.extract::<Complex64>())
            .collect::<PyResult<Vec<_>>>()?;
        Self::new(x_min, spec.dx(), values)
    }

    #[getter]
    fn x0(&self) -> f64 {
        self.0.x0()
    }

    #[getter]
    fn dx(&self) -> f64 {
        self.0.dx()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn xs(&self) -> Vec<f64> {
        self.0.xs().collect()
    }

    fn values(&self) -> Vec<Complex64> {
        self.0.values().to_vec()
    }

    fn abs2(&self) -> Vec<f64> {
        self.0.abs2()
    }

    fn l2_norm(&self) -> f64 {
        self.0.l2_norm()
    }

    fn __repr__(&self) -> String {
        format!("GridFunction(x0={}, dx={}, n={})", self.0.x0(), self.0.dx(), self.0.len())
    }
}

/// Time profile for Wei-Norman coefficients.
#[pyclass(name = "Profile", frozen)]
struct PyProfile(wei_norman::Profile);

#[pymethods]
impl PyProfile {
    #[staticmethod]
    fn constant(value: f64) -> Self {
        Self(wei_norman::Profile::Constant(value))
    }

    #[staticmethod]
    fn linear(offset: f64, slope: f64) -> Self {
        Self(wei_norman::Profile::Linear { offset, slope })
    }

    #[staticmethod]
    #[pyo3(signature = (amplitude=1.0, omega=1.0))]
    fn sin(amplitude: f64, omega: f64) -> Self {
        Self(wei_norman::Profile::Sin { amplitude, omega })
    }

    /// `c0 + c1 t + c2 t² + ...`
    #[staticmethod]
    fn polynomial(coeffs: Vec<f64>) -> Self {
        Self(wei_norman::Profile::Polynomial(coeffs))
    }

    fn __call__(&self, t: f64) -> f64 {
        self.0.eval(t)
    }
}

#[pyfunction]
fn airy_ai(x: f64) -> PyResult<f64> {
    special_fn::airy_ai(x).map_err(py_err)
}

/// `exp(z∂²)Ai(x/A)` for real `z >= 0`.
#[pyfunction]
#[pyo3(signature = (x, z, a=1.0))]
fn airy_two_var(x: f64, z: f64, a: f64) -> PyResult<f64> {
    special_fn::airy_two_var(x, z, scale(a)?).map_err(py_err)
}

/// `exp(iτ∂²)Ai(x/A)`.
#[pyfunction]
#[pyo3(signature = (x, tau, a=1.0))]
fn airy_complex(x: f64, tau: f64, a: f64) -> PyResult<Complex64> {
    special_fn::airy_complex_closed_form(x, tau, scale(a)?).map_err(py_err)
}

#[pyfunction]
fn gauss_weierstrass(f: &PyGridFunction, t: Complex64) -> PyResult<PyGridFunction> {
    transforms::gauss_weierstrass(&f.0, t).map(PyGridFunction).map_err(py_err)
}

#[pyfunction]
fn airy_transform(f: &PyGridFunction, alpha: f64) -> PyResult<PyGridFunction> {
    transforms::airy_transform(&f.0, alpha).map(PyGridFunction).map_err(py_err)
}

/// `exp(t∂³)g`.
#[pyfunction]
fn cubic_evolution(g: &PyGridFunction, t: f64) -> PyResult<PyGridFunction> {
    transforms::cubic_evolution(&g.0, t).map(PyGridFunction).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (f0, beta, t, method="spectral"))]
fn solve_heat_linear(f0: &PyGridFunction, beta: f64, t: f64, method: &str) -> PyResult<PyGridFunction> {
    let method = match method {
        "spectral" => HeatMethod::Spectral,
        "quadrature" => HeatMethod::Quadrature,
        other => return Err(PyValueError::new_err(format!("unknown method {other:?}"))),
    };
    evolution::solve_heat_linear_with(&f0.0, beta, t, method).map(PyGridFunction).map_err(py_err)
}

#[pyfunction]
fn solve_schrodinger_linear(f0: &PyGridFunction, b: f64, tau: f64) -> PyResult<PyGridFunction> {
    evolution::solve_schrodinger_linear(&f0.0, b, tau).map(PyGridFunction).map_err(py_err)
}

/// Closed-form Airy packet; returns `(field, peak_x, predicted_peak_x)`.
#[pyfunction]
#[pyo3(signature = (x_min, x_max, n, b, tau, a=1.0))]
fn solve_schrodinger_airy(
    x_min: f64,
    x_max: f64,
    n: usize,
    b: f64,
    tau: f64,
    a: f64,
) -> PyResult<(PyGridFunction, Option<f64>, f64)> {
    let grid = GridSpec::new(x_min, x_max, n).map_err(py_err)?;
    let p = evolution::solve_schrodinger_airy(&grid, b, tau, scale(a)?).map_err(py_err)?;
    Ok((PyGridFunction(p.field), p.peak.map(|p| p.x), p.predicted_peak_x))
}

/// Closed-form heat solution for Gaussian initial data.
#[pyfunction]
fn gleisher(x: f64, t: f64, beta: f64) -> f64 {
    evolution::gleisher(x, t, beta)
}

#[pyfunction]
fn centroid_trajectory(phi: Vec<f64>, big_b: f64, mass: f64, t: Vec<f64>) -> PyResult<Vec<f64>> {
    evolution::centroid_trajectory(&phi, big_b, mass, &t).map_err(py_err)
}

/// Ordering functions `(a, b, c, d)` at time `t`.
#[pyfunction]
#[pyo3(signature = (alpha, beta, t, method="ode"))]
fn wei_norman_coeffs(alpha: &PyProfile, beta: &PyProfile, t: f64, method: &str) -> PyResult<(f64, f64, f64, f64)> {
    let method = match method {
        "ode" => Method::Ode,
        "nested" => Method::NestedQuadrature,
        other => return Err(PyValueError::new_err(format!("unknown method {other:?}"))),
    };
    let coeffs = CoeffFunctions::new(alpha.0.clone(), beta.0.clone());
    let w = wei_norman::wei_norman_coeffs(&coeffs, t, method).map_err(py_err)?;
    Ok((w.a, w.b, w.c, w.d))
}

#[pyfunction]
fn factorized_evolution(alpha: &PyProfile, beta: &PyProfile, f0: &PyGridFunction, t: f64) -> PyResult<PyGridFunction> {
    let coeffs = CoeffFunctions::new(alpha.0.clone(), beta.0.clone());
    wei_norman::factorized_evolution(&coeffs, &f0.0, t).map(PyGridFunction).map_err(py_err)
}

/// Coefficients of `H_n^(p)(x, λ)` as exact `"p/q"` strings, lowest degree first.
#[pyfunction]
fn hermite_higher(n: usize, p: usize, lam: &str) -> PyResult<Vec<String>> {
    let lam = BigRational::from_str(lam).map_err(|e| PyValueError::new_err(format!("bad rational {lam:?}: {e}")))?;
    let h = polynomials::hermite_higher(n, p, &lam).map_err(py_err)?;
    Ok(h.coeffs().iter().map(|c| c.to_string()).collect())
}

/// Names of the validation presets.
#[pyfunction]
fn criteria() -> Vec<&'static str> {
    Criterion::ALL.iter().map(|c| c.name()).collect()
}

/// Runs one preset; returns `(name, value, tolerance, passed)` tuples.
#[pyfunction]
fn validate(py: Python<'_>, preset: &str) -> PyResult<Vec<(String, f64, f64, bool)>> {
    let c = Criterion::from_name(preset).ok_or_else(|| PyValueError::new_err(format!("unknown preset {preset:?}")))?;
    let checks = py.detach(|| c.run()).map_err(py_err)?;
    Ok(checks.into_iter().map(|c| (c.name, c.value, c.tolerance, c.passed)).collect())
}

#[pymodule]
#[pyo3(name = "airy_evolve")]
fn airy_evolve_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGridFunction>()?;
    m.add_class::<PyProfile>()?;
    m.add("AI_PEAK_X", special_fn::AI_PEAK_X)?;
    m.add_function(wrap_pyfunction!(airy_ai, m)?)?;
    m.add_function(wrap_pyfunction!(airy_two_var, m)?)?;
    m.add_function(wrap_pyfunction!(airy_complex, m)?)?;
    m.add_function(wrap_pyfunction!(gauss_weierstrass, m)?)?;
    m.add_function(wrap_pyfunction!(airy_transform, m)?)?;
    m.add_function(wrap_pyfunction!(cubic_evolution, m)?)?;
    m.add_function(wrap_pyfunction!(solve_heat_linear, m)?)?;
    m.add_function(wrap_pyfunction!(solve_schrodinger_linear, m)?)?;
    m.add_function(wrap_pyfunction!(solve_schrodinger_airy, m)?)?;
    m.add_function(wrap_pyfunction!(gleisher, m)?)?;
    m.add_function(wrap_pyfunction!(centroid_trajectory, m)?)?;
    m.add_function(wrap_pyfunction!(wei_norman_coeffs, m)?)?;
    m.add_function(wrap_pyfunction!(factorized_evolution, m)?)?;
    m.add_function(wrap_pyfunction!(hermite_higher, m)?)?;
    m.add_function(wrap_pyfunction!(criteria, m)?)?;
    m.add_function(wrap_pyfunction!(validate, m)?)?;
    Ok(())
}
