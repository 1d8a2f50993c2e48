//! Python bindings for `gegen-core`.

use std::cell::RefCell;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use gegen_core::asymptotics::{self, SupNormEntry, SupNormScan};
use gegen_core::inequalities::{self, Functional};
use gegen_core::quadrature::{self, Rule as _};
use gegen_core::{specfun, transform, Error};

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Internal(msg) => PyRuntimeError::new_err(msg),
        other => PyValueError::new_err(other.to_string()),
    }
}

/// Wraps a Python callable as `f64 -> f64`, parking the first exception.
struct Callback<'py> {
    f: Bound<'py, PyAny>,
    err: RefCell<Option<PyErr>>,
}

impl<'py> Callback<'py> {
    fn new(f: Bound<'py, PyAny>) -> Self {
        Self { f, err: RefCell::new(None) }
    }

    fn call(&self, t: f64) -> f64 {
        if self.err.borrow().is_some() {
            return f64::NAN;
        }
        match self.f.call1((t,)).and_then(|v| v.extract::<f64>()) {
            Ok(v) => v,
            Err(e) => {
                *self.err.borrow_mut() = Some(e);
                f64::NAN
            }
        }
    }

    fn finish<T>(self, r: gegen_core::Result<T>) -> PyResult<T> {
        match self.err.into_inner() {
            Some(e) => Err(e),
            None => r.map_err(to_py),
        }
    }
}

/// Parameters `(λ, μ)` of the weight `|t|^{2μ} (1 - t²)^{λ - 1/2}`.
#[pyclass(name = "GegenParams", frozen, skip_from_py_object, module = "gegen")]
#[derive(Clone, Copy)]
struct PyParams(specfun::GegenParams);

#[pymethods]
impl PyParams {
    #[new]
    fn new(lam: f64, mu: f64) -> PyResult<Self> {
        specfun::GegenParams::new(lam, mu).map(Self).map_err(to_py)
    }

    #[getter]
    fn lam(&self) -> f64 {
        self.0.lambda()
    }

    #[getter]
    fn mu(&self) -> f64 {
        self.0.mu()
    }

    /// `max(λ, μ)`.
    #[getter]
    fn sigma(&self) -> f64 {
        self.0.sigma()
    }

    fn weight(&self, t: f64) -> f64 {
        self.0.weight(t)
    }

    fn mass(&self) -> f64 {
        self.0.mass()
    }

    fn __repr__(&self) -> String {
        format!("GegenParams(lam={}, mu={})", self.0.lambda(), self.0.mu())
    }
}

/// Symmetric quadrature rule for the weight of `params`.
#[pyclass(name = "Rule", frozen, module = "gegen")]
struct PyRule(quadrature::MappedRule);

#[pymethods]
impl PyRule {
    #[getter]
    fn nodes(&self) -> Vec<f64> {
        self.0.nodes().to_vec()
    }

    #[getter]
    fn weights(&self) -> Vec<f64> {
        self.0.weights().to_vec()
    }

    #[getter]
    fn exact_degree(&self) -> usize {
        self.0.exact_degree()
    }

    fn integrate(&self, f: Bound<'_, PyAny>) -> PyResult<f64> {
        let cb = Callback::new(f);
        let v = self.0.integrate(|t| cb.call(t));
        cb.finish(Ok(v))
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }
}

/// Coefficients `f̂_0, …, f̂_N` in the orthonormal basis.
#[pyclass(name = "Expansion", frozen, module = "gegen")]
struct PyExpansion(transform::Expansion);

#[pymethods]
impl PyExpansion {
    #[new]
    fn new(params: PyRef<'_, PyParams>, coeffs: Vec<f64>) -> PyResult<Self> {
        transform::Expansion::new(params.0, coeffs).map(Self).map_err(to_py)
    }

    #[getter]
    fn coeffs(&self) -> Vec<f64> {
        self.0.coeffs().to_vec()
    }

    #[getter]
    fn degree(&self) -> usize {
        self.0.degree()
    }

    #[getter]
    fn params(&self) -> PyParams {
        PyParams(self.0.params())
    }

    /// The partial sum at `t ∈ [-1, 1]`.
    fn __call__(&self, t: f64) -> PyResult<f64> {
        transform::synthesize(&self.0, t).map_err(to_py)
    }

    fn coeff_lp_norm(&self, p: f64) -> f64 {
        self.0.coeff_lp_norm(p)
    }

    fn to_json(&self) -> String {
        self.0.to_json().to_string()
    }
}

/// Positive weight sequence `ω` given as `power:a=…`, `const:c=…` or `table:<path>`.
#[pyclass(name = "WeightSeq", frozen, module = "gegen")]
struct PyWeightSeq(inequalities::WeightSeq);

#[pymethods]
impl PyWeightSeq {
    #[new]
    fn new(spec: &str, truncation: usize) -> PyResult<Self> {
        inequalities::WeightSeq::parse(spec, truncation).map(Self).map_err(to_py)
    }

    #[getter]
    fn label(&self) -> String {
        self.0.label().to_string()
    }

    #[getter]
    fn truncation(&self) -> usize {
        self.0.truncation()
    }

    fn __call__(&self, n: usize) -> f64 {
        self.0.value(n)
    }
}

#[pyfunction]
fn jacobi_eval(alpha: f64, beta: f64, n: usize, t: f64) -> PyResult<f64> {
    specfun::jacobi_eval(alpha, beta, n, t).map_err(to_py)
}

#[pyfunction]
fn gegen_eval(params: PyRef<'_, PyParams>, n: usize, t: f64) -> PyResult<f64> {
    specfun::gegen_eval(params.0, n, t).map_err(to_py)
}

#[pyfunction]
fn gegen_orthonormal_eval(params: PyRef<'_, PyParams>, n: usize, t: f64) -> PyResult<f64> {
    specfun::gegen_orthonormal_eval(params.0, n, t).map_err(to_py)
}

/// `(nodes, weights)` of the Gauss–Jacobi rule for `(1-x)^α (1+x)^β`.
#[pyfunction]
fn gauss_jacobi(alpha: f64, beta: f64, npoints: usize) -> PyResult<(Vec<f64>, Vec<f64>)> {
    let r = quadrature::gauss_jacobi(alpha, beta, npoints).map_err(to_py)?;
    Ok((r.nodes().to_vec(), r.weights().to_vec()))
}

#[pyfunction]
fn v_rule(params: PyRef<'_, PyParams>, npoints: usize) -> PyResult<PyRule> {
    quadrature::v_rule(params.0, npoints).map(PyRule).map_err(to_py)
}

#[pyfunction]
fn analyze(f: Bound<'_, PyAny>, params: PyRef<'_, PyParams>, degree: usize, rule: PyRef<'_, PyRule>) -> PyResult<PyExpansion> {
    let cb = Callback::new(f);
    let r = transform::analyze(|t| cb.call(t), params.0, degree, &rule.0);
    cb.finish(r).map(PyExpansion)
}

#[pyfunction]
fn synthesize(expansion: PyRef<'_, PyExpansion>, t: f64) -> PyResult<f64> {
    transform::synthesize(&expansion.0, t).map_err(to_py)
}

#[pyfunction]
fn lp_norm(f: Bound<'_, PyAny>, p: f64, params: PyRef<'_, PyParams>, rule: PyRef<'_, PyRule>) -> PyResult<f64> {
    let cb = Callback::new(f);
    let r = transform::lp_norm(|t| cb.call(t), p, params.0, &rule.0);
    cb.finish(r)
}

/// `(‖f‖²_{L_2(v)}, Σ f̂_n²)`.
#[pyfunction]
fn parseval_check(
    f: Bound<'_, PyAny>,
    params: PyRef<'_, PyParams>,
    degree: usize,
    rule: PyRef<'_, PyRule>,
) -> PyResult<(f64, f64)> {
    let cb = Callback::new(f);
    let r = transform::parseval_check(|t| cb.call(t), params.0, degree, &rule.0);
    cb.finish(r)
}

/// `(value, argmax_t)` of the truncated `M_ω`.
#[pyfunction]
fn m_omega(w: PyRef<'_, PyWeightSeq>, params: PyRef<'_, PyParams>) -> PyResult<(f64, f64)> {
    let r = inequalities::m_omega(&w.0, params.0).map_err(to_py)?;
    Ok((r.value, r.argmax_t))
}

#[pyfunction]
fn layer_cake_check(phi: Vec<f64>, psi: Vec<f64>, gamma: f64, a: f64) -> PyResult<(f64, f64)> {
    inequalities::layer_cake_check(&phi, &psi, gamma, a).map_err(to_py)
}

#[pyfunction]
fn paley_lhs(expansion: PyRef<'_, PyExpansion>, p: f64, w: PyRef<'_, PyWeightSeq>) -> PyResult<f64> {
    inequalities::paley_lhs(&expansion.0, p, &w.0).map_err(to_py)
}

#[pyfunction]
fn hy_lhs(expansion: PyRef<'_, PyExpansion>, p: f64) -> PyResult<f64> {
    inequalities::hy_lhs(&expansion.0, p).map_err(to_py)
}

#[pyfunction]
fn hyp_lhs(expansion: PyRef<'_, PyExpansion>, p: f64, s: f64, w: PyRef<'_, PyWeightSeq>) -> PyResult<f64> {
    inequalities::hyp_lhs(&expansion.0, p, s, &w.0).map_err(to_py)
}

/// One report row as a dict with the CSV report's field names.
#[pyfunction]
#[pyo3(signature = (functional, f, params, p, w, degree, rule, s=None))]
#[allow(clippy::too_many_arguments)]
fn evaluate<'py>(
    py: Python<'py>,
    functional: &str,
    f: Bound<'py, PyAny>,
    params: PyRef<'_, PyParams>,
    p: f64,
    w: PyRef<'_, PyWeightSeq>,
    degree: usize,
    rule: PyRef<'_, PyRule>,
    s: Option<f64>,
) -> PyResult<Bound<'py, pyo3::types::PyDict>> {
    let functional = Functional::parse(functional).map_err(to_py)?;
    let cb = Callback::new(f);
    let expansion = transform::analyze(|t| cb.call(t), params.0, degree, &rule.0);
    let fnorm = transform::lp_norm(|t| cb.call(t), p, params.0, &rule.0);
    let expansion = cb.finish(expansion.and_then(|e| fnorm.map(|n| (e, n))))?;
    let m = inequalities::m_omega(&w.0, params.0).map_err(to_py)?;
    let r = inequalities::evaluate_functional(functional, "f", &expansion.0, expansion.1, p, s, &w.0, &m)
        .map_err(to_py)?;
    let d = pyo3::types::PyDict::new(py);
    d.set_item("functional", r.functional.name())?;
    d.set_item("p", r.p)?;
    d.set_item("s", r.s)?;
    d.set_item("N", r.degree)?;
    d.set_item("lhs", r.lhs)?;
    d.set_item("fnorm", r.fnorm)?;
    d.set_item("m_omega", r.m_omega)?;
    d.set_item("ratio", r.ratio)?;
    Ok(d)
}

/// Interpolation parameter and exponents as a dict.
#[pyfunction]
fn interpolation_plan<'py>(py: Python<'py>, p: f64, s: f64) -> PyResult<Bound<'py, pyo3::types::PyDict>> {
    let plan = inequalities::interpolation_plan(p, s).map_err(to_py)?;
    let d = pyo3::types::PyDict::new(py);
    d.set_item("p", plan.p)?;
    d.set_item("s", plan.s)?;
    d.set_item("t", plan.t_param)?;
    d.set_item("paley_exponent", plan.paley_exponent)?;
    d.set_item("hy_exponent", plan.hy_exponent)?;
    d.set_item("hyp_coeff_exponent", plan.hyp_coeff_exponent)?;
    d.set_item("omega_exponent", plan.omega_exponent)?;
    d.set_item("identity_residual", plan.identity_residual())?;
    Ok(d)
}

/// `(max |C̃_n|, argmax t ≥ 0)`.
#[pyfunction]
#[pyo3(signature = (params, n, grid_size=None))]
fn supnorm(params: PyRef<'_, PyParams>, n: usize, grid_size: Option<usize>) -> PyResult<(f64, f64)> {
    let grid = grid_size.unwrap_or(asymptotics::MIN_GRID_FACTOR * (n + 1));
    asymptotics::supnorm(params.0, n, grid).map_err(to_py)
}

/// Rows `(n, sup_norm, argmax_t)` along `ladder`.
#[pyfunction]
#[pyo3(signature = (params, ladder, grid_factor=asymptotics::MIN_GRID_FACTOR))]
fn supnorm_scan(params: PyRef<'_, PyParams>, ladder: Vec<usize>, grid_factor: usize) -> PyResult<Vec<(usize, f64, f64)>> {
    let scan = asymptotics::supnorm_scan(params.0, &ladder, grid_factor).map_err(to_py)?;
    Ok(scan.entries.iter().map(|e| (e.n, e.sup_norm, e.argmax_t)).collect())
}

#[pyfunction]
fn geometric_ladder(start: usize, end: usize) -> Vec<usize> {
    asymptotics::geometric_ladder(start, end)
}

/// `(slope, intercept, residual)` of the log-log fit over rows with `n ≥ n_min`.
#[pyfunction]
#[pyo3(signature = (params, rows, n_min=32))]
fn exponent_fit(params: PyRef<'_, PyParams>, rows: Vec<(usize, f64)>, n_min: usize) -> PyResult<(f64, f64, f64)> {
    let scan = SupNormScan {
        params: params.0,
        entries: rows
            .into_iter()
            .map(|(n, sup_norm)| SupNormEntry { n, sup_norm, argmax_t: f64::NAN })
            .collect(),
    };
    let fit = asymptotics::exponent_fit(&scan, n_min).map_err(to_py)?;
    Ok((fit.slope, fit.intercept, fit.residual))
}

#[pymodule]
fn gegen(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyParams>()?;
    m.add_class::<PyRule>()?;
    m.add_class::<PyExpansion>()?;
    m.add_class::<PyWeightSeq>()?;
    m.add_function(wrap_pyfunction!(jacobi_eval, m)?)?;
    m.add_function(wrap_pyfunction!(gegen_eval, m)?)?;
    m.add_function(wrap_pyfunction!(gegen_orthonormal_eval, m)?)?;
    m.add_function(wrap_pyfunction!(gauss_jacobi, m)?)?;
    m.add_function(wrap_pyfunction!(v_rule, m)?)?;
    m.add_function(wrap_pyfunction!(analyze, m)?)?;
    m.add_function(wrap_pyfunction!(synthesize, m)?)?;
    m.add_function(wrap_pyfunction!(lp_norm, m)?)?;
    m.add_function(wrap_pyfunction!(parseval_check, m)?)?;
    m.add_function(wrap_pyfunction!(m_omega, m)?)?;
    m.add_function(wrap_pyfunction!(layer_cake_check, m)?)?;
    m.add_function(wrap_pyfunction!(paley_lhs, m)?)?;
    m.add_function(wrap_pyfunction!(hy_lhs, m)?)?;
    m.add_function(wrap_pyfunction!(hyp_lhs, m)?)?;
    m.add_function(wrap_pyfunction!(evaluate, m)?)?;
    m.add_function(wrap_pyfunction!(interpolation_plan, m)?)?;
    m.add_function(wrap_pyfunction!(supnorm, m)?)?;
    m.add_function(wrap_pyfunction!(supnorm_scan, m)?)?;
    m.add_function(wrap_pyfunction!(geometric_ladder, m)?)?;
    m.add_function(wrap_pyfunction!(exponent_fit, m)?)?;
    Ok(())
}
