//! Python module `vp_rkhs`: exact solution, the kernel solver and the
//! reporting helpers of the `rkhs-vp` crate.

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyOSError, PyValueError};
use pyo3::prelude::*;

use rkhs_vp::analysis::{
    kernel_property_suite, solution_linf, table1_csv, table1_report, table1_rows,
};
use rkhs_vp::fractional::FractionalOrder;
use rkhs_vp::kernels::{Interval, PiecewisePolyKernel1D};
use rkhs_vp::solver::{solve_vp, ProblemSpec, VpSolution};
use rkhs_vp::Error;

create_exception!(vp_rkhs, SolverError, PyException);

fn to_py(err: Error) -> PyErr {
    match err {
        Error::Io(e) => PyOSError::new_err(e.to_string()),
        Error::NoConvergence { .. } | Error::Singularity { .. } | Error::Conditioning { .. } => {
            SolverError::new_err(err.to_string())
        }
        other => PyValueError::new_err(other.to_string()),
    }
}

/// Closed-form traveling wave `6 − 6 tanh²(ν − c t^α / α)`.
#[pyfunction]
#[pyo3(signature = (nu, t, alpha, c = 0.001))]
fn exact_solution(nu: f64, t: f64, alpha: f64, c: f64) -> PyResult<f64> {
    let q = FractionalOrder::new(alpha).map_err(to_py)?;
    Ok(rkhs_vp::tanh_method::exact_solution(nu, t, q, c))
}

#[allow(clippy::too_many_arguments)]
fn build_spec(
    alpha: f64,
    n: usize,
    c: f64,
    mode: &str,
    sign: &str,
    temporal_kernel: &str,
    space: (f64, f64),
    horizon: f64,
    max_iter: usize,
    tol: f64,
) -> PyResult<ProblemSpec> {
    let mut spec = ProblemSpec::new(alpha, n).map_err(to_py)?;
    spec.c = c;
    spec.derivative_mode = mode.parse().map_err(to_py)?;
    spec.sign = sign.parse().map_err(to_py)?;
    spec.temporal_kernel = temporal_kernel.parse().map_err(to_py)?;
    spec.space = Interval::new(space.0, space.1).map_err(to_py)?;
    spec.time = Interval::new(0.0, horizon).map_err(to_py)?;
    spec.max_outer_iters = max_iter;
    spec.tol = tol;
    spec.validate().map_err(to_py)?;
    Ok(spec)
}

/// A converged solve; evaluate `Φ` and `w = D_t^α Φ` anywhere in the domain.
#[pyclass(frozen, module = "vp_rkhs")]
struct Solution {
    inner: VpSolution,
}

#[pymethods]
impl Solution {
    fn phi(&self, nu: f64, t: f64) -> PyResult<f64> {
        self.check(nu, t)?;
        Ok(self.inner.phi(nu, t))
    }

    fn w(&self, nu: f64, t: f64) -> PyResult<f64> {
        self.check(nu, t)?;
        Ok(self.inner.w(nu, t))
    }

    /// `Φ` at many points at once.
    fn phi_many(&self, points: Vec<(f64, f64)>) -> PyResult<Vec<f64>> {
        points.into_iter().map(|(nu, t)| self.phi(nu, t)).collect()
    }

    /// Largest deviation from the exact solution on a fixed 21×21 grid.
    fn linf(&self) -> PyResult<f64> {
        solution_linf(&self.inner).map_err(to_py)
    }

    /// `(nu, exact, approx, abs_error)` at ν = k/6, t = 0.5.
    fn slice_rows(&self) -> Vec<(f64, f64, f64, f64)> {
        table1_rows(&self.inner)
            .into_iter()
            .map(|r| (r.nu, r.exact, r.approx, r.abs_error))
            .collect()
    }

    #[getter]
    fn iterations(&self) -> usize {
        self.inner.report.iterations
    }

    #[getter]
    fn converged(&self) -> bool {
        self.inner.report.converged
    }

    #[getter]
    fn changes(&self) -> Vec<f64> {
        self.inner.report.changes.clone()
    }

    #[getter]
    fn orthonormality_defect(&self) -> f64 {
        self.inner.report.orthonormality_defect
    }

    fn __repr__(&self) -> String {
        let s = &self.inner.spec;
        format!(
            "Solution(alpha={}, n={}, mode={}, iterations={}, converged={})",
            s.alpha.get(),
            s.n,
            s.derivative_mode,
            self.inner.report.iterations,
            self.inner.report.converged
        )
    }
}

impl Solution {
    fn check(&self, nu: f64, t: f64) -> PyResult<()> {
        if self.inner.in_domain(nu, t) {
            Ok(())
        } else {
            Err(PyValueError::new_err(format!(
                "({nu}, {t}) lies outside the domain"
            )))
        }
    }
}

#[pyfunction]
#[pyo3(signature = (
    alpha, n = 6, *, c = 0.001, mode = "conformable", sign = "corrected",
    temporal_kernel = "min", space = (0.0, 1.0), horizon = 1.0, max_iter = 50, tol = 1e-8
))]
#[allow(clippy::too_many_arguments)]
fn solve(
    py: Python<'_>,
    alpha: f64,
    n: usize,
    c: f64,
    mode: &str,
    sign: &str,
    temporal_kernel: &str,
    space: (f64, f64),
    horizon: f64,
    max_iter: usize,
    tol: f64,
) -> PyResult<Solution> {
    let spec = build_spec(
        alpha,
        n,
        c,
        mode,
        sign,
        temporal_kernel,
        space,
        horizon,
        max_iter,
        tol,
    )?;
    let inner = py.detach(|| solve_vp(&spec)).map_err(to_py)?;
    Ok(Solution { inner })
}

/// Error table at t = 0.5 for α ∈ {0.25, 0.5, 0.75} as CSV text.
#[pyfunction]
#[pyo3(signature = (n = 6, *, c = 0.001, mode = "conformable", sign = "corrected"))]
fn table1(py: Python<'_>, n: usize, c: f64, mode: &str, sign: &str) -> PyResult<String> {
    let spec = build_spec(0.5, n, c, mode, sign, "min", (0.0, 1.0), 1.0, 50, 1e-8)?;
    let reports = py.detach(|| table1_report(&spec)).map_err(to_py)?;
    Ok(table1_csv(&reports))
}

/// Runs the kernel property checks; returns `(all_passed, report_text)`.
#[pyfunction]
fn kernel_check(py: Python<'_>) -> PyResult<(bool, String)> {
    let report = py
        .detach(|| kernel_property_suite(&PiecewisePolyKernel1D::w3_constrained()))
        .map_err(to_py)?;
    Ok((report.all_passed(), report.render()))
}

#[pymodule]
fn vp_rkhs(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("SolverError", m.py().get_type::<SolverError>())?;
    m.add_class::<Solution>()?;
    m.add_function(wrap_pyfunction!(exact_solution, m)?)?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(table1, m)?)?;
    m.add_function(wrap_pyfunction!(kernel_check, m)?)?;
    Ok(())
}
