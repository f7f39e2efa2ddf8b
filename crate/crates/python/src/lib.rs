//! Python bindings: means, F_D, periods and the identity checks.

use num_complex::Complex64;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use theta_agm::agm::{self, MeanKind};
use theta_agm::ball::BallPoint;
use theta_agm::hypergeom;
use theta_agm::identities as ids;
use theta_agm::periods::{self, BranchPoints};
use theta_agm::scalarcore::QuadratureSpec;
use theta_agm::theta::ThetaAccuracy;
use theta_agm::Error;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Domain(_) => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn branch(x: [f64; 3]) -> PyResult<BranchPoints> {
    BranchPoints::new(x[0], x[1], x[2]).map_err(py_err)
}

/// Common limit of the mean iteration; `kind` is one of gauss, borwein, km, borchardt.
#[pyfunction]
fn mean_limit(kind: &str, terms: Vec<f64>) -> PyResult<f64> {
    let kind: MeanKind = kind.parse().map_err(py_err)?;
    agm::agm(kind, &terms).map_err(py_err)
}

/// `F_D(1/4; 1/2, 1/2, 1/2; 1; x)`.
#[pyfunction]
fn fd_quarter(x: [f64; 3]) -> PyResult<f64> {
    hypergeom::fd_quarter(x).map_err(py_err)
}

/// Period vector of the curve branched at `0, x₁, x₂, x₃, 1`.
#[pyfunction]
fn period_vector(x: [f64; 3]) -> PyResult<[Complex64; 4]> {
    let pv = periods::period_vector(&branch(x)?, &QuadratureSpec::default()).map_err(py_err)?;
    Ok(pv.v)
}

/// Branch points recovered from a ball point through theta constants.
#[pyfunction]
fn x_of_v(v: [Complex64; 4]) -> PyResult<[Complex64; 3]> {
    let v = BallPoint::new(v).map_err(py_err)?;
    ids::x_of_v(&v, &ThetaAccuracy::default()).map_err(py_err)
}

/// Runs an identity suite at `x` and returns `(pass, max_residual)`.
#[pyfunction]
fn verify(suite: &str, x: [f64; 3]) -> PyResult<(bool, f64)> {
    let bp = branch(x)?;
    let acc = ThetaAccuracy::default();
    let v = periods::period_vector(&bp, &QuadratureSpec::default())
        .and_then(|p| p.ball_point())
        .map_err(py_err)?;
    let report = match suite {
        "inverse" => ids::verify_inverse(&bp, &v, &acc),
        "thomae" => ids::verify_thomae(&bp, &v, &acc),
        "table2" => ids::verify_table2(&bp, &v, &acc),
        "thomae3" => ids::verify_thomae3(&v, &acc),
        "abcd" => ids::verify_abcd(&bp, &v, &acc),
        "jacobi" => ids::verify_jacobi(&bp, &v, &acc),
        other => return Err(PyValueError::new_err(format!("unknown suite {other}"))),
    }
    .map_err(py_err)?;
    Ok((report.pass, report.max_residual()))
}

#[pymodule]
fn theta_agm_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(mean_limit, m)?)?;
    m.add_function(wrap_pyfunction!(fd_quarter, m)?)?;
    m.add_function(wrap_pyfunction!(period_vector, m)?)?;
    m.add_function(wrap_pyfunction!(x_of_v, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
