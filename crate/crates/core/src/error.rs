use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("no convergence in {what} after {iterations} steps")]
    NonConvergence { what: &'static str, iterations: usize },
    #[error("theta truncation: {0}")]
    Truncation(String),
    #[error("degenerate point: {0}")]
    Degenerate(String),
    #[error("boundary: {0}")]
    Boundary(String),
    #[error("consistency check failed: {0}")]
    Consistency(String),
    #[error("too close to a cusp: {0}")]
    CuspProximity(String),
    #[error("quadrature error indicator {indicator:e} above tolerance {tol:e}")]
    Quadrature { indicator: f64, tol: f64 },
    #[error("unknown name: {0}")]
    Unknown(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
