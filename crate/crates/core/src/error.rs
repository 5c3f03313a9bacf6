use thiserror::Error;

/// Errors produced by the numerical routines in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error in {op}: {detail}")]
    Domain { op: &'static str, detail: String },

    /// An index exceeds the available range (e.g. a mean past the last coefficient).
    #[error("index error in {op}: {detail}")]
    Index { op: &'static str, detail: String },

    /// Adaptive quadrature did not reach the requested tolerance.
    #[error("no convergence after {doublings} refinements (last estimates {previous:e} and {last:e})")]
    Convergence {
        doublings: usize,
        previous: f64,
        last: f64,
    },

    /// The tridiagonal eigensolver exceeded its iteration budget.
    #[error("eigensolver failed to converge for eigenvalue {index} of {size}")]
    Eigen { index: usize, size: usize },

    /// A quantity needed for normalisation vanished or underflowed.
    #[error("degenerate input in {op}: {detail}")]
    Degenerate { op: &'static str, detail: String },

    /// Evaluation of a panel function failed; carries the panel location.
    #[error("evaluation failed on panel [{a}, {b}]: {source}")]
    Panel {
        a: f64,
        b: f64,
        #[source]
        source: Box<Error>,
    },

    /// The witness builder exhausted its lacunarity retries.
    #[error("witness construction failed: {0}")]
    Witness(Box<crate::witness::WitnessFailure>),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(op: &'static str, detail: impl Into<String>) -> Error {
    Error::Domain {
        op,
        detail: detail.into(),
    }
}

pub(crate) fn index(op: &'static str, detail: impl Into<String>) -> Error {
    Error::Index {
        op,
        detail: detail.into(),
    }
}

impl Error {
    /// True for errors caused by invalid caller parameters (as opposed to numerical failure).
    pub fn is_invalid_input(&self) -> bool {
        match self {
            Error::Domain { .. } | Error::Index { .. } => true,
            Error::Panel { source, .. } => source.is_invalid_input(),
            _ => false,
        }
    }
}
