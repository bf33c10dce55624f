//! Crate-wide error type.

use std::path::PathBuf;

/// Errors reported by solvers, problem definitions, and the harness.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A point had the wrong number of coordinates.
    #[error("dimension mismatch: expected {expected} coordinates, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    /// A coordinate fell outside the problem's box bounds.
    #[error("coordinate {index} = {value} lies outside [{lower}, {upper}]")]
    OutOfBounds {
        index: usize,
        value: f64,
        lower: f64,
        upper: f64,
    },

    /// A problem id string did not name a built-in problem.
    #[error("unknown problem `{0}` (expected one of: sch, zdt1, zdt2, zdt3)")]
    UnknownProblem(String),

    /// A parameter failed validation.
    #[error("invalid {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    /// An objective returned a non-finite value where a finite one is required.
    #[error("objective returned a non-finite value at the start point {position:?}")]
    NonFiniteStart { position: Vec<f64> },

    /// An objective returned the wrong number of values.
    #[error("objective returned {actual} values, expected {expected}")]
    ObjectiveArity { expected: usize, actual: usize },

    /// An f1 value fell outside the analytic front's domain.
    #[error("f1 = {0} lies outside the front's f1 domain")]
    OutsideFrontDomain(f64),

    /// The problem has no analytic front, so front-based metrics are unavailable.
    #[error("no analytic front is available for this problem")]
    NoFrontModel,

    /// A metric was asked to summarize zero points.
    #[error("point set is empty")]
    EmptyPointSet,

    /// A data or config file failed to parse; names the offending line.
    #[error("{}:{line}: {reason}", path.display())]
    Parse {
        path: PathBuf,
        line: usize,
        reason: String,
    },

    /// An I/O operation failed.
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn parse(path: impl Into<PathBuf>, line: usize, reason: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            line,
            reason: reason.into(),
        }
    }
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
