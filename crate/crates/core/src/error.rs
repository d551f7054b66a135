use thiserror::Error;

/// Errors raised by ingestion, the test procedures and the simulation harness.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error at row {row}, column `{column}`: {message}")]
    Parse {
        /// 1-based data row, not counting the header.
        row: usize,
        column: String,
        message: String,
    },

    #[error("insufficient data in `{group}`: need at least {needed} observations, got {got}")]
    InsufficientData {
        group: String,
        needed: usize,
        got: usize,
    },

    #[error("schema error: {0}")]
    Schema(String),

    #[error("invalid value for {name}: {value} ({reason})")]
    Domain {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("degenerate estimate: {0}")]
    Degenerate(String),

    #[error("convex hull of the centered pseudo-values does not contain zero")]
    HullViolation,

    #[error("Lagrange multiplier search did not converge after {iterations} iterations")]
    NonConvergence { iterations: usize },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// True for failures of the numerical machinery rather than of the input.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::NonConvergence { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
