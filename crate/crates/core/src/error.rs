use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("mode mismatch: {0}")]
    ModeMismatch(String),
    #[error("variable lists differ: {0}")]
    VariableMismatch(String),
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("polynomial division is not exact")]
    NotDivisible,
    #[error("polynomial is identically zero")]
    ZeroPolynomial,
    #[error("system is not zero-dimensional")]
    NonZeroDimensional,
    #[error("sampling failed: {0}")]
    SamplingFailed(String),
    #[error("matrix is rank deficient: expected rank {expected}, found {found}")]
    RankDeficient { expected: usize, found: usize },
    #[error("validation failed: {0}")]
    ValidationFailed(String),
    #[error("ray lies on the surface (p(rho) is identically zero)")]
    RayOnSurface,
    #[error("inversion failed at rho ~ {rho}: {reason}")]
    InversionFailed { rho: f64, reason: String },
    #[error("resultant is identically zero")]
    IdenticallyZeroResultant,
    #[error("hyperplane determinant is identically zero")]
    DegenerateHyperplane,
    #[error("retry budget exhausted after {attempts} attempts: {reason}")]
    RetryExhausted { attempts: usize, reason: String },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    pub(crate) fn parse(column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line: 1,
            column,
            message: message.into(),
        }
    }

    /// Relocates a single-line parse error to `line` of a larger document.
    pub fn at_line(self, line: usize) -> Self {
        match self {
            Error::Parse {
                column, message, ..
            } => Error::Parse {
                line,
                column,
                message,
            },
            other => other,
        }
    }
}
