use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// Invalid argument or malformed input data.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The simultaneous root iteration did not converge within its budget.
    #[error("root finder did not converge after {iterations} iterations (worst residual {worst_residual:.3e})")]
    RootFinderDiverged {
        iterations: usize,
        worst_residual: f64,
    },

    /// A composition would exceed the configured degree cap.
    #[error("composition degree {would_be} exceeds degree cap {cap}")]
    DegreeCapExceeded { would_be: usize, cap: usize },

    /// The map is (numerically) the identity, for which the requested
    /// quantity is undefined.
    #[error("map is the identity")]
    IdentityMap,

    /// Exceptional sets are undefined for elliptic/parabolic Möbius maps.
    #[error("Möbius map is not loxodromic; exceptional set undefined")]
    NotLoxodromic,

    /// A numerical failure with context attached (e.g., the offending word).
    #[error("{context}: {source}")]
    Numerical {
        context: String,
        #[source]
        source: Box<Error>,
    },

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    /// Attach context (e.g. the word being processed) to a numerical error.
    pub fn with_context(self, context: impl Into<String>) -> Self {
        Error::Numerical {
            context: context.into(),
            source: Box::new(self),
        }
    }

    /// True for failures of numerical procedures, false for bad input.
    /// The CLI maps the former to exit code 2 and the latter to 1.
    pub fn is_numerical(&self) -> bool {
        match self {
            Error::RootFinderDiverged { .. } => true,
            Error::Numerical { .. } => true,
            _ => false,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
