use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported dimension n = {0}: only odd n >= 3 have elementary kernels")]
    UnsupportedDimension(usize),

    #[error("branch error: Im(zeta) = {0} < 0 is outside the physical sheet")]
    Branch(f64),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error(
        "alpha = {alpha} is not below the growth threshold {threshold}; \
         no counterexample growth is predicted"
    )]
    AboveThreshold { alpha: f64, threshold: f64 },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("quadrature did not converge after {panels} panels (estimate {estimate}, error {error:e})")]
    NonConvergence {
        estimate: Complex64,
        error: f64,
        panels: usize,
    },

    #[error("critical point {lambda0} is not interior to [{a}, {b}]; the integral is nonstationary")]
    Nonstationary { lambda0: f64, a: f64, b: f64 },

    #[error("oracle refused: {0}")]
    Refused(String),

    #[error("resolution error: {0}")]
    Resolution(String),

    #[error("fit error: {0}")]
    Fit(String),

    #[error("validation error: {0}")]
    Validation(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Whether the failure is numerical (as opposed to a bad input).
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NonConvergence { .. } | Error::Nonstationary { .. } | Error::Refused(_)
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Io(e.to_string())
    }
}
