use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("argument {value:e} outside the domain of {what}")]
    Domain { what: &'static str, value: f64 },

    #[error("pole of {what} near argument {at:e} (denominator {denominator:e})")]
    Pole { what: &'static str, at: f64, denominator: f64 },

    #[error("no root of {what} found at wavenumber {at:e}")]
    NoRoot { what: &'static str, at: f64 },

    #[error("lost track of {what} at wavenumber {at:e}: expected {expected:e}, found {found:e}")]
    LostTrack { what: &'static str, at: f64, expected: f64, found: f64 },

    #[error("quadrature did not converge: estimate {estimate:e}, error {error:e}")]
    Quadrature { estimate: f64, error: f64 },

    #[error("root of {what} at {at:e} has relative residual {relative:e} above the tolerance")]
    Residual { what: &'static str, at: f64, relative: f64 },

    #[error("{what} did not converge after {iterations} iterations")]
    NonConvergence { what: &'static str, iterations: usize },

    #[error("shooting did not converge; bracket history {history:?}")]
    Shooting { history: Vec<(f64, f64)> },

    #[error("modes were built from different configurations: {0}")]
    Mismatch(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("invalid input: {0}")]
    Input(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
