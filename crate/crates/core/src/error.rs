use thiserror::Error;

/// Failure modes shared by every numeric routine in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("gamma pole at s = {re} + {im}i")]
    Pole { re: f64, im: f64 },

    #[error("argument out of domain: {0}")]
    Domain(String),

    #[error("value underflows the scaled representation: {0}")]
    Underflow(String),

    #[error("quadrature did not converge within {steps} steps")]
    NonConvergence { steps: usize },

    #[error("series did not converge within {terms} terms")]
    SeriesNonConvergence { terms: usize },

    #[error("parameters are not tempered: {0}")]
    NonTempered(String),

    #[error("degenerate Langlands parameters (two entries coincide)")]
    Degenerate,

    #[error("cancellation too severe: largest term exceeds result by a factor 1e{digits:.1}")]
    Cancellation { digits: f64 },

    #[error("y2 = {y2} outside the validated range [{lo}, {hi}] of this cache")]
    AccuracyRange { y2: f64, lo: f64, hi: f64 },

    #[error("matrix determinant is {0}, expected 1")]
    Determinant(i64),

    #[error("numerically degenerate Iwasawa factorization")]
    NumericalDegeneracy,

    #[error("missing Fourier coefficient A({m1}, {m2})")]
    MissingCoefficient { m1: u32, m2: u32 },

    #[error("missing Dirichlet coefficient A(1, {0})")]
    MissingInput(u32),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("{0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl Error {
    /// Whether the error is a numeric failure (as opposed to bad input).
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            Error::Pole { .. }
                | Error::Underflow(_)
                | Error::NonConvergence { .. }
                | Error::SeriesNonConvergence { .. }
                | Error::Cancellation { .. }
                | Error::AccuracyRange { .. }
                | Error::NumericalDegeneracy
        )
    }
}
