use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Argument outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Grid construction or compatibility failure.
    #[error("invalid grid: {0}")]
    Grid(String),

    /// An integral did not converge (non-decaying integrand, truncated support).
    #[error("convergence error: {0}")]
    Convergence(String),

    /// Stepper or quadrature gave up; the message carries diagnostics.
    #[error("numeric error: {0}")]
    Numeric(String),

    /// The solution reached the edge of the computational domain.
    #[error("boundary contamination, widen the domain: {0}")]
    WidenDomain(String),

    /// A conserved quantity drifted beyond its bound; reduce the step size.
    #[error("step size error: {0}")]
    StepSize(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn grid(msg: impl Into<String>) -> Self {
        Error::Grid(msg.into())
    }
}
