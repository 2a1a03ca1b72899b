use thiserror::Error;

/// Errors raised by the evaluation, solver and quadrature routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    /// Evaluation requested exactly at threshold (`chi = 0`), where `K`
    /// vanishes and the closed forms are `0/0`.
    #[error("threshold rapidity chi = 0 is a degenerate point")]
    Threshold,

    /// A denominator (`A` or `Δ`) vanished at real rapidity.
    #[error("pole at real rapidity chi = {chi}: {what} vanishes")]
    Pole { chi: f64, what: &'static str },

    #[error("non-finite function value at x = {x}")]
    Evaluation { x: f64 },

    /// Quadrature gave up before reaching the requested tolerance.
    #[error("quadrature did not converge: value {value}, error estimate {err_estimate:e}")]
    Accuracy { value: f64, err_estimate: f64 },

    #[error("unsupported: {0}")]
    Unsupported(&'static str),

    #[error("precondition violated: {0}")]
    Precondition(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
