use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Operand dimensions do not fit the operation.
    #[error("shape error: {0}")]
    Shape(String),

    /// Tensor product dimensions overflow `usize`.
    #[error("size error: {0}")]
    Size(String),

    /// A physical constraint (Hermiticity, trace, positivity, ...) is violated.
    #[error("validation error: {check} check failed (magnitude {magnitude:.3e})")]
    Validation { check: String, magnitude: f64 },

    /// Argument outside the domain of a scalar function.
    #[error("domain error: {0}")]
    Domain(String),

    /// Unknown catalog name, parameter out of range, bad option.
    #[error("usage error: {0}")]
    Usage(String),

    /// A precondition of a closed-form shortcut does not hold.
    #[error("precondition error: {0}")]
    Precondition(String),

    /// Iterative eigensolver did not converge.
    #[error("numeric error: {0}")]
    Numeric(String),

    /// Deficit refinement ran out of budget. Carries the best point seen.
    #[error(
        "optimizer did not converge after {evaluations} evaluations \
         (best entropy {best_value:.12} at theta={best_theta:.9}, phi={best_phi:.9})"
    )]
    NonConvergence {
        evaluations: usize,
        best_value: f64,
        best_theta: f64,
        best_phi: f64,
    },
}

impl Error {
    pub(crate) fn validation(check: impl Into<String>, magnitude: f64) -> Self {
        Error::Validation {
            check: check.into(),
            magnitude,
        }
    }

    /// True for the two numeric failure kinds (eigensolver, optimizer).
    pub fn is_numeric(&self) -> bool {
        matches!(self, Error::Numeric(_) | Error::NonConvergence { .. })
    }
}
