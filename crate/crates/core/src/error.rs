use alloc::string::String;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("matrix is not unitary (Frobenius residual {residual:e})")]
    NotUnitary { residual: f64 },
    #[error("operator is not hermitian (residual {residual:e})")]
    NotHermitian { residual: f64 },
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("insufficient resolution: {0}")]
    Resolution(String),
    #[error("insufficient data: need {needed} values, got {got}")]
    InsufficientData { needed: usize, got: usize },
    #[error("family members {i} and {j} do not commute (residual {residual:e})")]
    NotCommuting { i: usize, j: usize, residual: f64 },
    #[error("chart is ambiguous: {0}")]
    AmbiguousChart(String),
    #[error("internal consistency check failed: {0}")]
    Consistency(String),
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn param(msg: impl Into<String>) -> Error {
    Error::Parameter(msg.into())
}
