use thiserror::Error;

/// Errors produced by zonekit operations.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum ZoneError {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("X-space dimension k={k} is not supported here (supported: {supported})")]
    UnsupportedDimension { k: usize, supported: &'static str },

    #[error("polynomials carry different physical parameters")]
    ParamMismatch,

    #[error("generator index {index} out of range for k/2={half}")]
    IndexOutOfRange { index: usize, half: usize },

    #[error("time t={t} is singular (sin(lambda*t) vanishes within {guard:e})")]
    SingularTime { t: f64, guard: f64 },

    #[error("state is not contained in zone {zone} (residual {residual:e})")]
    NotInZone { zone: usize, residual: f64 },

    #[error("state is not an eigenfunction (residual {residual:e})")]
    NotEigenfunction { residual: f64 },

    #[error("quadrature did not converge: order {order} vs {doubled} differ by {change:e} (tolerance {tolerance:e})")]
    QuadratureNonConvergence {
        order: usize,
        doubled: usize,
        change: f64,
        tolerance: f64,
    },

    #[error("integral diverges: {0}")]
    NotIntegrable(&'static str),

    #[error("requested {requested} basis functions but only {available} were constructed")]
    BasisTooSmall { requested: usize, available: usize },

    #[error("quantity is not periodic: {0}")]
    NotPeriodic(&'static str),

    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, ZoneError>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> ZoneError {
    ZoneError::InvalidParameter {
        name,
        reason: reason.into(),
    }
}
