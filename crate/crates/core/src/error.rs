use thiserror::Error;

/// Errors raised by the model library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unsupported qubit count {0}; only 1 or 2 qubits are supported")]
    UnsupportedQubitCount(usize),

    #[error("{0} must be finite")]
    NonFinite(&'static str),

    #[error("state is not normalized: squared norm {0}")]
    NotNormalized(f64),

    #[error("matrix is not unitary: max |U†U - I| entry is {0:e}")]
    NotUnitary(f64),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid control qubit {0}; expected 1 or 2")]
    InvalidControl(usize),

    #[error("invalid qubit index {0}")]
    InvalidQubit(usize),

    #[error("{name} must be positive, got {value}")]
    NonPositive { name: &'static str, value: f64 },

    #[error("operation requires a Gaussian propensity curve, got a point mass")]
    PointMass,

    #[error("density underflows at log-price {0}")]
    ZeroDensity(f64),

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
