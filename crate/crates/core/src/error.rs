use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("degree {p} exceeds the configured cap {cap}")]
    DegreeTooLarge { p: usize, cap: usize },

    #[error("invalid space: {0}")]
    InvalidSpace(String),

    #[error("basis index {index} outside {min}..={max}")]
    IndexOutOfRange { index: i64, min: i64, max: i64 },

    #[error("invalid derivative order {order}: {reason}")]
    InvalidDerivativeOrder { order: usize, reason: &'static str },

    #[error("quadrature order {0} outside 1..=64")]
    InvalidQuadratureOrder(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("matrix is ill-conditioned (condition estimate {estimate:.3e})")]
    IllConditioned { estimate: f64 },

    #[error("matrix is indefinite (smallest eigenvalue {min_eigenvalue:.3e})")]
    Indefinite { min_eigenvalue: f64 },

    #[error("no witness exists: fine dimension {fine_dim}, constraint rank {rank}")]
    EmptyWitnessSpace { fine_dim: usize, rank: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
