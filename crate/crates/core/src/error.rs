use thiserror::Error;

use crate::density::Violation;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid density: {0}")]
    InvalidDensity(Violation),
    #[error("density config: {0}")]
    Config(String),
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),
    #[error("tolerance not reached: value {value_re} + {value_im}i, error estimate {error_estimate}")]
    TolNotReached {
        value_re: f64,
        value_im: f64,
        error_estimate: f64,
    },
    #[error("closed form has a vanishing denominator at this pair")]
    PoleCase,
    #[error("hole factor vanishes; evaluate by quadrature instead")]
    ZeroDivisor,
    #[error("estimator did not converge: {0}")]
    NonConvergent(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("regime could not be verified: {0}")]
    RegimeUnverified(String),
    #[error("truncation tail {tail:e} exceeds tolerance {tol:e}")]
    TailTooLarge { tail: f64, tol: f64 },
    #[error("swiss cheese placement failed after {attempts} attempts")]
    PlacementFailed { attempts: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
