use pcd_core::CoreError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExactError {
    #[error("sample size must be at least {min}, got {n}")]
    BadSampleSize { n: u32, min: u32 },
    #[error("quadrature did not converge on [{lo}, {hi}] (error estimate {err:e})")]
    QuadratureFailed { lo: f64, hi: f64, err: f64 },
    #[error(transparent)]
    Core(#[from] CoreError),
}

pub type Result<T> = std::result::Result<T, ExactError>;
