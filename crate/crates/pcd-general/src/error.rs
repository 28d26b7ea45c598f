use pcd_exact::ExactError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeneralError {
    #[error("sample size must be at least 2, got {0}")]
    BadSampleSize(u32),
    #[error("support ({lo}, {hi}) is not inside the reference interval ({y1}, {y2})")]
    UnsupportedSupport { lo: f64, hi: f64, y1: f64, y2: f64 },
    #[error(transparent)]
    Quadrature(#[from] ExactError),
}

pub type Result<T> = std::result::Result<T, GeneralError>;
