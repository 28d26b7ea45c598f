use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DistError {
    #[error("support must satisfy a < b, got ({0}, {1})")]
    BadSupport(f64, f64),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("invalid density: {0}")]
    BadPdf(String),
    #[error("cdf is not invertible at {0}")]
    NotInvertible(f64),
    #[error("derivative of order {0} is not available")]
    NoDerivative(usize),
    #[error(transparent)]
    Core(#[from] pcd_core::CoreError),
}
