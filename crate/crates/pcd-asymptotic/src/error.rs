use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AsymptoticError {
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("no derivative order up to {k_max} satisfies the order conditions at {at:?}")]
    OrderDetectionFailed { k_max: usize, at: (f64, f64) },
    #[error("delta limit did not settle: last ratios {0:?}")]
    DeltaLimitUnstable(Vec<f64>),
    #[error("rate constant undefined: {0}")]
    RateUndefined(String),
}

pub type Result<T> = std::result::Result<T, AsymptoticError>;
