use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MultiError {
    #[error("need n >= 1 and m >= 1, got n = {n}, m = {m}")]
    BadSize { n: u32, m: u32 },
    #[error("n + m = {} exceeds the enumeration cap {cap}", n + m)]
    EnumerationTooLarge { n: u32, m: u32, cap: u32 },
    #[error("reference points must be finite and strictly increasing")]
    BadReference,
    #[error(transparent)]
    Exact(#[from] pcd_exact::ExactError),
    #[error(transparent)]
    General(#[from] pcd_general::GeneralError),
    #[error(transparent)]
    Dist(#[from] pcd_dist::DistError),
    #[error(transparent)]
    Asymptotic(#[from] pcd_asymptotic::AsymptoticError),
}

pub type Result<T> = std::result::Result<T, MultiError>;
