use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("bad configuration: {0}")]
    BadConfig(String),
    #[error("cannot parse {what}: {detail}")]
    Parse { what: String, detail: String },
    #[error(transparent)]
    Core(#[from] pcd_core::CoreError),
    #[error(transparent)]
    Dist(#[from] pcd_dist::DistError),
    #[error(transparent)]
    Exact(#[from] pcd_exact::ExactError),
    #[error(transparent)]
    General(#[from] pcd_general::GeneralError),
    #[error(transparent)]
    Asymptotic(#[from] pcd_asymptotic::AsymptoticError),
    #[error(transparent)]
    Multi(#[from] pcd_multi::MultiError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = HarnessError> = std::result::Result<T, E>;
