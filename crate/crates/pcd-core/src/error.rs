use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CoreError {
    #[error("expansion parameter must satisfy r >= 1, got {0}")]
    BadExpansion(f64),
    #[error("centrality parameter must lie in [0, 1], got {0}")]
    BadCentrality(f64),
    #[error("reference set is empty")]
    EmptyReference,
    #[error("reference points must be finite and distinct (offending value {0})")]
    DegenerateReference(f64),
    #[error("point {0} is not finite")]
    NonFinite(f64),
    #[error("point {x} lies outside the interval ({lo}, {hi})")]
    OutOfInterval { x: f64, lo: f64, hi: f64 },
    #[error("point {0} coincides with a reference point")]
    CoincidentPoint(f64),
    #[error("cell contains no points")]
    EmptyCell,
    #[error("this routine requires r = 1")]
    WrongSpecialization,
    #[error("brute-force oracle limited to {cap} vertices, got {n}")]
    OracleTooLarge { n: usize, cap: usize },
}
