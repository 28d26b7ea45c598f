//! Exact and quadrature values of `P(gamma = 2)` for uniform data on one
//! interval between two reference points.
//!
//! ```
//! use pcd_exact::{p_exact, Regime};
//! let p = p_exact(2, 2.0, 0.5).unwrap();
//! assert!((p.value - 1.0 / 3.0).abs() < 1e-15);
//! assert_eq!(p.regime, Regime::Special2Half);
//! ```

mod error;
mod exact;
pub mod formulas;
mod oracle;
pub mod quad;

pub use error::{ExactError, Result};
pub use exact::{
    golden_centrality, mean_variance, p_exact, p_exact_2_half, p_exact_full, p_exact_r2_c,
    p_exact_r_half, ExactProbability, Regime,
};
pub use formulas::{displayed_c0_limit, nu1_c0_limit, pi4_printed, theta3_printed};
pub use oracle::{
    gamma1_shape, inner_breaks, outer_breaks, p_numeric_oracle, CasePartials, Gamma1Shape,
    OracleResult,
};
pub use quad::{Integrator, QuadSpec};
