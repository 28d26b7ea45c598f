//! Domination number of the catch digraph when the reference class has `m`
//! points: exact law for uniform data by enumerating cell counts, the law
//! for general data by integrating over the reference points, expectations
//! and the limit laws.
//!
//! ```
//! use pcd_core::PcdParams;
//! use pcd_multi::pmf_uniform_multi;
//!
//! let pmf = pmf_uniform_multi(2, 1, PcdParams::new(2.0, 0.5).unwrap()).unwrap();
//! assert!((pmf.p(2) - 1.0 / 3.0).abs() < 1e-15);
//! ```

mod compose;
mod error;
mod general;
mod limit;
mod pmf;

pub use compose::CompositionSpace;
pub use error::{MultiError, Result};
pub use general::{
    cell_p_table, expected_gamma, expected_gamma_given_y, expected_gamma_uniform, pmf_general_multi, pmf_given_y,
    GeneralMultiSpec, MAX_QUADRATURE_M,
};
pub use limit::{asymptotic_multi, asymptotic_multi_fixed_n, asymptotic_multi_given_y, MultiLimitLaw};
pub use pmf::{eta, pmf_uniform_multi, pmf_uniform_multi_with, zeta, GammaPmf, MultiSpec};
