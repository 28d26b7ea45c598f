//! Simulation engine and verification reports for the domination number of
//! one-dimensional proportional-edge catch digraphs.
//!
//! Random numbers come from ChaCha8 (`rand_chacha`). Each configuration is
//! split into a fixed number of chunks; chunk `i` uses the generator seeded
//! with the configuration seed and switched to stream `i`, and chunk counts
//! are summed, so results do not depend on the number of worker threads
//! (`CDL_THREADS`).
//!
//! ```
//! use pcd_core::PcdParams;
//! use pcd_dist::uniform_model;
//! use pcd_harness::{mc_estimate_p, McConfig};
//!
//! let cfg = McConfig::single_cell(uniform_model(0.0, 1.0).unwrap(), 1, PcdParams::new(2.0, 0.5).unwrap(), 100, 1);
//! assert_eq!(mc_estimate_p(&cfg).unwrap().p_hat, 0.0);
//! ```

mod config;
mod error;
pub mod io;
mod mc;
mod verify;

pub use config::{McConfig, Reference};
pub use error::{HarnessError, Result};
pub use mc::{mc_estimate_p, mc_gamma_counts, mc_gamma_pmf, Estimate};
pub use verify::{verify_grid, z_score, GridSpec, VerificationReport, VerifyRow};
