//! Proportional-edge proximity catch digraphs on the real line.
//!
//! Points of one class (`X`) are joined by arcs determined by the intervals that
//! the other class (`Y`) cuts the line into. The crate builds the digraph and
//! computes its domination number with a linear-time rule, with a brute-force
//! subset search kept around as a test oracle.
//!
//! ```
//! use pcd_core::{build_digraph, domination_number, PcdParams};
//! let params = PcdParams::new(2.0, 0.5).unwrap();
//! let g = build_digraph(&[0.25, 0.3125, 0.625], &[0.0, 1.0], params).unwrap();
//! assert_eq!(domination_number(&g).gamma, 2);
//! ```

mod digraph;
mod domination;
mod error;
mod geometry;
mod params;

pub use digraph::{build_digraph, CatchDigraph, Vertex};
pub use domination::{
    bound_counts, brute_force_domination, brute_force_domination_with_cap, domination_number,
    domination_number_r1, gamma_only, BoundCounts, DominationOutcome, IntervalGamma,
    DEFAULT_ORACLE_CAP,
};
pub use error::CoreError;
pub use geometry::{
    gamma1_region, gamma1_unit, intervalize, proximity_region, Cell, Gamma1Region, Intervalization,
    ProximityRegion, RegionKind,
};
pub use params::{Expansion, PcdParams};
