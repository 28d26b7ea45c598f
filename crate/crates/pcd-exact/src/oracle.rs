//! Quadrature over the joint density of the sample minimum and maximum.
//!
//! On the unit interval with center `c`, the points that reach both extremes
//! form `(d1, d2)`: the part left of `c` is `(x_n/r, c]` when `x_n/r < c` and
//! the part right of `c` is `(c, (x_1+r-1)/r)` when that bound exceeds `c`.
//! Given the extremes, gamma is 2 exactly when no sample point falls there.

use std::cell::Cell;

use pcd_core::PcdParams;
use serde::{Deserialize, Serialize};

use crate::formulas::pw;
use crate::quad::{Integrator, QuadSpec};
use crate::{ExactError, Result};

/// Which sides of the center contribute to the single-dominator region.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Gamma1Shape {
    /// Both sides: `(x_n/r, (x_1+r-1)/r)`.
    Both,
    /// `(x_n/r, c]` only.
    LeftOnly,
    /// `(c, (x_1+r-1)/r)` only.
    RightOnly,
    Empty,
}

/// Shape and endpoints of the single-dominator region for extremes `x1 < xn`
/// on the unit interval.
pub fn gamma1_shape(x1: f64, xn: f64, r: f64, c: f64) -> (Gamma1Shape, f64, f64) {
    let a = xn / r;
    let b = (x1 + r - 1.0) / r;
    match (a < c, b > c) {
        (true, true) => (Gamma1Shape::Both, a, b),
        (true, false) => (Gamma1Shape::LeftOnly, a, c),
        (false, true) => (Gamma1Shape::RightOnly, c, b),
        (false, false) => (Gamma1Shape::Empty, c, c),
    }
}

/// Inner (x_n) breakpoints for fixed x_1.
pub fn inner_breaks(x1: f64, r: f64, c: f64) -> [f64; 4] {
    [r * c, (x1 + r - 1.0) / r, r * x1, c]
}

/// Outer (x_1) breakpoints.
pub fn outer_breaks(r: f64, c: f64) -> [f64; 7] {
    [c, 1.0 - r * (1.0 - c), r * r * c - r + 1.0, 1.0 / (r + 1.0), 1.0 / r, c / r, r * c]
}

/// `P(gamma = 2)` split by the shape of the single-dominator region.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct CasePartials {
    pub both: f64,
    pub left_only: f64,
    pub right_only: f64,
    pub empty: f64,
}

impl CasePartials {
    pub fn total(&self) -> f64 {
        self.both + self.left_only + self.right_only + self.empty
    }

    pub fn get(&self, shape: Gamma1Shape) -> f64 {
        match shape {
            Gamma1Shape::Both => self.both,
            Gamma1Shape::LeftOnly => self.left_only,
            Gamma1Shape::RightOnly => self.right_only,
            Gamma1Shape::Empty => self.empty,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleResult {
    pub value: f64,
    pub cases: CasePartials,
}

/// Density of `(x_1, x_n)` times `P(gamma = 2 | x_1, x_n)`, restricted to one shape.
fn integrand(n: u32, x1: f64, xn: f64, r: f64, c: f64, want: Gamma1Shape) -> f64 {
    let (shape, d1, d2) = gamma1_shape(x1, xn, r, c);
    if shape != want {
        return 0.0;
    }
    let k = n as i64 - 2;
    let scale = (n as f64) * (n as f64 - 1.0);
    if shape == Gamma1Shape::Empty {
        return scale * pw(xn - x1, k);
    }
    // an extreme dominates everything when its region reaches the other extreme
    let x1_covers = x1 > c || xn < r * x1;
    let xn_covers = xn <= c || x1 > 1.0 - r * (1.0 - xn);
    if x1_covers || xn_covers {
        return 0.0;
    }
    // at r = 1 the region can lie outside [x1, xn] altogether
    let overlap = (d2.min(xn) - d1.max(x1)).max(0.0);
    scale * pw((xn - x1 - overlap).max(0.0), k)
}

fn shape_integral(q: &Integrator, n: u32, r: f64, c: f64, want: Gamma1Shape) -> Result<f64> {
    let tol = q.spec().abs_tol;
    let failure: Cell<Option<ExactError>> = Cell::new(None);
    let outer = |x1: f64| {
        let inner = q.integrate(|xn| integrand(n, x1, xn, r, c, want), x1, 1.0, &inner_breaks(x1, r, c), tol / 8.0);
        match inner {
            Ok(v) => v,
            Err(e) => {
                failure.set(Some(e));
                0.0
            }
        }
    };
    let v = q.integrate(outer, 0.0, 1.0, &outer_breaks(r, c), tol / 2.0)?;
    match failure.take() {
        Some(e) => Err(e),
        None => Ok(v),
    }
}

/// `p_n(U, r, c)` by two-dimensional quadrature, with per-shape partials.
pub fn p_numeric_oracle(n: u32, params: PcdParams, spec: QuadSpec) -> Result<OracleResult> {
    if n < 2 {
        return Err(ExactError::BadSampleSize { n, min: 2 });
    }
    if params.is_infinite() {
        return Ok(OracleResult { value: 0.0, cases: CasePartials::default() });
    }
    let (r, c) = (params.r(), params.c());
    let q = Integrator::new(spec);
    let cases = CasePartials {
        both: shape_integral(&q, n, r, c, Gamma1Shape::Both)?,
        left_only: shape_integral(&q, n, r, c, Gamma1Shape::LeftOnly)?,
        right_only: shape_integral(&q, n, r, c, Gamma1Shape::RightOnly)?,
        empty: shape_integral(&q, n, r, c, Gamma1Shape::Empty)?,
    };
    Ok(OracleResult { value: cases.total(), cases })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn oracle(n: u32, r: f64, c: f64) -> OracleResult {
        p_numeric_oracle(n, PcdParams::new(r, c).unwrap(), QuadSpec::default()).unwrap()
    }

    #[test]
    fn two_half_small_n() {
        assert!((oracle(2, 2.0, 0.5).value - 1.0 / 3.0).abs() < 1e-10);
        assert!((oracle(3, 2.0, 0.5).value - (4.0 / 9.0 - 16.0 / 9.0 / 64.0)).abs() < 1e-10);
    }

    #[test]
    fn shape_map() {
        assert_eq!(gamma1_shape(0.1, 0.6, 2.0, 0.4).0, Gamma1Shape::Both);
        assert_eq!(gamma1_shape(0.1, 0.9, 2.0, 0.4).0, Gamma1Shape::RightOnly);
        assert_eq!(gamma1_shape(0.0, 0.2, 1.5, 0.5).0, Gamma1Shape::LeftOnly);
        assert_eq!(gamma1_shape(0.0, 0.9, 1.1, 0.5).0, Gamma1Shape::Empty);
    }

    #[test]
    fn rejects_small_n() {
        let p = PcdParams::new(2.0, 0.5).unwrap();
        assert!(matches!(p_numeric_oracle(1, p, QuadSpec::default()), Err(ExactError::BadSampleSize { .. })));
    }
}
