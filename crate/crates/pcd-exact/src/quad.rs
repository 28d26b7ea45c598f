//! Globally adaptive Gauss-Legendre integration on caller-supplied panels.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use gauss_quad::GaussLegendre;

use crate::{ExactError, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadSpec {
    /// Absolute tolerance for the whole integral.
    pub abs_tol: f64,
    /// Maximum bisection depth of any panel.
    pub max_depth: u32,
}

impl Default for QuadSpec {
    fn default() -> Self {
        Self { abs_tol: 1e-11, max_depth: 40 }
    }
}

/// Upper bound on live panels per call.
const MAX_PANELS: usize = 4000;

struct Panel {
    lo: f64,
    hi: f64,
    depth: u32,
    value: f64,
    err: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err)
    }
}

pub struct Integrator {
    coarse: GaussLegendre,
    fine: GaussLegendre,
    spec: QuadSpec,
}

impl Integrator {
    pub fn new(spec: QuadSpec) -> Self {
        Self {
            coarse: GaussLegendre::new(10.try_into().unwrap()),
            fine: GaussLegendre::new(21.try_into().unwrap()),
            spec,
        }
    }

    pub fn spec(&self) -> QuadSpec {
        self.spec
    }

    fn panel<F: FnMut(f64) -> f64>(&self, f: &mut F, lo: f64, hi: f64, depth: u32) -> Result<Panel> {
        let value = self.fine.integrate(lo, hi, &mut *f);
        let err = (value - self.coarse.integrate(lo, hi, &mut *f)).abs();
        if !value.is_finite() || !err.is_finite() {
            return Err(ExactError::QuadratureFailed { lo, hi, err: f64::NAN });
        }
        Ok(Panel { lo, hi, depth, value, err })
    }

    /// Integrates `f` over `[a, b]`, first splitting at the breakpoints that
    /// fall strictly inside. The panel with the largest error estimate is
    /// bisected until the summed estimate is below `tol`.
    pub fn integrate<F>(&self, mut f: F, a: f64, b: f64, breaks: &[f64], tol: f64) -> Result<f64>
    where
        F: FnMut(f64) -> f64,
    {
        if !(b > a) {
            return Ok(0.0);
        }
        let mut pts: Vec<f64> = breaks.iter().copied().filter(|&t| t > a && t < b).collect();
        pts.push(a);
        pts.push(b);
        pts.sort_by(f64::total_cmp);
        pts.dedup();
        let mut heap = BinaryHeap::new();
        for w in pts.windows(2) {
            heap.push(self.panel(&mut f, w[0], w[1], 0)?);
        }
        // panels too small or too deep to refine
        let mut frozen_value = 0.0;
        let mut frozen_err = 0.0;
        let floor = 64.0 * f64::EPSILON;
        loop {
            let live_err: f64 = heap.iter().map(|p| p.err).sum();
            let live_value: f64 = heap.iter().map(|p| p.value).sum();
            let total = live_value + frozen_value;
            if live_err + frozen_err <= tol.max(floor * total.abs()) {
                return Ok(total);
            }
            let Some(worst) = heap.pop() else {
                return Err(ExactError::QuadratureFailed { lo: a, hi: b, err: frozen_err });
            };
            let width = worst.hi - worst.lo;
            let tiny = width <= 1e3 * f64::EPSILON * worst.lo.abs().max(worst.hi.abs()).max(b - a);
            if tiny || worst.depth >= self.spec.max_depth {
                frozen_value += worst.value;
                frozen_err += worst.err;
                if frozen_err > tol {
                    return Err(ExactError::QuadratureFailed { lo: worst.lo, hi: worst.hi, err: frozen_err });
                }
                continue;
            }
            if heap.len() >= MAX_PANELS {
                return Err(ExactError::QuadratureFailed { lo: worst.lo, hi: worst.hi, err: live_err });
            }
            let mid = 0.5 * (worst.lo + worst.hi);
            heap.push(self.panel(&mut f, worst.lo, mid, worst.depth + 1)?);
            heap.push(self.panel(&mut f, mid, worst.hi, worst.depth + 1)?);
        }
    }
}

impl Default for Integrator {
    fn default() -> Self {
        Self::new(QuadSpec::default())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_and_kink() {
        let q = Integrator::default();
        let v = q.integrate(|x| x * x, 0.0, 1.0, &[], 1e-12).unwrap();
        assert!((v - 1.0 / 3.0).abs() < 1e-15);
        let v = q.integrate(|x: f64| (x - 0.3).abs(), 0.0, 1.0, &[], 1e-10).unwrap();
        assert!((v - (0.045 + 0.245)).abs() < 1e-10);
        let v = q.integrate(|x| if x < 0.3 { 1.0 } else { 0.0 }, 0.0, 1.0, &[0.3], 1e-12).unwrap();
        assert!((v - 0.3).abs() < 1e-15);
        // an unlisted jump is still located by bisection
        let v = q.integrate(|x| if x < 0.3 { 1.0 } else { 0.0 }, 0.0, 1.0, &[], 1e-10).unwrap();
        assert!((v - 0.3).abs() < 1e-10);
    }

    #[test]
    fn endpoint_singularity_fails_loudly() {
        let q = Integrator::new(QuadSpec { abs_tol: 1e-10, max_depth: 8 });
        let r = q.integrate(|x: f64| x.powf(-0.5), 0.0, 1.0, &[], 1e-12);
        assert!(matches!(r, Err(ExactError::QuadratureFailed { .. })));
    }

    #[test]
    fn mild_singularity_converges_with_depth() {
        let q = Integrator::default();
        let v = q.integrate(|x: f64| x.sqrt(), 0.0, 1.0, &[], 1e-10).unwrap();
        assert!((v - 2.0 / 3.0).abs() < 1e-10);
    }
}
