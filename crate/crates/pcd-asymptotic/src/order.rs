//! Derivative-order detection at a pair of critical points.

use pcd_dist::{DistributionModel, Side};

use crate::{AsymptoticError, Result};

/// Highest derivative order scanned before giving up.
pub const K_MAX: usize = 4;
/// Absolute tolerance for treating a derivative value as zero.
pub const ZERO_TOL: f64 = 1e-12;
/// Offsets for the limit of the ratio when a derivative diverges.
pub const DELTAS: [f64; 4] = [1e-3, 1e-4, 1e-5, 1e-6];
/// Successive ratio differences must fall below this.
pub const CAUCHY_TOL: f64 = 1e-3;

/// One end of the limit ratio: the support end `edge` and the interior
/// critical point `inner`, both approached from `side`.
#[derive(Debug, Clone, Copy)]
pub struct CriticalPair {
    pub edge: f64,
    pub inner: f64,
    pub side: Side,
    /// `base^{-(k+1)}` multiplies the inner derivative.
    pub base: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Detected {
    pub k: usize,
    pub at_edge: f64,
    pub at_inner: f64,
    /// `at_edge / (at_edge + base^{-(k+1)} at_inner)`.
    pub ratio: f64,
    /// True when a derivative of order `k` diverges and the ratio was taken
    /// as a limit.
    pub unbounded: bool,
}

fn snap(v: f64) -> f64 {
    if v.abs() <= ZERO_TOL {
        0.0
    } else {
        v
    }
}

impl CriticalPair {
    fn weight(&self, k: usize) -> f64 {
        self.base.powi(-(k as i32 + 1))
    }

    fn fail(&self) -> AsymptoticError {
        AsymptoticError::OrderDetectionFailed { k_max: K_MAX, at: (self.edge, self.inner) }
    }

    /// Smallest `k` with a nonzero weighted sum and vanishing lower orders at
    /// both points.
    pub fn detect(&self, model: &DistributionModel) -> Result<Detected> {
        for k in 0..=K_MAX {
            let a = snap(model.derivative(k, self.edge, self.side).map_err(|_| self.fail())?);
            let b = snap(model.derivative(k, self.inner, self.side).map_err(|_| self.fail())?);
            if a.is_infinite() || b.is_infinite() {
                let ratio = self.unbounded_ratio(model, k, a, b)?;
                return Ok(Detected { k, at_edge: a, at_inner: b, ratio, unbounded: true });
            }
            let w = self.weight(k);
            let sum = a + w * b;
            if sum != 0.0 {
                return Ok(Detected { k, at_edge: a, at_inner: b, ratio: a / sum, unbounded: false });
            }
            // a zero sum with a nonzero term breaks the lower-order condition
            if a != 0.0 || b != 0.0 {
                return Err(self.fail());
            }
        }
        Err(self.fail())
    }

    /// Limit of the ratio as the evaluation points move off the critical
    /// points by `delta`. A single divergent term decides the limit outright.
    fn unbounded_ratio(&self, model: &DistributionModel, k: usize, a: f64, b: f64) -> Result<f64> {
        match (a.is_infinite(), b.is_infinite()) {
            (true, false) => return Ok(1.0),
            (false, true) => return Ok(0.0),
            _ => {}
        }
        let w = self.weight(k);
        let step = if self.side == Side::Right { 1.0 } else { -1.0 };
        let mut ratios = Vec::new();
        let mut delta = DELTAS[0];
        // continue past the listed offsets by decades if still moving
        while delta >= 1e-12 {
            let fa = model.derivative(k, self.edge + step * delta, self.side).map_err(|_| self.fail())?;
            let fb = model.derivative(k, self.inner + step * delta, self.side).map_err(|_| self.fail())?;
            ratios.push(fa / (fa + w * fb));
            let n = ratios.len();
            if n >= DELTAS.len() && (ratios[n - 1] - ratios[n - 2]).abs() < CAUCHY_TOL {
                return Ok(ratios[n - 1]);
            }
            delta /= 10.0;
        }
        Err(AsymptoticError::DeltaLimitUnstable(ratios))
    }
}
