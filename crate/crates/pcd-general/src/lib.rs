//! `P(gamma = 2)` on one interval for an arbitrary continuous law.
//!
//! The joint density of the extremes is `n(n-1) f(x_1) f(x_n)
//! (F(x_n) - F(x_1))^(n-2)`; given the extremes, gamma is 2 when none of the
//! other points falls in the single-dominator region, which has conditional
//! probability `(F(x_n) - F(x_1) - F-mass of the region)^(n-2)` over the
//! same power of `F(x_n) - F(x_1)`. When the density blows up at an end of
//! its support the integral is taken in probability scale `u = F(x)`, where
//! the density factor disappears.

mod error;

use std::cell::Cell;

use pcd_core::PcdParams;
use pcd_dist::{DistributionModel, Side};
use pcd_exact::formulas::pw;
use pcd_exact::{gamma1_shape, inner_breaks, outer_breaks, ExactError, Gamma1Shape, Integrator, QuadSpec};

pub use error::{GeneralError, Result};

/// Integration variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    /// The data scale `x`.
    Original,
    /// `u = F(x)`.
    Probability,
}

/// Probability scale only when the density is unbounded at a support end.
pub fn preferred_scale(model: &DistributionModel) -> Scale {
    let (lo, hi) = model.support();
    if model.unbounded(0, lo, Side::Right) || model.unbounded(0, hi, Side::Left) {
        Scale::Probability
    } else {
        Scale::Original
    }
}

/// Everything the integrand needs.
#[derive(Debug, Clone)]
pub struct IntegrandContext<'a> {
    pub model: &'a DistributionModel,
    pub params: PcdParams,
    pub n: u32,
    /// Reference points bounding the interval.
    pub y1: f64,
    pub y2: f64,
    pub scale: Scale,
}

impl IntegrandContext<'_> {
    fn to_unit(&self, x: f64) -> f64 {
        (x - self.y1) / (self.y2 - self.y1)
    }

    fn from_unit(&self, t: f64) -> f64 {
        self.y1 + t * (self.y2 - self.y1)
    }

    fn cdf_unit(&self, t: f64) -> f64 {
        self.model.cdf(self.from_unit(t))
    }

    /// `(x, F(x), jacobian)` for a value of the integration variable.
    fn point(&self, s: f64) -> (f64, f64, f64) {
        match self.scale {
            Scale::Original => (s, self.model.cdf(s), self.model.pdf(s)),
            Scale::Probability => (self.model.quantile(s), s, 1.0),
        }
    }

    /// Maps a unit-interval location to the integration variable.
    fn unit_to_var(&self, t: f64) -> f64 {
        let t = t.clamp(0.0, 1.0);
        match self.scale {
            Scale::Original => self.from_unit(t),
            Scale::Probability => self.cdf_unit(t),
        }
    }

    fn var_to_unit(&self, s: f64) -> f64 {
        match self.scale {
            Scale::Original => self.to_unit(s),
            Scale::Probability => self.to_unit(self.model.quantile(s)),
        }
    }

    /// Range of the integration variable.
    fn range(&self) -> (f64, f64) {
        match self.scale {
            Scale::Original => self.model.support(),
            Scale::Probability => (0.0, 1.0),
        }
    }

    /// Single-dominator endpoints `(delta1, delta2)` in the original scale,
    /// or `None` when the region is empty.
    pub fn deltas(&self, x1: f64, xn: f64) -> Option<(f64, f64)> {
        let (r, c) = (self.params.r(), self.params.c());
        let (shape, d1, d2) = gamma1_shape(self.to_unit(x1), self.to_unit(xn), r, c);
        (shape != Gamma1Shape::Empty).then(|| (self.from_unit(d1), self.from_unit(d2)))
    }

    /// Joint density of the extremes times `P(gamma = 2 | extremes)`, in the
    /// chosen integration variable.
    pub fn integrand(&self, s1: f64, sn: f64) -> f64 {
        let (x1, u1, w1) = self.point(s1);
        let (xn, un, wn) = self.point(sn);
        if w1 == 0.0 || wn == 0.0 {
            return 0.0;
        }
        let (r, c) = (self.params.r(), self.params.c());
        let n = self.n;
        let scale = n as f64 * (n as f64 - 1.0) * w1 * wn;
        let k = n as i64 - 2;
        let (t1, tn) = (self.to_unit(x1), self.to_unit(xn));
        let (shape, d1, d2) = gamma1_shape(t1, tn, r, c);
        if shape == Gamma1Shape::Empty {
            return scale * pw((un - u1).max(0.0), k);
        }
        let t1_covers = t1 > c || tn < r * t1;
        let tn_covers = tn <= c || t1 > 1.0 - r * (1.0 - tn);
        if t1_covers || tn_covers {
            return 0.0;
        }
        let lo = if d1 <= t1 { u1 } else { self.cdf_unit(d1) };
        let hi = if d2 >= tn { un } else { self.cdf_unit(d2) };
        let mass = (hi - lo).max(0.0);
        scale * pw((un - u1 - mass).max(0.0), k)
    }
}

/// `p_n(F, r, c)` with the reference interval equal to the model's support.
pub fn p_numeric_general(model: &DistributionModel, params: PcdParams, n: u32) -> Result<f64> {
    let (lo, hi) = model.support();
    p_numeric_general_with(model, params, n, (lo, hi), QuadSpec { abs_tol: 1e-9, max_depth: 40 })
}

/// As [`p_numeric_general`] with explicit reference points and tolerance.
pub fn p_numeric_general_with(
    model: &DistributionModel,
    params: PcdParams,
    n: u32,
    reference: (f64, f64),
    spec: QuadSpec,
) -> Result<f64> {
    p_numeric_general_in(model, params, n, reference, spec, preferred_scale(model))
}

/// As [`p_numeric_general_with`] with the integration variable fixed.
pub fn p_numeric_general_in(
    model: &DistributionModel,
    params: PcdParams,
    n: u32,
    reference: (f64, f64),
    spec: QuadSpec,
    scale: Scale,
) -> Result<f64> {
    if n < 2 {
        return Err(GeneralError::BadSampleSize(n));
    }
    let (lo, hi) = model.support();
    let (y1, y2) = reference;
    if !(y1 < y2) || lo < y1 || hi > y2 {
        return Err(GeneralError::UnsupportedSupport { lo, hi, y1, y2 });
    }
    if params.is_infinite() {
        return Ok(0.0);
    }
    let ctx = IntegrandContext { model, params, n, y1, y2, scale };
    let (r, c) = (params.r(), params.c());
    let q = Integrator::new(spec);
    let to_var = |ts: &[f64]| -> Vec<f64> { ts.iter().filter(|t| t.is_finite()).map(|&t| ctx.unit_to_var(t)).collect() };
    let (a, b) = ctx.range();
    let failure: Cell<Option<ExactError>> = Cell::new(None);
    let outer = |s1: f64| {
        let breaks = to_var(&inner_breaks(ctx.var_to_unit(s1), r, c));
        match q.integrate(|sn| ctx.integrand(s1, sn), s1, b, &breaks, spec.abs_tol / 8.0) {
            Ok(v) => v,
            Err(e) => {
                failure.set(Some(e));
                0.0
            }
        }
    };
    let v = q.integrate(outer, a, b, &to_var(&outer_breaks(r, c)), spec.abs_tol / 2.0)?;
    if let Some(e) = failure.take() {
        return Err(e.into());
    }
    Ok(v.clamp(0.0, 1.0))
}

/// `(1 + p, p(1 - p))`: `gamma - 1` is Bernoulli(p).
pub fn mean_variance_gamma(model: &DistributionModel, params: PcdParams, n: u32) -> Result<(f64, f64)> {
    if n == 1 {
        return Ok((1.0, 0.0));
    }
    let p = p_numeric_general(model, params, n)?;
    Ok((1.0 + p, p * (1.0 - p)))
}
