//! Limiting behaviour of `P(γ = 2)` for two reference points as the sample
//! grows: the uniform trichotomy, derivative-order limits for a general
//! density at the critical centralities, the `(2, 1/2)` product limit and
//! the rate constants.
//!
//! ```
//! use pcd_asymptotic::{asymptotic_uniform, LimitLaw};
//! use pcd_core::PcdParams;
//!
//! let a = asymptotic_uniform(PcdParams::new(2.0, 0.5).unwrap()).unwrap();
//! assert_eq!(a.law, LimitLaw::OnePlusBernoulli { p: 4.0 / 9.0 });
//! ```

mod error;
mod order;
mod rate;

use pcd_core::PcdParams;
use pcd_dist::{DistributionModel, Side};
use serde::{Deserialize, Serialize};

pub use error::{AsymptoticError, Result};
pub use order::{CriticalPair, Detected, CAUCHY_TOL, DELTAS, K_MAX, ZERO_TOL};
pub use rate::{rate_constants, RateConstant};

/// Limit law of γ for two reference points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "law", rename_all = "kebab-case")]
pub enum LimitLaw {
    PointMass1,
    PointMass2,
    OnePlusBernoulli { p: f64 },
}

impl LimitLaw {
    pub fn from_p(p: f64) -> Self {
        if p <= 0.0 {
            LimitLaw::PointMass1
        } else if p >= 1.0 {
            LimitLaw::PointMass2
        } else {
            LimitLaw::OnePlusBernoulli { p }
        }
    }

    /// Limiting `P(γ = 2)`.
    pub fn p(&self) -> f64 {
        match *self {
            LimitLaw::PointMass1 => 0.0,
            LimitLaw::PointMass2 => 1.0,
            LimitLaw::OnePlusBernoulli { p } => p,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AsymptoticRegime {
    /// `c ∈ {0, 1}`: γ = 1 for every n.
    UniformEdgeCentrality,
    /// `r > 1/τ`.
    UniformAbove,
    /// `r < 1/τ`.
    UniformBelow,
    /// `r = 1/τ`.
    UniformCritical,
    /// `(r, c) = (2, 1/2)`.
    UniformCccd,
    GeneralLeft,
    GeneralRight,
    GeneralCccd,
}

impl AsymptoticRegime {
    pub fn label(&self) -> &'static str {
        match self {
            AsymptoticRegime::UniformEdgeCentrality => "uniform-edge-centrality",
            AsymptoticRegime::UniformAbove => "uniform-above",
            AsymptoticRegime::UniformBelow => "uniform-below",
            AsymptoticRegime::UniformCritical => "uniform-critical",
            AsymptoticRegime::UniformCccd => "uniform-cccd",
            AsymptoticRegime::GeneralLeft => "general-left",
            AsymptoticRegime::GeneralRight => "general-right",
            AsymptoticRegime::GeneralCccd => "general-cccd",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticResult {
    pub limit_p: f64,
    pub degenerate: bool,
    pub law: LimitLaw,
    pub regime: AsymptoticRegime,
    /// Detected order `k` (left side, or the only side).
    pub order: Option<usize>,
    /// Detected order `ℓ` at the right end, for the `(2, 1/2)` product.
    pub order_right: Option<usize>,
    /// The ratio was obtained as a limit because a derivative diverges.
    pub delta_limit: bool,
    /// `(k+2)/(k+1)`.
    pub rate_exponent: Option<f64>,
    pub rate: Option<RateConstant>,
}

impl AsymptoticResult {
    fn new(p: f64, regime: AsymptoticRegime) -> Self {
        let p = p.clamp(0.0, 1.0);
        Self {
            limit_p: p,
            degenerate: p == 0.0 || p == 1.0,
            law: LimitLaw::from_p(p),
            regime,
            order: None,
            order_right: None,
            delta_limit: false,
            rate_exponent: None,
            rate: None,
        }
    }
}

/// Relative tolerance for `r = 1/τ`.
pub const CRITICAL_TOL: f64 = 1e-12;

fn near(a: f64, b: f64) -> bool {
    a.is_finite() && b.is_finite() && (a - b).abs() <= CRITICAL_TOL * a.abs().max(b.abs())
}

pub fn rate_exponent(k: usize) -> f64 {
    (k as f64 + 2.0) / (k as f64 + 1.0)
}

/// Uniform limit law, with `τ = max(c, 1-c)`.
pub fn asymptotic_uniform(params: PcdParams) -> Result<AsymptoticResult> {
    use AsymptoticRegime::*;
    let (r, c) = (params.r(), params.c());
    if c == 0.0 || c == 1.0 {
        return Ok(AsymptoticResult::new(0.0, UniformEdgeCentrality));
    }
    if near(r, 2.0) && near(c, 0.5) {
        let mut out = AsymptoticResult::new(4.0 / 9.0, UniformCccd);
        out.order = Some(0);
        out.order_right = Some(0);
        return Ok(out);
    }
    let tau = c.max(1.0 - c);
    if params.is_infinite() {
        return Ok(AsymptoticResult::new(0.0, UniformAbove));
    }
    if near(r * tau, 1.0) {
        let mut out = AsymptoticResult::new(r / (r + 1.0), UniformCritical);
        out.order = Some(0);
        out.rate_exponent = Some(rate_exponent(0));
        return Ok(out);
    }
    Ok(if r * tau > 1.0 {
        AsymptoticResult::new(0.0, UniformAbove)
    } else {
        AsymptoticResult::new(1.0, UniformBelow)
    })
}

fn check_r(r: f64) -> Result<()> {
    if r > 1.0 && r < 2.0 {
        Ok(())
    } else {
        Err(AsymptoticError::BadParameter(format!("r must lie in (1, 2), got {r}")))
    }
}

/// Critical points for `c = (r-1)/r`: the left support end and
/// `y1 + (r-1)(y2-y1)/r`, both from the right.
pub fn left_pair(model: &DistributionModel, r: f64) -> CriticalPair {
    let (y1, y2) = model.support();
    CriticalPair { edge: y1, inner: y1 + (r - 1.0) * (y2 - y1) / r, side: Side::Right, base: r }
}

/// Critical points for `c = 1/r`: the right support end and
/// `y1 + (y2-y1)/r`, both from the left.
pub fn right_pair(model: &DistributionModel, r: f64) -> CriticalPair {
    let (y1, y2) = model.support();
    CriticalPair { edge: y2, inner: y1 + (y2 - y1) / r, side: Side::Left, base: r }
}

fn from_detected(d: &Detected, regime: AsymptoticRegime) -> AsymptoticResult {
    let mut out = AsymptoticResult::new(d.ratio, regime);
    out.order = Some(d.k);
    out.delta_limit = d.unbounded;
    out.rate_exponent = Some(rate_exponent(d.k));
    out
}

/// Limit of `P(γ = 2)` at `c = (r-1)/r`.
pub fn asymptotic_general_left(model: &DistributionModel, r: f64) -> Result<AsymptoticResult> {
    check_r(r)?;
    let d = left_pair(model, r).detect(model)?;
    Ok(from_detected(&d, AsymptoticRegime::GeneralLeft))
}

/// Limit of `P(γ = 2)` at `c = 1/r`.
pub fn asymptotic_general_right(model: &DistributionModel, r: f64) -> Result<AsymptoticResult> {
    check_r(r)?;
    let d = right_pair(model, r).detect(model)?;
    Ok(from_detected(&d, AsymptoticRegime::GeneralRight))
}

/// Limit at `(r, c) = (2, 1/2)`: the product of the two base-2 ratios at the
/// support ends and the midpoint.
pub fn asymptotic_cccd(model: &DistributionModel) -> Result<AsymptoticResult> {
    let (y1, y2) = model.support();
    let mid = 0.5 * (y1 + y2);
    let left = CriticalPair { edge: y1, inner: mid, side: Side::Right, base: 2.0 }.detect(model)?;
    let right = CriticalPair { edge: y2, inner: mid, side: Side::Left, base: 2.0 }.detect(model)?;
    let mut out = AsymptoticResult::new(left.ratio * right.ratio, AsymptoticRegime::GeneralCccd);
    out.order = Some(left.k);
    out.order_right = Some(right.k);
    out.delta_limit = left.unbounded || right.unbounded;
    Ok(out)
}
