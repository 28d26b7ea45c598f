//! Limit laws of γ as `n → ∞` with `m` fixed, and as `m → ∞` with `n` fixed.

use pcd_asymptotic::{asymptotic_uniform, CriticalPair, LimitLaw};
use pcd_core::PcdParams;
use pcd_dist::{DistributionModel, Side};
use serde::{Deserialize, Serialize};
use statrs::distribution::{Binomial, Discrete};

use crate::{MultiError, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "law", rename_all = "kebab-case")]
pub enum MultiLimitLaw {
    PointMass { q: u32 },
    /// `shift + Bin(trials, p)`.
    ShiftedBinomial { shift: u32, trials: u32, p: f64 },
    /// `shift + Σ Ber(p_i)`, one term per middle cell; the `p_i` depend on
    /// where the reference points fall.
    ShiftedPoissonBinomial { shift: u32, ps: Vec<f64> },
    /// `shift + Σ Ber(p_i)` where the `p_i` are random through `Y`; see
    /// [`asymptotic_multi_given_y`].
    MixedShiftedBinomial { shift: u32, trials: u32 },
}

impl MultiLimitLaw {
    /// `(q, P(γ = q))`; `None` for the mixed law.
    pub fn pmf(&self) -> Option<Vec<(u32, f64)>> {
        match self {
            MultiLimitLaw::PointMass { q } => Some(vec![(*q, 1.0)]),
            MultiLimitLaw::ShiftedBinomial { shift, trials, p } => {
                let b = Binomial::new(*p, u64::from(*trials)).expect("p in [0, 1]");
                Some((0..=*trials).map(|k| (shift + k, b.pmf(u64::from(k)))).collect())
            }
            MultiLimitLaw::ShiftedPoissonBinomial { shift, ps } => {
                let mut law = vec![1.0];
                for &p in ps {
                    let mut next = vec![0.0; law.len() + 1];
                    for (k, v) in law.iter().enumerate() {
                        next[k] += (1.0 - p) * v;
                        next[k + 1] += p * v;
                    }
                    law = next;
                }
                Some(law.into_iter().enumerate().map(|(k, v)| (shift + k as u32, v)).collect())
            }
            MultiLimitLaw::MixedShiftedBinomial { .. } => None,
        }
    }
}

/// `m → ∞` with `n` fixed: every point ends up alone in its cell.
pub fn asymptotic_multi_fixed_n(n: u32) -> MultiLimitLaw {
    MultiLimitLaw::PointMass { q: n }
}

/// Limit as `n → ∞` for `m` reference points. There are two end cells and
/// `m - 1` middle cells; each middle cell follows the two-point limit.
pub fn asymptotic_multi(m: u32, params: PcdParams, model: &DistributionModel) -> Result<MultiLimitLaw> {
    if m == 0 {
        return Err(MultiError::BadSize { n: 1, m });
    }
    let trials = m - 1;
    let two_point = asymptotic_uniform(params)?;
    Ok(match two_point.law {
        LimitLaw::PointMass1 => MultiLimitLaw::PointMass { q: m + 1 },
        LimitLaw::PointMass2 => MultiLimitLaw::PointMass { q: 2 * m },
        LimitLaw::OnePlusBernoulli { p } => {
            if trials == 0 {
                MultiLimitLaw::PointMass { q: 2 }
            } else if model.is_uniform() {
                MultiLimitLaw::ShiftedBinomial { shift: m + 1, trials, p }
            } else {
                MultiLimitLaw::MixedShiftedBinomial { shift: m + 1, trials }
            }
        }
    })
}

/// Limit given the reference points, with the per-cell probabilities from
/// the derivative-order ratios of `model` at each cell's critical points.
pub fn asymptotic_multi_given_y(y: &[f64], params: PcdParams, model: &DistributionModel) -> Result<MultiLimitLaw> {
    if y.is_empty() || y.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(MultiError::BadReference);
    }
    let m = y.len() as u32;
    let law = asymptotic_multi(m, params, model)?;
    if !matches!(law, MultiLimitLaw::MixedShiftedBinomial { .. } | MultiLimitLaw::ShiftedBinomial { .. }) {
        return Ok(law);
    }
    let (r, c) = (params.r(), params.c());
    let cccd = (r - 2.0).abs() < 1e-12 && (c - 0.5).abs() < 1e-12;
    let mut ps = Vec::with_capacity(y.len() - 1);
    for w in y.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        let ratio = |edge: f64, inner: f64, side: Side, base: f64| {
            CriticalPair { edge, inner, side, base }.detect(model).map(|d| d.ratio)
        };
        let p = if cccd {
            let mid = 0.5 * (lo + hi);
            ratio(lo, mid, Side::Right, 2.0)? * ratio(hi, mid, Side::Left, 2.0)?
        } else if c < 0.5 {
            ratio(lo, lo + (r - 1.0) * (hi - lo) / r, Side::Right, r)?
        } else {
            ratio(hi, lo + (hi - lo) / r, Side::Left, r)?
        };
        ps.push(p.clamp(0.0, 1.0));
    }
    Ok(MultiLimitLaw::ShiftedPoissonBinomial { shift: m + 1, ps })
}
