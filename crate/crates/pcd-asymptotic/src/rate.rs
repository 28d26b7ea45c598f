//! Rate constants of the approach to the limit at the critical centralities.

use pcd_dist::{DistributionModel, Side};
use serde::{Deserialize, Serialize};
use statrs::function::gamma::gamma;

use crate::{left_pair, rate_exponent, right_pair, AsymptoticError, AsymptoticRegime, AsymptoticResult, Result};

/// `κ₁` (left) or `κ₂` (right) with its three components, evaluated at `n`
/// since the components carry powers of `n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RateConstant {
    pub side: Side,
    pub n: u32,
    pub kappa: f64,
    /// `s₁, s₂, s₃` or `q₁, q₂, q₃`.
    pub components: [f64; 3],
    /// `p + κ n^{-(k+2)/(k+1)}`.
    pub predicted_pn: f64,
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

/// Limit, order and rate constant at `c = (r-1)/r` (left) or `c = 1/r`
/// (right).
pub fn rate_constants(model: &DistributionModel, r: f64, side: Side, n: u32) -> Result<AsymptoticResult> {
    let (pair, regime) = match side {
        Side::Left => (left_pair(model, r), AsymptoticRegime::GeneralLeft),
        Side::Right => (right_pair(model, r), AsymptoticRegime::GeneralRight),
    };
    let mut out = match side {
        Side::Left => crate::asymptotic_general_left(model, r)?,
        Side::Right => crate::asymptotic_general_right(model, r)?,
    };
    debug_assert_eq!(out.regime, regime);
    if out.delta_limit {
        return Err(AsymptoticError::RateUndefined("derivative diverges at a critical point".into()));
    }
    let k = out.order.expect("order is set for general limits");
    let p = out.limit_p;
    let fk = pair.detect(model)?.at_edge;
    let fk1 = model
        .derivative(k + 1, pair.edge, pair.side)
        .ok()
        .filter(|v| v.is_finite())
        .ok_or(AsymptoticError::OrderDetectionFailed { k_max: k + 1, at: (pair.edge, pair.inner) })?;
    let nf = n as f64;
    let kk = k as f64;
    let g = gamma((kk + 2.0) / (kk + 1.0));
    let (components, kappa) = match side {
        Side::Left => {
            let s1 = fk / (nf.powi(k as i32 + 1) * factorial(k));
            let s2 = fk1 / (nf * factorial(k + 1));
            let s3 = p / factorial(k + 1);
            let kappa = (s1 * s3.powf(1.0 / (kk + 1.0)) + s2 * g) / ((kk + 1.0) * s3.powf((kk + 2.0) / (kk + 1.0)));
            ([s1, s2, s3], kappa)
        }
        Side::Right => {
            let sign = |e: usize| if e % 2 == 0 { 1.0 } else { -1.0 };
            let q1 = sign(k + 1) * fk1 / (nf * factorial(k + 1));
            let q2 = sign(k) * fk / (nf.powi(k as i32 + 1) * factorial(k));
            let q3 = sign(k + 1) * p / factorial(k + 1);
            let kappa = (q1 * g + q2 * q3.powf(1.0 / (kk + 1.0))) / ((kk + 1.0) * q3.powf((kk + 2.0) / (kk + 1.0)));
            ([q1, q2, q3], kappa)
        }
    };
    if !kappa.is_finite() {
        return Err(AsymptoticError::RateUndefined(format!("components {components:?} give kappa = {kappa}")));
    }
    let exponent = rate_exponent(k);
    out.rate = Some(RateConstant { side, n, kappa, components, predicted_pn: p + kappa * nf.powf(-exponent) });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use pcd_dist::{named_example_model, NamedExample, SineTail};

    #[test]
    fn linear_b_left_by_hand() {
        let lb = named_example_model(NamedExample::LinearB).unwrap();
        let r = 1.5;
        let a = rate_constants(&lb, r, Side::Left, 100).unwrap();
        let p = r * r / (r * r + 3.0 * r - 2.0);
        let (s1, s2, s3) = (0.5 / 100.0, 1.0 / 100.0, p);
        let kappa = (s1 * s3 + s2) / (s3 * s3);
        let rc = a.rate.unwrap();
        assert!((rc.kappa - kappa).abs() < 1e-14);
        for (a, b) in rc.components.iter().zip([s1, s2, s3]) {
            assert!((a - b).abs() < 1e-15);
        }
        assert_eq!(a.rate_exponent, Some(2.0));
    }

    #[test]
    fn uniform_right_and_sine_exponent() {
        let u = named_example_model(NamedExample::Uniform).unwrap();
        let a = rate_constants(&u, 1.5, Side::Right, 50).unwrap();
        // q1 = 0, q2 = 1/n, q3 = -p
        let p = 0.6;
        let rc = a.rate.unwrap();
        assert!((rc.kappa - (1.0 / 50.0) * (-p) / (p * p)).abs() < 1e-15);
        let s = named_example_model(NamedExample::SineD { r: 1.5, tail: SineTail::GaussExp }).unwrap();
        let a = rate_constants(&s, 1.5, Side::Left, 50).unwrap();
        assert_eq!(a.rate_exponent, Some(1.5));
        assert!(a.rate.unwrap().kappa.is_finite());
    }

    #[test]
    fn undefined_cases() {
        let arc = named_example_model(NamedExample::ArcsineF).unwrap();
        assert!(matches!(rate_constants(&arc, 1.5, Side::Left, 10), Err(AsymptoticError::RateUndefined(_))));
        // p = 0 puts s3 = 0 in a denominator
        let b = named_example_model(NamedExample::AbsSineC).unwrap();
        assert!(matches!(rate_constants(&b, 1.5, Side::Left, 10), Err(AsymptoticError::RateUndefined(_))));
    }
}
