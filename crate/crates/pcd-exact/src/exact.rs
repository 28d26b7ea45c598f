use pcd_core::PcdParams;
use serde::{Deserialize, Serialize};

use crate::formulas as f;
use crate::{ExactError, Result};

/// Which formula produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    /// `n = 1`: one vertex, so gamma is 1.
    SingleVertex,
    /// `c` is 0 or 1.
    EdgeCentrality,
    /// `r = infinity`: every region is the whole interval.
    InfiniteExpansion,
    Special2Half,
    RHalfUpper,
    RHalfLower,
    Nu1,
    Nu1Low,
    Nu2,
    Nu3,
    Nu4,
    Nu4Low,
    Pi1,
    Pi2,
    Pi3,
    Pi4,
    Theta1,
    Theta2,
    Theta3Low,
    Theta3High,
    Theta4,
}

impl Regime {
    pub fn label(self) -> &'static str {
        match self {
            Regime::SingleVertex => "n=1",
            Regime::EdgeCentrality => "c-edge",
            Regime::InfiniteExpansion => "r=inf",
            Regime::Special2Half => "r=2,c=1/2",
            Regime::RHalfUpper => "c=1/2,r>=2",
            Regime::RHalfLower => "c=1/2,1<=r<2",
            Regime::Nu1 => "nu1",
            Regime::Nu1Low => "nu1-low",
            Regime::Nu2 => "nu2",
            Regime::Nu3 => "nu3",
            Regime::Nu4 => "nu4",
            Regime::Nu4Low => "nu4-low",
            Regime::Pi1 => "pi1",
            Regime::Pi2 => "pi2",
            Regime::Pi3 => "pi3",
            Regime::Pi4 => "pi4",
            Regime::Theta1 => "theta1",
            Regime::Theta2 => "theta2",
            Regime::Theta3Low => "theta3-low",
            Regime::Theta3High => "theta3-high",
            Regime::Theta4 => "theta4",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExactProbability {
    pub value: f64,
    pub regime: Regime,
    pub n: u32,
}

impl ExactProbability {
    fn new(value: f64, regime: Regime, n: u32) -> Self {
        // rounding can leave values a few ulps outside [0, 1]
        Self { value: value.clamp(0.0, 1.0), regime, n }
    }
}

/// Boundary between the pi and theta families.
pub fn golden_centrality() -> f64 {
    (3.0 - 5f64.sqrt()) / 2.0
}

fn check_n(n: u32) -> Result<()> {
    if n == 0 {
        Err(ExactError::BadSampleSize { n, min: 1 })
    } else {
        Ok(())
    }
}

/// Maps `c` to the lower half. Both `c` and `1 - c` land on the same float,
/// so the mirror symmetry holds exactly. Returns whether `c` was above 1/2.
fn fold(c: f64) -> (f64, bool) {
    if c > 0.5 {
        (1.0 - c, true)
    } else {
        let upper = 1.0 - c;
        (1.0 - upper, false)
    }
}

pub fn p_exact_2_half(n: u32) -> Result<ExactProbability> {
    check_n(n)?;
    if n == 1 {
        return Ok(ExactProbability::new(0.0, Regime::SingleVertex, n));
    }
    Ok(ExactProbability::new(f::two_half(n), Regime::Special2Half, n))
}

pub fn p_exact_r2_c(n: u32, c: f64) -> Result<ExactProbability> {
    check_n(n)?;
    PcdParams::new(2.0, c)?;
    if n == 1 {
        return Ok(ExactProbability::new(0.0, Regime::SingleVertex, n));
    }
    if c == 0.0 || c == 1.0 {
        return Ok(ExactProbability::new(0.0, Regime::EdgeCentrality, n));
    }
    if c == 0.5 {
        return p_exact_2_half(n);
    }
    let (cl, upper) = fold(c);
    let (value, regime) = if cl <= 0.25 {
        (f::nu1_low(n, cl), if upper { Regime::Nu4Low } else { Regime::Nu1Low })
    } else if cl <= 1.0 / 3.0 {
        (f::nu1(n, cl), if upper { Regime::Nu4 } else { Regime::Nu1 })
    } else {
        (f::nu2(n, cl), if upper { Regime::Nu3 } else { Regime::Nu2 })
    };
    Ok(ExactProbability::new(value, regime, n))
}

/// `r` may be `f64::INFINITY`.
pub fn p_exact_r_half(n: u32, r: f64) -> Result<ExactProbability> {
    check_n(n)?;
    let params = PcdParams::new(r, 0.5)?;
    if n == 1 {
        return Ok(ExactProbability::new(0.0, Regime::SingleVertex, n));
    }
    if params.is_infinite() {
        return Ok(ExactProbability::new(0.0, Regime::InfiniteExpansion, n));
    }
    if r == 2.0 {
        return p_exact_2_half(n);
    }
    if r >= 2.0 {
        Ok(ExactProbability::new(f::pi1(n, r), Regime::RHalfUpper, n))
    } else {
        Ok(ExactProbability::new(f::r_half_lower(n, r), Regime::RHalfLower, n))
    }
}

pub fn p_exact_full(n: u32, params: PcdParams) -> Result<ExactProbability> {
    check_n(n)?;
    let c = params.c();
    if n == 1 {
        return Ok(ExactProbability::new(0.0, Regime::SingleVertex, n));
    }
    if c == 0.0 || c == 1.0 {
        return Ok(ExactProbability::new(0.0, Regime::EdgeCentrality, n));
    }
    if params.is_infinite() {
        return Ok(ExactProbability::new(0.0, Regime::InfiniteExpansion, n));
    }
    let r = params.r();
    if c == 0.5 {
        return p_exact_r_half(n, r);
    }
    let (c, _) = fold(c);
    if c == 0.0 {
        return Ok(ExactProbability::new(0.0, Regime::EdgeCentrality, n));
    }
    let pi_family = c > golden_centrality();
    let (value, regime) = if r >= 1.0 / c {
        (f::pi1(n, r), if pi_family { Regime::Pi1 } else { Regime::Theta1 })
    } else if pi_family {
        if r >= 1.0 / (1.0 - c) {
            (f::pi2(n, r, c), Regime::Pi2)
        } else if r >= (1.0 - c) / c {
            (f::pi3(n, r, c), Regime::Pi3)
        } else {
            (f::pi4(n, r, c), Regime::Pi4)
        }
    } else if r >= (1.0 - c) / c {
        (f::pi2(n, r, c), Regime::Theta2)
    } else if r >= 1.0 / (1.0 - c) {
        if f::theta3_is_high(r, c) {
            (f::theta3_high(n, r, c), Regime::Theta3High)
        } else {
            (f::theta3_low(n, r, c), Regime::Theta3Low)
        }
    } else {
        (f::pi4(n, r, c), Regime::Theta4)
    };
    Ok(ExactProbability::new(value, regime, n))
}

/// Convenience wrapper taking raw `(r, c)`.
pub fn p_exact(n: u32, r: f64, c: f64) -> Result<ExactProbability> {
    p_exact_full(n, PcdParams::new(r, c).map_err(ExactError::from)?)
}

/// Mean and variance of gamma on one interval: `1 + p` and `p(1 - p)`.
pub fn mean_variance(p: f64) -> (f64, f64) {
    (1.0 + p, p * (1.0 - p))
}
