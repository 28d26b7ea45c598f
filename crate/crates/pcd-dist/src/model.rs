use std::f64::consts::PI;

use rand::distr::Open01;
use rand::Rng;
use serde::{Deserialize, Serialize};
use statrs::function::beta::{beta, beta_reg};

use crate::poly::PiecewisePolynomialPdf;
use crate::sine::{SineD, SineTail};
use crate::DistError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// A continuous law with bounded support and one-sided pdf derivatives.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum DistributionModel {
    Uniform { a: f64, b: f64 },
    /// `f(x) = x + 1/2` on (0, 1).
    LinearB,
    /// `f(x) = (π/2)|sin(2πx)|` on (0, 1).
    AbsSine,
    SineD(SineD),
    /// Beta(ν₁, ν₂) with ν₁, ν₂ ≥ 1.
    Beta { a: f64, b: f64 },
    /// `f(x) = 1/(π sqrt(x(1-x)))` on (0, 1).
    Arcsine,
    Piecewise(PiecewisePolynomialPdf),
    /// `base` conditioned on `(lo, hi)`.
    Truncated { base: Box<DistributionModel>, lo: f64, hi: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum NamedExample {
    Uniform,
    LinearB,
    AbsSineC,
    SineD { r: f64, tail: SineTail },
    Beta { a: f64, b: f64 },
    ArcsineF,
}

pub fn uniform_model(a: f64, b: f64) -> Result<DistributionModel, DistError> {
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(DistError::BadSupport(a, b));
    }
    Ok(DistributionModel::Uniform { a, b })
}

pub fn named_example_model(name: NamedExample) -> Result<DistributionModel, DistError> {
    Ok(match name {
        NamedExample::Uniform => DistributionModel::Uniform { a: 0.0, b: 1.0 },
        NamedExample::LinearB => DistributionModel::LinearB,
        NamedExample::AbsSineC => DistributionModel::AbsSine,
        NamedExample::SineD { r, tail } => DistributionModel::SineD(SineD::new(r, tail)?),
        NamedExample::Beta { a, b } => {
            if !(a >= 1.0 && b >= 1.0) {
                return Err(DistError::BadParameter(format!("beta needs a, b >= 1, got ({a}, {b})")));
            }
            DistributionModel::Beta { a, b }
        }
        NamedExample::ArcsineF => DistributionModel::Arcsine,
    })
}

fn truncated_mass(base: &DistributionModel, lo: f64, hi: f64) -> f64 {
    base.cdf(hi) - base.cdf(lo)
}

fn falling(a: f64, i: usize) -> f64 {
    (0..i).fold(1.0, |acc, j| acc * (a - j as f64))
}

fn binom(k: usize, i: usize) -> f64 {
    (0..i).fold(1.0, |acc, j| acc * (k - j) as f64 / (j + 1) as f64)
}

/// `k`-th derivative of `x^α (1-x)^β / norm`, including one-sided limits at 0
/// and 1 (which may be infinite).
fn power_kernel_derivative(alpha: f64, beta_: f64, norm: f64, k: usize, x: f64) -> f64 {
    let mut finite = 0.0;
    // most singular term: (exponent, sign)
    let mut singular: Option<(f64, f64)> = None;
    for i in 0..=k {
        let ca = falling(alpha, i);
        let cb = falling(beta_, k - i) * if (k - i) % 2 == 1 { -1.0 } else { 1.0 };
        let coef = binom(k, i) * ca * cb;
        if coef == 0.0 {
            continue;
        }
        let ea = alpha - i as f64;
        let eb = beta_ - (k - i) as f64;
        // at an edge the factor belonging to the other edge tends to 1
        let e_edge = if x == 0.0 {
            ea
        } else if x == 1.0 {
            eb
        } else {
            finite += coef * x.powf(ea) * (1.0 - x).powf(eb);
            continue;
        };
        if e_edge > 0.0 {
            continue;
        }
        if e_edge == 0.0 {
            finite += coef;
            continue;
        }
        let sign = coef.signum();
        match singular {
            Some((e, _)) if e <= e_edge => {}
            _ => singular = Some((e_edge, sign)),
        }
    }
    match singular {
        Some((_, s)) => s * f64::INFINITY,
        None => finite / norm,
    }
}

impl DistributionModel {
    pub fn support(&self) -> (f64, f64) {
        match self {
            DistributionModel::Uniform { a, b } => (*a, *b),
            DistributionModel::Piecewise(p) => p.support(),
            DistributionModel::Truncated { lo, hi, .. } => (*lo, *hi),
            _ => (0.0, 1.0),
        }
    }

    pub fn name(&self) -> String {
        match self {
            DistributionModel::Uniform { a, b } => format!("uniform({a},{b})"),
            DistributionModel::LinearB => "linear-b".into(),
            DistributionModel::AbsSine => "abs-sine-c".into(),
            DistributionModel::SineD(s) => format!("sine-d(r={},{:?})", s.r(), s.tail()),
            DistributionModel::Beta { a, b } => format!("beta({a},{b})"),
            DistributionModel::Arcsine => "arcsine-f".into(),
            DistributionModel::Piecewise(_) => "piecewise-polynomial".into(),
            DistributionModel::Truncated { base, lo, hi } => format!("{}|({lo},{hi})", base.name()),
        }
    }

    /// The law conditioned on `(lo, hi)` intersected with the support.
    /// Uniform laws stay uniform.
    pub fn truncate(&self, lo: f64, hi: f64) -> Result<DistributionModel, DistError> {
        let (a, b) = self.support();
        let (lo, hi) = (lo.max(a), hi.min(b));
        if !(lo < hi) {
            return Err(DistError::BadSupport(lo, hi));
        }
        if (lo, hi) == (a, b) {
            return Ok(self.clone());
        }
        Ok(match self {
            DistributionModel::Uniform { .. } => DistributionModel::Uniform { a: lo, b: hi },
            DistributionModel::Truncated { base, .. } => base.truncate(lo, hi)?,
            _ => {
                if !(truncated_mass(self, lo, hi) > 0.0) {
                    return Err(DistError::BadParameter(format!("no mass on ({lo}, {hi})")));
                }
                DistributionModel::Truncated { base: Box::new(self.clone()), lo, hi }
            }
        })
    }

    pub fn is_uniform(&self) -> bool {
        matches!(self, DistributionModel::Uniform { .. })
    }

    pub fn pdf(&self, x: f64) -> f64 {
        let (lo, hi) = self.support();
        if !(x > lo && x < hi) {
            return 0.0;
        }
        match self {
            DistributionModel::Uniform { a, b } => 1.0 / (b - a),
            DistributionModel::LinearB => x + 0.5,
            DistributionModel::AbsSine => PI / 2.0 * (2.0 * PI * x).sin().abs(),
            DistributionModel::SineD(s) => s.pdf(x),
            DistributionModel::Beta { a, b } => {
                x.powf(a - 1.0) * (1.0 - x).powf(b - 1.0) / beta(*a, *b)
            }
            DistributionModel::Arcsine => 1.0 / (PI * (x * (1.0 - x)).sqrt()),
            DistributionModel::Piecewise(p) => p.pdf(x),
            DistributionModel::Truncated { base, lo, hi } => base.pdf(x) / truncated_mass(base, *lo, *hi),
        }
    }

    pub fn cdf(&self, x: f64) -> f64 {
        let (lo, hi) = self.support();
        if x <= lo {
            return 0.0;
        }
        if x >= hi {
            return 1.0;
        }
        match self {
            DistributionModel::Uniform { a, b } => (x - a) / (b - a),
            DistributionModel::LinearB => 0.5 * x * (x + 1.0),
            DistributionModel::AbsSine => {
                if x <= 0.5 {
                    (1.0 - (2.0 * PI * x).cos()) / 4.0
                } else {
                    0.5 + (1.0 + (2.0 * PI * x).cos()) / 4.0
                }
            }
            DistributionModel::SineD(s) => s.cdf(x),
            DistributionModel::Beta { a, b } => beta_reg(*a, *b, x),
            DistributionModel::Arcsine => 2.0 / PI * x.sqrt().asin(),
            DistributionModel::Piecewise(p) => p.cdf(x),
            DistributionModel::Truncated { base, lo, hi } => {
                ((base.cdf(x) - base.cdf(*lo)) / truncated_mass(base, *lo, *hi)).clamp(0.0, 1.0)
            }
        }
    }

    pub fn quantile(&self, u: f64) -> f64 {
        let (lo, hi) = self.support();
        if u <= 0.0 {
            return lo;
        }
        if u >= 1.0 {
            return hi;
        }
        match self {
            DistributionModel::Uniform { a, b } => a + u * (b - a),
            DistributionModel::LinearB => 2.0 * u / (0.5 + (0.25 + 2.0 * u).sqrt()),
            DistributionModel::AbsSine => {
                // half-angle forms stay accurate where the density vanishes
                let v = if u <= 0.5 { u } else { 1.0 - u };
                let x = if v <= 0.25 {
                    (2.0 * v).sqrt().asin() / PI
                } else {
                    0.5 - (1.0 - 2.0 * v).sqrt().asin() / PI
                };
                if u <= 0.5 {
                    x
                } else {
                    1.0 - x
                }
            }
            DistributionModel::SineD(s) => s.quantile(u),
            DistributionModel::Beta { .. } => self.newton_quantile(u),
            DistributionModel::Arcsine => (PI * u / 2.0).sin().powi(2),
            DistributionModel::Piecewise(p) => p.quantile(u),
            DistributionModel::Truncated { base, lo, hi } => {
                let f_lo = base.cdf(*lo);
                base.quantile(f_lo + u * truncated_mass(base, *lo, *hi)).clamp(*lo, *hi)
            }
        }
    }

    /// Newton on the cdf, falling back to bisection when a step leaves the bracket.
    fn newton_quantile(&self, u: f64) -> f64 {
        let (mut lo, mut hi) = self.support();
        let mut x = 0.5 * (lo + hi);
        for _ in 0..200 {
            let g = self.cdf(x) - u;
            if g.abs() <= 2.0 * f64::EPSILON * u {
                return x;
            }
            if g > 0.0 {
                hi = x;
            } else {
                lo = x;
            }
            let d = self.pdf(x);
            let step = if d > 0.0 { x - g / d } else { f64::NAN };
            let next = if step > lo && step < hi { step } else { 0.5 * (lo + hi) };
            if (next - x).abs() <= 1e-15 * x.abs().max(1e-300) || hi - lo <= 1e-15 * x.abs() {
                return next;
            }
            x = next;
        }
        x
    }

    /// One-sided limit of the `k`-th derivative of the pdf at `x`.
    /// Returns `±INFINITY` where that limit diverges.
    pub fn derivative(&self, k: usize, x: f64, side: Side) -> Result<f64, DistError> {
        let right = side == Side::Right;
        let (lo, hi) = self.support();
        if x < lo || x > hi || (x == lo && !right) || (x == hi && right) {
            return Err(DistError::NoDerivative(k));
        }
        Ok(match self {
            DistributionModel::Uniform { a, b } => {
                if k == 0 {
                    1.0 / (b - a)
                } else {
                    0.0
                }
            }
            DistributionModel::LinearB => match k {
                0 => x + 0.5,
                1 => 1.0,
                _ => 0.0,
            },
            DistributionModel::AbsSine => {
                let sign = if x < 0.5 || (x == 0.5 && !right) { 1.0 } else { -1.0 };
                let w = 2.0 * PI;
                sign * PI / 2.0 * w.powi(k as i32) * (w * x + k as f64 * PI / 2.0).sin()
            }
            DistributionModel::SineD(s) => s.derivative(k, x, right).ok_or(DistError::NoDerivative(k))?,
            DistributionModel::Beta { a, b } => power_kernel_derivative(a - 1.0, b - 1.0, beta(*a, *b), k, x),
            DistributionModel::Arcsine => power_kernel_derivative(-0.5, -0.5, PI, k, x),
            DistributionModel::Piecewise(p) => p.derivative(k, x, right).ok_or(DistError::NoDerivative(k))?,
            DistributionModel::Truncated { base, lo, hi } => base.derivative(k, x, side)? / truncated_mass(base, *lo, *hi),
        })
    }

    /// True when the `k`-th derivative diverges at `x` from `side`.
    pub fn unbounded(&self, k: usize, x: f64, side: Side) -> bool {
        self.derivative(k, x, side).map_or(false, |v| v.is_infinite())
    }

    /// Draw from the law; `u` is taken in the open unit interval so the
    /// support endpoints are never produced.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match self {
            DistributionModel::Beta { a, b } => {
                let d = rand_distr::Beta::new(*a, *b).expect("validated parameters");
                loop {
                    let x: f64 = rng.sample(d);
                    if x > 0.0 && x < 1.0 {
                        return x;
                    }
                }
            }
            _ => {
                let (lo, hi) = self.support();
                loop {
                    let u: f64 = rng.sample(Open01);
                    let x = self.quantile(u);
                    if x > lo && x < hi {
                        return x;
                    }
                }
            }
        }
    }
}

/// Finite-difference estimate of a one-sided derivative from points strictly
/// inside the support, for `k ≤ 2`.
pub fn numeric_derivative(model: &DistributionModel, k: usize, x: f64, side: Side, h: f64) -> Result<f64, DistError> {
    if k > 2 {
        return Err(DistError::NoDerivative(k));
    }
    let s = if side == Side::Right { h } else { -h };
    let f1 = model.pdf(x + s);
    let f2 = model.pdf(x + 2.0 * s);
    let f3 = model.pdf(x + 3.0 * s);
    // quadratic through x+s, x+2s, x+3s evaluated at x
    Ok(match k {
        0 => 3.0 * f1 - 3.0 * f2 + f3,
        1 => (-5.0 * f1 + 8.0 * f2 - 3.0 * f3) / (2.0 * s),
        _ => (f1 - 2.0 * f2 + f3) / (s * s),
    })
}
