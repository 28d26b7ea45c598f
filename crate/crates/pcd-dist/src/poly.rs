use serde::{Deserialize, Serialize};

use crate::DistError;

/// Coefficients in ascending order: `c[0] + c[1] x + c[2] x^2 + ...`.
pub fn horner(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &a| acc * x + a)
}

pub fn derivative(c: &[f64]) -> Vec<f64> {
    c.iter().enumerate().skip(1).map(|(i, &a)| a * i as f64).collect()
}

pub fn nth_derivative(c: &[f64], k: usize) -> Vec<f64> {
    (0..k).fold(c.to_vec(), |acc, _| derivative(&acc))
}

/// Antiderivative vanishing at zero.
pub fn antiderivative(c: &[f64]) -> Vec<f64> {
    std::iter::once(0.0)
        .chain(c.iter().enumerate().map(|(i, &a)| a / (i + 1) as f64))
        .collect()
}

/// Density made of polynomial pieces in the absolute coordinate `x`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPiecewise", into = "RawPiecewise")]
pub struct PiecewisePolynomialPdf {
    breakpoints: Vec<f64>,
    pieces: Vec<Vec<f64>>,
    anti: Vec<Vec<f64>>,
    // cdf at each breakpoint
    cum: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct RawPiecewise {
    breakpoints: Vec<f64>,
    pieces: Vec<Vec<f64>>,
}

impl TryFrom<RawPiecewise> for PiecewisePolynomialPdf {
    type Error = DistError;
    fn try_from(raw: RawPiecewise) -> Result<Self, DistError> {
        PiecewisePolynomialPdf::new(raw.breakpoints, raw.pieces)
    }
}

impl From<PiecewisePolynomialPdf> for RawPiecewise {
    fn from(p: PiecewisePolynomialPdf) -> Self {
        RawPiecewise { breakpoints: p.breakpoints, pieces: p.pieces }
    }
}

const GRID_PER_PIECE: usize = 256;

impl PiecewisePolynomialPdf {
    pub fn new(breakpoints: Vec<f64>, pieces: Vec<Vec<f64>>) -> Result<Self, DistError> {
        if breakpoints.len() < 2 || pieces.len() + 1 != breakpoints.len() {
            return Err(DistError::BadPdf(format!(
                "{} breakpoints for {} pieces",
                breakpoints.len(),
                pieces.len()
            )));
        }
        if breakpoints.iter().any(|b| !b.is_finite()) || breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(DistError::BadPdf("breakpoints must be finite and increasing".into()));
        }
        for (j, p) in pieces.iter().enumerate() {
            let (lo, hi) = (breakpoints[j], breakpoints[j + 1]);
            for s in 0..=GRID_PER_PIECE {
                let x = lo + (hi - lo) * s as f64 / GRID_PER_PIECE as f64;
                if horner(p, x) < -1e-12 {
                    return Err(DistError::BadPdf(format!("negative density at {x}")));
                }
            }
        }
        let anti: Vec<Vec<f64>> = pieces.iter().map(|p| antiderivative(p)).collect();
        let mut cum = vec![0.0];
        for (j, a) in anti.iter().enumerate() {
            let mass = horner(a, breakpoints[j + 1]) - horner(a, breakpoints[j]);
            cum.push(cum[j] + mass);
        }
        let total = *cum.last().unwrap();
        if (total - 1.0).abs() > 1e-9 {
            return Err(DistError::BadPdf(format!("total mass {total}")));
        }
        Ok(Self { breakpoints, pieces, anti, cum })
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn pieces(&self) -> &[Vec<f64>] {
        &self.pieces
    }

    pub fn support(&self) -> (f64, f64) {
        (self.breakpoints[0], *self.breakpoints.last().unwrap())
    }

    /// Piece whose half-open span `[b_j, b_{j+1})` holds `x` (right side) or
    /// `(b_j, b_{j+1}]` (left side).
    fn piece_index(&self, x: f64, right: bool) -> Option<usize> {
        let b = &self.breakpoints;
        let last = b.len() - 1;
        if x < b[0] || x > b[last] || (right && x == b[last]) || (!right && x == b[0]) {
            return None;
        }
        let j = if right {
            b.partition_point(|&t| t <= x) - 1
        } else {
            b.partition_point(|&t| t < x) - 1
        };
        Some(j.min(self.pieces.len() - 1))
    }

    pub fn pdf(&self, x: f64) -> f64 {
        let (lo, hi) = self.support();
        if x <= lo || x >= hi {
            return 0.0;
        }
        self.piece_index(x, true).map_or(0.0, |j| horner(&self.pieces[j], x))
    }

    pub fn cdf(&self, x: f64) -> f64 {
        let (lo, hi) = self.support();
        if x <= lo {
            return 0.0;
        }
        if x >= hi {
            return 1.0;
        }
        let j = self.piece_index(x, true).unwrap();
        let a = &self.anti[j];
        (self.cum[j] + horner(a, x) - horner(a, self.breakpoints[j])).clamp(0.0, 1.0)
    }

    pub fn quantile(&self, u: f64) -> f64 {
        let (lo, hi) = self.support();
        if u <= 0.0 {
            return lo;
        }
        if u >= 1.0 {
            return hi;
        }
        let j = (self.cum.partition_point(|&c| c <= u) - 1).min(self.pieces.len() - 1);
        let (mut a, mut b) = (self.breakpoints[j], self.breakpoints[j + 1]);
        let target = u - self.cum[j];
        let anti = &self.anti[j];
        let base = horner(anti, a);
        let g = |x: f64| horner(anti, x) - base - target;
        // safeguarded Newton
        let mut x = a + (b - a) * (target / (self.cum[j + 1] - self.cum[j])).clamp(0.0, 1.0);
        for _ in 0..100 {
            let gx = g(x);
            if gx > 0.0 {
                b = x;
            } else {
                a = x;
            }
            let d = horner(&self.pieces[j], x);
            let step = if d > 0.0 { x - gx / d } else { f64::NAN };
            let next = if step > a && step < b { step } else { 0.5 * (a + b) };
            if (next - x).abs() <= 1e-15 * x.abs().max(1.0) || b - a <= 1e-15 * x.abs().max(1.0) {
                return next;
            }
            x = next;
        }
        x
    }

    /// One-sided `k`-th derivative of the density.
    pub fn derivative(&self, k: usize, x: f64, right: bool) -> Option<f64> {
        let j = self.piece_index(x, right)?;
        Some(horner(&nth_derivative(&self.pieces[j], k), x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_helpers() {
        let c = [1.0, 2.0, 3.0];
        assert_eq!(horner(&c, 2.0), 17.0);
        assert_eq!(derivative(&c), vec![2.0, 6.0]);
        assert_eq!(nth_derivative(&c, 2), vec![6.0]);
        assert_eq!(antiderivative(&c), vec![0.0, 1.0, 1.0, 1.0]);
    }

    #[test]
    fn linear_density() {
        let p = PiecewisePolynomialPdf::new(vec![0.0, 1.0], vec![vec![0.5, 1.0]]).unwrap();
        assert_eq!(p.pdf(0.5), 1.0);
        assert!((p.cdf(0.5) - 0.375).abs() < 1e-15);
        for &u in &[1e-9, 0.1, 0.375, 0.9, 1.0 - 1e-9] {
            assert!((p.cdf(p.quantile(u)) - u).abs() < 1e-14);
        }
        assert_eq!(p.derivative(1, 0.0, true), Some(1.0));
        assert_eq!(p.derivative(0, 0.0, false), None);
    }

    #[test]
    fn two_pieces_and_one_sided_values() {
        // step density: 0.5 on (0, 1), 1.5 on (1, 4/3)
        let p = PiecewisePolynomialPdf::new(vec![0.0, 1.0, 4.0 / 3.0], vec![vec![0.5], vec![1.5]]).unwrap();
        assert_eq!(p.derivative(0, 1.0, false), Some(0.5));
        assert_eq!(p.derivative(0, 1.0, true), Some(1.5));
        assert!((p.quantile(0.75) - (1.0 + 0.25 / 1.5)).abs() < 1e-14);
    }

    #[test]
    fn rejects_invalid() {
        assert!(PiecewisePolynomialPdf::new(vec![0.0, 1.0], vec![vec![0.9]]).is_err());
        assert!(PiecewisePolynomialPdf::new(vec![0.0, 1.0], vec![vec![2.0, -2.0]]).is_ok());
        assert!(PiecewisePolynomialPdf::new(vec![0.0, 1.0], vec![vec![-0.5, 3.0]]).is_err());
        assert!(PiecewisePolynomialPdf::new(vec![1.0, 0.0], vec![vec![1.0]]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"breakpoints":[0,1],"pieces":[[0.5,1.0]]}"#;
        let p: PiecewisePolynomialPdf = serde_json::from_str(text).unwrap();
        assert_eq!(p.pieces(), &[vec![0.5, 1.0]]);
        let back = serde_json::to_string(&p).unwrap();
        assert_eq!(back, r#"{"breakpoints":[0.0,1.0],"pieces":[[0.5,1.0]]}"#);
        assert!(serde_json::from_str::<PiecewisePolynomialPdf>(r#"{"breakpoints":[0,1],"pieces":[[3.0]]}"#).is_err());
    }
}
