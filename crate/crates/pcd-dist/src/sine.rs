use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::poly::{derivative, horner};
use crate::DistError;

/// Density on `((r-1)/r, 1)` carrying the second half of the mass.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SineTail {
    /// `g = r/2`; nonzero at the junction, so the order there is 0.
    Constant,
    /// `g(t) = a t e^{-λt}` with `t = x - (r-1)/r`.
    LinearExp,
    /// `g(t) = a t e^{-λt²}`.
    GaussExp,
}

/// `f(x) = πr/(4(r-1)) sin(πrx/(r-1))` on `(0, (r-1)/r]` followed by a tail.
/// The non-constant tails have `g(0) = 0` and `g'(0) = f'(0⁺)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSine", into = "RawSine")]
pub struct SineD {
    r: f64,
    tail: SineTail,
    a: f64,
    lambda: f64,
}

#[derive(Serialize, Deserialize)]
struct RawSine {
    r: f64,
    tail: SineTail,
}

impl TryFrom<RawSine> for SineD {
    type Error = DistError;
    fn try_from(raw: RawSine) -> Result<Self, DistError> {
        SineD::new(raw.r, raw.tail)
    }
}

impl From<SineD> for RawSine {
    fn from(s: SineD) -> Self {
        RawSine { r: s.r, tail: s.tail }
    }
}

fn bisect(mut lo: f64, mut hi: f64, f: impl Fn(f64) -> f64) -> f64 {
    // f(lo) > 0 > f(hi)
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

impl SineD {
    pub fn new(r: f64, tail: SineTail) -> Result<Self, DistError> {
        if !(r > 1.0 && r < 2.0) {
            return Err(DistError::BadParameter(format!("sine-d needs r in (1, 2), got {r}")));
        }
        let a = (PI * r).powi(2) / (4.0 * (r - 1.0).powi(2));
        let len = 1.0 / r;
        let lambda = match tail {
            SineTail::Constant => 0.0,
            SineTail::LinearExp => bisect(1e-12, 1e4, |l| {
                a * (1.0 - (-l * len).exp() * (1.0 + l * len)) / (l * l) - 0.5
            }),
            SineTail::GaussExp => bisect(1e-12, 1e6, |l| {
                a * (1.0 - (-l * len * len).exp()) / (2.0 * l) - 0.5
            }),
        };
        Ok(Self { r, tail, a, lambda })
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn tail(&self) -> SineTail {
        self.tail
    }

    /// Junction point `(r-1)/r`.
    pub fn junction(&self) -> f64 {
        (self.r - 1.0) / self.r
    }

    fn amp(&self) -> f64 {
        PI * self.r / (4.0 * (self.r - 1.0))
    }

    fn freq(&self) -> f64 {
        PI * self.r / (self.r - 1.0)
    }

    fn g(&self, t: f64) -> f64 {
        match self.tail {
            SineTail::Constant => self.r / 2.0,
            SineTail::LinearExp => self.a * t * (-self.lambda * t).exp(),
            SineTail::GaussExp => self.a * t * (-self.lambda * t * t).exp(),
        }
    }

    fn g_cum(&self, t: f64) -> f64 {
        let l = self.lambda;
        match self.tail {
            SineTail::Constant => self.r * t / 2.0,
            SineTail::LinearExp => self.a * (1.0 - (-l * t).exp() * (1.0 + l * t)) / (l * l),
            SineTail::GaussExp => self.a * (1.0 - (-l * t * t).exp()) / (2.0 * l),
        }
    }

    fn g_derivative(&self, k: usize, t: f64) -> f64 {
        let l = self.lambda;
        match self.tail {
            SineTail::Constant => {
                if k == 0 {
                    self.r / 2.0
                } else {
                    0.0
                }
            }
            SineTail::LinearExp => {
                let k = k as i32;
                let lead = (-l).powi(k) * t;
                let rest = if k > 0 { k as f64 * (-l).powi(k - 1) } else { 0.0 };
                self.a * (lead + rest) * (-l * t).exp()
            }
            SineTail::GaussExp => {
                // g^(k) = P_k(t) e^{-λt²}, P_{k+1} = P_k' - 2λ t P_k
                let mut p = vec![0.0, self.a];
                for _ in 0..k {
                    let mut next = derivative(&p);
                    next.resize(p.len() + 1, 0.0);
                    for (i, &c) in p.iter().enumerate() {
                        next[i + 1] -= 2.0 * l * c;
                    }
                    p = next;
                }
                horner(&p, t) * (-l * t * t).exp()
            }
        }
    }

    pub fn pdf(&self, x: f64) -> f64 {
        let m = self.junction();
        if x <= 0.0 || x >= 1.0 {
            0.0
        } else if x <= m {
            self.amp() * (self.freq() * x).sin()
        } else {
            self.g(x - m)
        }
    }

    pub fn cdf(&self, x: f64) -> f64 {
        let m = self.junction();
        if x <= 0.0 {
            0.0
        } else if x >= 1.0 {
            1.0
        } else if x <= m {
            (1.0 - (self.freq() * x).cos()) / 4.0
        } else {
            (0.5 + self.g_cum(x - m)).min(1.0)
        }
    }

    pub fn quantile(&self, u: f64) -> f64 {
        if u <= 0.0 {
            return 0.0;
        }
        if u >= 1.0 {
            return 1.0;
        }
        if u <= 0.25 {
            return 2.0 * (2.0 * u).sqrt().asin() / self.freq();
        }
        if u <= 0.5 {
            return (PI - 2.0 * (1.0 - 2.0 * u).sqrt().asin()) / self.freq();
        }
        let m = self.junction();
        let target = u - 0.5;
        if self.tail == SineTail::Constant {
            return m + 2.0 * target / self.r;
        }
        let (mut lo, mut hi) = (0.0, 1.0 / self.r);
        let mut t = 0.5 * hi;
        for _ in 0..100 {
            let h = self.g_cum(t) - target;
            if h > 0.0 {
                hi = t;
            } else {
                lo = t;
            }
            let d = self.g(t);
            let step = if d > 0.0 { t - h / d } else { f64::NAN };
            let next = if step > lo && step < hi { step } else { 0.5 * (lo + hi) };
            if (next - t).abs() <= 1e-16 || hi - lo <= 1e-16 {
                t = next;
                break;
            }
            t = next;
        }
        m + t
    }

    pub fn derivative(&self, k: usize, x: f64, right: bool) -> Option<f64> {
        let m = self.junction();
        if x < 0.0 || x > 1.0 || (x == 0.0 && !right) || (x == 1.0 && right) {
            return None;
        }
        if x < m || (x == m && !right) {
            let w = self.freq();
            Some(self.amp() * w.powi(k as i32) * (w * x + k as f64 * PI / 2.0).sin())
        } else {
            Some(self.g_derivative(k, x - m))
        }
    }
}
