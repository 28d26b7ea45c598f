use serde::{Deserialize, Serialize};

use crate::CoreError;

/// Expansion parameter. `Infinite` makes every region the whole cell.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Expansion {
    Finite(f64),
    Infinite,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawParams", into = "RawParams")]
pub struct PcdParams {
    r: Expansion,
    c: f64,
}

impl PcdParams {
    /// `r = f64::INFINITY` is accepted and mapped to [`Expansion::Infinite`].
    pub fn new(r: f64, c: f64) -> Result<Self, CoreError> {
        if r.is_nan() || r < 1.0 {
            return Err(CoreError::BadExpansion(r));
        }
        if !(0.0..=1.0).contains(&c) {
            return Err(CoreError::BadCentrality(c));
        }
        let r = if r == f64::INFINITY {
            Expansion::Infinite
        } else {
            Expansion::Finite(r)
        };
        Ok(Self { r, c })
    }

    pub fn infinite(c: f64) -> Result<Self, CoreError> {
        Self::new(f64::INFINITY, c)
    }

    pub fn expansion(&self) -> Expansion {
        self.r
    }

    /// `r` as a float, `INFINITY` for the infinite variant.
    pub fn r(&self) -> f64 {
        match self.r {
            Expansion::Finite(r) => r,
            Expansion::Infinite => f64::INFINITY,
        }
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self.r, Expansion::Infinite)
    }
}

#[derive(Serialize, Deserialize)]
struct RawParams {
    r: f64,
    c: f64,
}

impl TryFrom<RawParams> for PcdParams {
    type Error = CoreError;
    fn try_from(raw: RawParams) -> Result<Self, Self::Error> {
        PcdParams::new(raw.r, raw.c)
    }
}

impl From<PcdParams> for RawParams {
    fn from(p: PcdParams) -> Self {
        RawParams { r: p.r(), c: p.c }
    }
}
