use std::path::Path;

use pcd_dist::{named_example_model, DistributionModel, NamedExample};
use serde::{Deserialize, Deserializer};

use crate::{HarnessError, Result};

/// 17 significant digits, enough to round-trip any `f64`.
pub fn fmt17(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "nan".into()
    } else if x > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

/// Accepts a float or one of `inf`, `infinity`, `∞`.
pub fn parse_r(s: &str) -> std::result::Result<f64, String> {
    match s.trim().to_ascii_lowercase().as_str() {
        "inf" | "infinity" | "∞" => Ok(f64::INFINITY),
        t => t.parse::<f64>().map_err(|e| format!("{s:?}: {e}")),
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum NumOrText {
    Num(f64),
    Text(String),
}

/// Deserializes a list of expansion values, allowing `"inf"` entries.
pub fn expansion_list<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<f64>, D::Error> {
    let raw = Vec::<NumOrText>::deserialize(d)?;
    raw.into_iter()
        .map(|v| match v {
            NumOrText::Num(x) => Ok(x),
            NumOrText::Text(s) => parse_r(&s).map_err(serde::de::Error::custom),
        })
        .collect()
}

/// A point file is either a JSON array or one coordinate per line
/// (blank lines and `#` comments skipped).
pub fn parse_points(text: &str) -> Result<Vec<f64>> {
    let t = text.trim_start();
    if t.starts_with('[') {
        return Ok(serde_json::from_str(t)?);
    }
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            l.parse::<f64>().map_err(|e| HarnessError::Parse { what: "point".into(), detail: format!("{l:?}: {e}") })
        })
        .collect()
}

pub fn read_points(path: &Path) -> Result<Vec<f64>> {
    parse_points(&std::fs::read_to_string(path)?)
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ModelFile {
    Model(DistributionModel),
    Named(NamedExample),
}

/// A model is given either in full (`{"kind": ...}`) or by example name
/// (`{"name": ...}`).
pub fn parse_model(text: &str) -> Result<DistributionModel> {
    match serde_json::from_str::<ModelFile>(text) {
        Ok(ModelFile::Model(m)) => Ok(m),
        Ok(ModelFile::Named(n)) => Ok(named_example_model(n)?),
        Err(e) => Err(HarnessError::Parse { what: "model".into(), detail: e.to_string() }),
    }
}

pub fn read_model(path: &Path) -> Result<DistributionModel> {
    parse_model(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn points_both_formats() {
        assert_eq!(parse_points("[0.1, 0.5]").unwrap(), vec![0.1, 0.5]);
        assert_eq!(parse_points("# x\n0.1\n\n 0.5 \n").unwrap(), vec![0.1, 0.5]);
        assert!(parse_points("0.1\nabc").is_err());
    }

    #[test]
    fn round_trip_formatting() {
        for x in [0.1, 1.0 / 3.0, 4.0 / 9.0 - 16.0 / 9.0 / 1024.0, 1e-300, 0.0] {
            assert_eq!(fmt17(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(fmt17(f64::INFINITY), "inf");
        assert_eq!(parse_r("inf").unwrap(), f64::INFINITY);
        assert_eq!(parse_r("1.5").unwrap(), 1.5);
    }

    #[test]
    fn models_full_or_named() {
        assert_eq!(parse_model(r#"{"kind": "uniform", "a": 0, "b": 2}"#).unwrap(), DistributionModel::Uniform { a: 0.0, b: 2.0 });
        assert_eq!(parse_model(r#"{"name": "linear-b"}"#).unwrap(), DistributionModel::LinearB);
        assert_eq!(parse_model(r#"{"name": "beta", "a": 2, "b": 3}"#).unwrap(), DistributionModel::Beta { a: 2.0, b: 3.0 });
        assert!(parse_model(r#"{"name": "cauchy"}"#).is_err());
    }
}
