use std::io::Write;

use pcd_core::PcdParams;
use pcd_dist::{uniform_model, DistributionModel};
use pcd_exact::{p_exact_full, p_numeric_oracle, QuadSpec};
use pcd_general::p_numeric_general;
use serde::{Deserialize, Serialize};

use crate::config::McConfig;
use crate::io::{expansion_list, fmt17};
use crate::mc::mc_estimate_p;
use crate::Result;

fn default_models() -> Vec<DistributionModel> {
    vec![DistributionModel::Uniform { a: 0.0, b: 1.0 }]
}
fn default_reps() -> u64 {
    100_000
}
fn default_z() -> f64 {
    3.0
}
fn default_tol() -> f64 {
    1e-7
}

/// Grid of `(model, n, r, c)` points to check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub ns: Vec<u32>,
    #[serde(deserialize_with = "expansion_list")]
    pub rs: Vec<f64>,
    pub cs: Vec<f64>,
    #[serde(default = "default_models")]
    pub models: Vec<DistributionModel>,
    #[serde(default = "default_reps")]
    pub replicates: u64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_z")]
    pub z_max: f64,
    /// Allowed gap between the closed form and the quadrature oracle.
    #[serde(default = "default_tol")]
    pub numeric_tol: f64,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            ns: vec![2, 3, 5, 8],
            rs: vec![1.0, 1.5, 2.0, 3.0],
            cs: vec![0.1, 0.3, 0.5, 0.7],
            models: default_models(),
            replicates: default_reps(),
            seed: 0,
            z_max: default_z(),
            numeric_tol: default_tol(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyRow {
    pub model: String,
    pub n: u32,
    pub r: f64,
    pub c: f64,
    /// Closed form for uniform data, general-F quadrature otherwise.
    pub exact: f64,
    /// Independent quadrature value, uniform data only.
    pub numeric: Option<f64>,
    pub mc: f64,
    pub mc_stderr: f64,
    pub z: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub rows: Vec<VerifyRow>,
    pub max_abs_z: f64,
    pub failures: usize,
}

impl VerificationReport {
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["model", "n", "r", "c", "exact", "numeric", "mc", "mc_stderr", "z", "pass"])?;
        for row in &self.rows {
            out.write_record([
                row.model.clone(),
                row.n.to_string(),
                fmt17(row.r),
                fmt17(row.c),
                fmt17(row.exact),
                row.numeric.map(fmt17).unwrap_or_default(),
                fmt17(row.mc),
                fmt17(row.mc_stderr),
                fmt17(row.z),
                row.pass.to_string(),
            ])?;
        }
        out.flush()?;
        Ok(())
    }
}

/// z-score of an estimate against `p`, using the standard error implied by
/// `p` so that degenerate values are handled: when `p` is 0 or 1 the score
/// is 0 for an exact match and infinite otherwise.
pub fn z_score(p_hat: f64, p: f64, replicates: u64) -> f64 {
    let se = (p * (1.0 - p) / replicates as f64).sqrt();
    if se > 0.0 {
        (p_hat - p) / se
    } else if p_hat == p {
        0.0
    } else {
        f64::INFINITY
    }
}

/// Closed form (or general-F quadrature), quadrature oracle and simulation at
/// every grid point.
pub fn verify_grid(spec: &GridSpec) -> Result<VerificationReport> {
    let mut rows = Vec::new();
    let mut point = 0u64;
    for model in &spec.models {
        let (lo, hi) = model.support();
        let uniform = model.is_uniform();
        for &n in &spec.ns {
            for &r in &spec.rs {
                for &c in &spec.cs {
                    let params = PcdParams::new(r, c)?;
                    // a single point is its own dominating set
                    let (exact, numeric) = if n < 2 {
                        (0.0, uniform.then_some(0.0))
                    } else if uniform {
                        let e = p_exact_full(n, params)?.value;
                        let q = if params.is_infinite() { e } else { p_numeric_oracle(n, params, QuadSpec::default())?.value };
                        (e, Some(q))
                    } else {
                        (p_numeric_general(model, params, n)?, None)
                    };
                    let seed = spec.seed.wrapping_add(point);
                    point += 1;
                    let x = if uniform { uniform_model(lo, hi)? } else { model.clone() };
                    let est = mc_estimate_p(&McConfig::single_cell(x, n as usize, params, spec.replicates, seed))?;
                    let z = z_score(est.p_hat, exact, spec.replicates);
                    let numeric_ok = numeric.map_or(true, |q| (q - exact).abs() <= spec.numeric_tol);
                    rows.push(VerifyRow {
                        model: model.name(),
                        n,
                        r,
                        c,
                        exact,
                        numeric,
                        mc: est.p_hat,
                        mc_stderr: est.stderr,
                        z,
                        pass: numeric_ok && z.abs() <= spec.z_max,
                    });
                }
            }
        }
    }
    let max_abs_z = rows.iter().map(|r| r.z.abs()).fold(0.0, f64::max);
    let failures = rows.iter().filter(|r| !r.pass).count();
    Ok(VerificationReport { rows, max_abs_z, failures })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degenerate_points() {
        let spec = GridSpec { ns: vec![1, 4], rs: vec![1.5, f64::INFINITY], cs: vec![0.0, 1.0], replicates: 2000, ..Default::default() };
        let rep = verify_grid(&spec).unwrap();
        assert_eq!(rep.rows.len(), 8);
        assert!(rep.rows.iter().all(|r| r.exact == 0.0 && r.mc == 0.0 && r.pass));
        assert_eq!(rep.failures, 0);
    }

    #[test]
    fn grid_json_accepts_inf() {
        let spec: GridSpec = serde_json::from_str(r#"{"ns": [2], "rs": [2, "inf"], "cs": [0.5]}"#).unwrap();
        assert_eq!(spec.rs, vec![2.0, f64::INFINITY]);
        assert_eq!(spec.replicates, 100_000);
    }

    #[test]
    fn z_scores() {
        assert_eq!(z_score(0.0, 0.0, 10), 0.0);
        assert_eq!(z_score(0.1, 0.0, 10), f64::INFINITY);
        assert!((z_score(0.55, 0.5, 100) - 1.0).abs() < 1e-12);
    }
}
