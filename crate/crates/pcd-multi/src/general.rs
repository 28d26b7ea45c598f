//! The law of γ for general `X` and `Y` laws, by conditioning on the
//! reference points.

use gauss_quad::GaussLegendre;
use pcd_core::PcdParams;
use pcd_dist::DistributionModel;
use pcd_exact::{p_exact_full, QuadSpec};
use pcd_general::p_numeric_general_with;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use statrs::function::factorial::binomial;

use crate::pmf::{check_sizes, pmf_from_cells, uniform_p_table, GammaPmf};
use crate::{MultiError, Result};

/// Largest `m` integrated by nested quadrature; beyond it `Y` is sampled.
pub const MAX_QUADRATURE_M: u32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneralMultiSpec {
    /// Gauss-Legendre nodes per reference point.
    pub nodes: usize,
    /// Tolerance for each per-cell probability.
    pub abs_tol: f64,
    /// Draws of `Y` when `m` is above [`MAX_QUADRATURE_M`].
    pub mc_reps: u32,
    pub seed: u64,
}

impl Default for GeneralMultiSpec {
    fn default() -> Self {
        Self { nodes: 12, abs_tol: 1e-9, mc_reps: 2000, seed: 0x5eed }
    }
}

impl GeneralMultiSpec {
    fn quad(&self) -> QuadSpec {
        QuadSpec { abs_tol: self.abs_tol, ..QuadSpec::default() }
    }
}

/// Cell probabilities under `X` for the cells cut by `y`.
fn cell_masses(x: &DistributionModel, y: &[f64]) -> Vec<f64> {
    let mut cdf: Vec<f64> = Vec::with_capacity(y.len() + 2);
    cdf.push(0.0);
    cdf.extend(y.iter().map(|&t| x.cdf(t)));
    cdf.push(1.0);
    cdf.windows(2).map(|w| (w[1] - w[0]).max(0.0)).collect()
}

/// `P(γ = 2)` for `k = 0..=n` points of `X` conditioned on `(lo, hi)`.
///
/// The table enters the law of γ only through the chance of two or more
/// points in the cell, at most `min(1, C(n,2) mass²)`, so the quadrature
/// tolerance is `spec.abs_tol` divided by that weight (capped at 1e-3). Thin
/// cells would otherwise be asked for digits their conditional cdf, a
/// difference of nearby cdf values, does not have.
pub fn cell_p_table(x: &DistributionModel, lo: f64, hi: f64, n: u32, params: PcdParams, spec: QuadSpec) -> Result<Vec<f64>> {
    let mass = x.cdf(hi) - x.cdf(lo);
    if !(mass > 0.0) {
        return Ok(vec![0.0; n as usize + 1]);
    }
    let cond = x.truncate(lo, hi)?;
    if cond.is_uniform() && cond.support() == (lo, hi) {
        return uniform_p_table(n, params);
    }
    let nf = n as f64;
    let weight = (0.5 * nf * (nf - 1.0) * mass * mass).min(1.0);
    let tol = (spec.abs_tol / weight).min(1e-3).max(spec.abs_tol);
    let spec = QuadSpec { abs_tol: tol, ..spec };
    (0..=n)
        .map(|k| if k < 2 { Ok(0.0) } else { Ok(p_numeric_general_with(&cond, params, k, (lo, hi), spec)?) })
        .collect()
}

fn check_reference(y: &[f64]) -> Result<()> {
    if y.is_empty() || y.iter().any(|t| !t.is_finite()) || y.windows(2).any(|w| w[0] >= w[1]) {
        return Err(MultiError::BadReference);
    }
    Ok(())
}

/// Law of γ given the sorted reference points `y`.
pub fn pmf_given_y(x: &DistributionModel, y: &[f64], n: u32, params: PcdParams, spec: QuadSpec) -> Result<GammaPmf> {
    check_reference(y)?;
    let m = y.len() as u32;
    check_sizes(n, m)?;
    let pi = cell_masses(x, y);
    let mut tables = vec![Vec::new(); pi.len()];
    for j in 1..pi.len() - 1 {
        tables[j] = cell_p_table(x, y[j - 1], y[j], n, params, spec)?;
    }
    Ok(GammaPmf::new(n, m, params, pmf_from_cells(n, &pi, &tables)))
}

/// `E[γ | y]`: end-cell occupancy plus `Σ_k P(N_i = k)(1 + p_k)` per middle
/// cell.
pub fn expected_gamma_given_y(x: &DistributionModel, y: &[f64], n: u32, params: PcdParams, spec: QuadSpec) -> Result<f64> {
    check_reference(y)?;
    check_sizes(n, y.len() as u32)?;
    let pi = cell_masses(x, y);
    let last = pi.len() - 1;
    let occupied = |p: f64| 1.0 - (1.0 - p).powi(n as i32);
    let mut e = occupied(pi[0]) + occupied(pi[last]);
    for j in 1..last {
        let table = cell_p_table(x, y[j - 1], y[j], n, params, spec)?;
        for k in 1..=n {
            let pk = binomial(n as u64, k as u64) * pi[j].powi(k as i32) * (1.0 - pi[j]).powi((n - k) as i32);
            e += pk * (1.0 + table[k as usize]);
        }
    }
    Ok(e)
}

/// Integrates `g(y)` against the density of the order statistics of `m`
/// draws from `y_model`, written over ordered uniforms `u_1 < ... < u_m`.
fn over_order_statistics<G>(y_model: &DistributionModel, m: u32, spec: &GeneralMultiSpec, mut g: G) -> Result<Vec<f64>>
where
    G: FnMut(&[f64]) -> Result<Vec<f64>>,
{
    if m > MAX_QUADRATURE_M {
        let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
        let mut acc: Vec<f64> = Vec::new();
        for _ in 0..spec.mc_reps {
            let mut y: Vec<f64> = (0..m).map(|_| y_model.sample(&mut rng)).collect();
            y.sort_by(f64::total_cmp);
            if y.windows(2).any(|w| w[0] == w[1]) {
                continue;
            }
            add_into(&mut acc, &g(&y)?, 1.0);
        }
        let reps = f64::from(spec.mc_reps);
        acc.iter_mut().for_each(|v| *v /= reps);
        return Ok(acc);
    }
    let rule = GaussLegendre::new(spec.nodes.max(1).try_into().expect("nonzero")).into_node_weight_pairs();
    let mut acc = Vec::new();
    let mut u = Vec::with_capacity(m as usize);
    let mut y = Vec::with_capacity(m as usize);
    nest(y_model, m as usize, &rule, 0.0, 1.0, &mut u, &mut y, &mut acc, &mut g)?;
    // density of ordered uniforms is m!
    let fact: f64 = (1..=m).map(f64::from).product();
    acc.iter_mut().for_each(|v| *v *= fact);
    Ok(acc)
}

fn add_into(acc: &mut Vec<f64>, v: &[f64], w: f64) {
    if acc.len() < v.len() {
        acc.resize(v.len(), 0.0);
    }
    for (a, b) in acc.iter_mut().zip(v) {
        *a += w * b;
    }
}

#[allow(clippy::too_many_arguments)]
fn nest<G>(
    y_model: &DistributionModel,
    m: usize,
    rule: &[(f64, f64)],
    lower: f64,
    weight: f64,
    u: &mut Vec<f64>,
    y: &mut Vec<f64>,
    acc: &mut Vec<f64>,
    g: &mut G,
) -> Result<()>
where
    G: FnMut(&[f64]) -> Result<Vec<f64>>,
{
    if u.len() == m {
        let v = g(y)?;
        add_into(acc, &v, weight);
        return Ok(());
    }
    let half = 0.5 * (1.0 - lower);
    for &(t, w) in rule {
        let ui = lower + half * (t + 1.0);
        let yi = y_model.quantile(ui);
        // ties between quantiles only occur on flat stretches of the cdf
        if y.last().is_some_and(|&prev| yi <= prev) {
            continue;
        }
        u.push(ui);
        y.push(yi);
        nest(y_model, m, rule, ui, weight * half * w, u, y, acc, g)?;
        u.pop();
        y.pop();
    }
    Ok(())
}

/// Law of γ with `X ~ x_model` and `m` reference points drawn from
/// `y_model`: nested Gauss-Legendre for `m ≤ 3`, sampled `Y` otherwise.
pub fn pmf_general_multi(
    x_model: &DistributionModel,
    y_model: &DistributionModel,
    n: u32,
    m: u32,
    params: PcdParams,
    spec: GeneralMultiSpec,
) -> Result<GammaPmf> {
    check_sizes(n, m)?;
    let quad = spec.quad();
    let mut probs = over_order_statistics(y_model, m, &spec, |y| Ok(pmf_given_y(x_model, y, n, params, quad)?.probs))?;
    probs.resize(2 * m as usize + 1, 0.0);
    Ok(GammaPmf::new(n, m, params, probs))
}

/// `E[γ]` for uniform `X` and `Y` on the same interval, in closed form.
pub fn expected_gamma_uniform(n: u32, m: u32, params: PcdParams) -> Result<f64> {
    check_sizes(n, m)?;
    let (nf, mf) = (f64::from(n), f64::from(m));
    // P(X_(1) < Y_(1)) = P(X_(n) > Y_(m)) = n / (n + m)
    let mut e = 2.0 * nf / (nf + mf);
    if m > 1 {
        let total = binomial(u64::from(n + m), u64::from(m));
        let mut middle = 0.0;
        for k in 1..=n {
            // count vectors with k points in a given middle cell
            let pk = binomial(u64::from(n - k + m - 1), u64::from(m - 1)) / total;
            let p2 = if k < 2 { 0.0 } else { p_exact_full(k, params)?.value };
            middle += pk * (1.0 + p2);
        }
        e += (mf - 1.0) * middle;
    }
    Ok(e)
}

/// `E[γ]`, in closed form when both laws are the same uniform and by the
/// same integration as [`pmf_general_multi`] otherwise.
pub fn expected_gamma(
    x_model: &DistributionModel,
    y_model: &DistributionModel,
    n: u32,
    m: u32,
    params: PcdParams,
    spec: GeneralMultiSpec,
) -> Result<f64> {
    check_sizes(n, m)?;
    if x_model.is_uniform() && x_model == y_model {
        return expected_gamma_uniform(n, m, params);
    }
    let quad = spec.quad();
    let v = over_order_statistics(y_model, m, &spec, |y| Ok(vec![expected_gamma_given_y(x_model, y, n, params, quad)?]))?;
    Ok(v[0])
}
