//! The law of γ for `m` reference points.

use pcd_core::PcdParams;
use pcd_exact::p_exact_full;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::function::factorial::binomial;

use crate::compose::CompositionSpace;
use crate::{MultiError, Result};

/// `P(γ = q)` for `q = 0, ..., 2m`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GammaPmf {
    pub n: u32,
    pub m: u32,
    pub params: PcdParams,
    pub probs: Vec<f64>,
}

impl GammaPmf {
    pub fn new(n: u32, m: u32, params: PcdParams, probs: Vec<f64>) -> Self {
        Self { n, m, params, probs }
    }

    pub fn p(&self, q: usize) -> f64 {
        self.probs.get(q).copied().unwrap_or(0.0)
    }

    /// `(q, P(γ = q))` for the atoms with positive mass.
    pub fn atoms(&self) -> Vec<(usize, f64)> {
        self.probs.iter().enumerate().filter(|(_, &p)| p > 0.0).map(|(q, &p)| (q, p)).collect()
    }

    pub fn total(&self) -> f64 {
        self.probs.iter().sum()
    }

    pub fn mean(&self) -> f64 {
        self.probs.iter().enumerate().map(|(q, p)| q as f64 * p).sum()
    }

    pub fn variance(&self) -> f64 {
        let mu = self.mean();
        self.probs.iter().enumerate().map(|(q, p)| (q as f64 - mu).powi(2) * p).sum()
    }
}

/// End-interval factor: an occupied end interval contributes exactly one.
pub fn zeta(q: u32, n: u32) -> f64 {
    f64::from(u8::from((n == 0 && q == 0) || (n >= 1 && q == 1)))
}

/// Middle-interval factor with `p = P(γ = 2)` for `n` points in the cell.
pub fn eta(q: u32, n: u32, p: f64) -> f64 {
    match (q, n) {
        (0, 0) => 1.0,
        (1, n) if n >= 1 => 1.0 - p,
        (2, n) if n >= 2 => p,
        _ => 0.0,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MultiSpec {
    /// Largest `n + m` enumerated.
    pub cap: u32,
}

impl Default for MultiSpec {
    fn default() -> Self {
        Self { cap: 24 }
    }
}

pub(crate) fn check_sizes(n: u32, m: u32) -> Result<()> {
    if n == 0 || m == 0 {
        return Err(MultiError::BadSize { n, m });
    }
    Ok(())
}

/// `p_k(U, r, c)` for `k = 0..=n`.
pub(crate) fn uniform_p_table(n: u32, params: PcdParams) -> Result<Vec<f64>> {
    (0..=n).map(|k| if k < 2 { Ok(0.0) } else { Ok(p_exact_full(k, params)?.value) }).collect()
}

/// Adds the law of `Σ γ_i` for one count vector, scaled by `weight`, into
/// `out`. `p[k]` is `P(γ = 2)` for `k` points in a middle interval.
fn add_count_vector(counts: &[u32], p: &[f64], weight: f64, scratch: &mut Vec<f64>, out: &mut [f64]) {
    let last = counts.len() - 1;
    // the end intervals shift the law deterministically
    let shift = usize::from(counts[0] > 0) + usize::from(counts[last] > 0);
    scratch.clear();
    scratch.push(1.0);
    for &k in &counts[1..last] {
        match k {
            0 => {}
            1 => scratch.insert(0, 0.0),
            _ => {
                let pk = p[k as usize];
                scratch.push(0.0);
                scratch.push(0.0);
                for q in (0..scratch.len() - 2).rev() {
                    let v = scratch[q];
                    scratch[q + 2] += pk * v;
                    scratch[q + 1] += (1.0 - pk) * v;
                    scratch[q] = 0.0;
                }
            }
        }
    }
    for (q, v) in scratch.iter().enumerate() {
        if *v != 0.0 {
            out[q + shift] += weight * v;
        }
    }
}

/// Exact law of γ for uniform `X` and `Y` on a common interval. Every count
/// vector over the `m + 1` intervals has probability `n! m! / (n+m)!`.
pub fn pmf_uniform_multi(n: u32, m: u32, params: PcdParams) -> Result<GammaPmf> {
    pmf_uniform_multi_with(n, m, params, MultiSpec::default())
}

pub fn pmf_uniform_multi_with(n: u32, m: u32, params: PcdParams, spec: MultiSpec) -> Result<GammaPmf> {
    check_sizes(n, m)?;
    if n + m > spec.cap {
        return Err(MultiError::EnumerationTooLarge { n, m, cap: spec.cap });
    }
    let p = uniform_p_table(n, params)?;
    let len = 2 * m as usize + 1;
    let space = CompositionSpace::weak(n, m + 1);
    // one chunk per count in the left end interval, summed in chunk order
    let chunks: Vec<Vec<f64>> = (0..=n)
        .into_par_iter()
        .map(|first| {
            let mut acc = vec![0.0; len];
            let mut scratch = Vec::with_capacity(len);
            space.for_each_with_first(first, |counts| add_count_vector(counts, &p, 1.0, &mut scratch, &mut acc));
            acc
        })
        .collect();
    let weight = 1.0 / binomial(u64::from(n + m), u64::from(m));
    let mut probs = vec![0.0; len];
    for chunk in &chunks {
        for (a, b) in probs.iter_mut().zip(chunk) {
            *a += b;
        }
    }
    probs.iter_mut().for_each(|v| *v *= weight);
    Ok(GammaPmf::new(n, m, params, probs))
}

/// Law of γ given the cell probabilities `pi[j]` (end cells first and last)
/// and, per middle cell, the table `p_tables[j][k]`. Counts are multinomial.
pub(crate) fn pmf_from_cells(n: u32, pi: &[f64], p_tables: &[Vec<f64>]) -> Vec<f64> {
    let cells = pi.len();
    let len = 2 * (cells - 1) + 1;
    let n = n as usize;
    // dp[s][q]: s points placed so far, γ so far q
    let mut dp = vec![vec![0.0; len]; n + 1];
    dp[0][0] = 1.0;
    for j in 0..cells {
        let end = j == 0 || j == cells - 1;
        let mut next = vec![vec![0.0; len]; n + 1];
        for s in 0..=n {
            for q in 0..len {
                let v = dp[s][q];
                if v == 0.0 {
                    continue;
                }
                let left = n - s;
                let ks: Vec<usize> = if j == cells - 1 { vec![left] } else { (0..=left).collect() };
                for k in ks {
                    let w = if pi[j] == 0.0 && k > 0 {
                        0.0
                    } else {
                        binomial(left as u64, k as u64) * pi[j].powi(k as i32)
                    };
                    if w == 0.0 {
                        continue;
                    }
                    let vw = v * w;
                    let t = &mut next[s + k];
                    match (k, end) {
                        (0, _) => t[q] += vw,
                        (_, true) | (1, false) => t[q + 1] += vw,
                        _ => {
                            let pk = p_tables[j][k];
                            t[q + 1] += vw * (1.0 - pk);
                            t[q + 2] += vw * pk;
                        }
                    }
                }
            }
        }
        dp = next;
    }
    std::mem::take(&mut dp[n])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(r: f64, c: f64) -> PcdParams {
        PcdParams::new(r, c).unwrap()
    }

    #[test]
    fn factors() {
        assert_eq!(zeta(0, 0), 1.0);
        assert_eq!(zeta(1, 3), 1.0);
        assert_eq!(zeta(0, 3), 0.0);
        assert_eq!(zeta(2, 3), 0.0);
        assert_eq!(eta(2, 1, 0.3), 0.0);
        assert_eq!(eta(1, 1, 0.0), 1.0);
        assert_eq!(eta(2, 4, 0.3), 0.3);
        assert_eq!(eta(1, 4, 0.3), 0.7);
        assert_eq!(eta(0, 4, 0.3), 0.0);
    }

    #[test]
    fn small_examples() {
        for &r in &[1.0, 1.5, 2.0, 7.0] {
            let one = pmf_uniform_multi(1, 1, params(r, 0.4)).unwrap();
            assert_eq!(one.atoms(), vec![(1, 1.0)]);
        }
        let two = pmf_uniform_multi(2, 1, params(2.0, 0.5)).unwrap();
        assert!((two.p(1) - 2.0 / 3.0).abs() < 1e-15);
        assert!((two.p(2) - 1.0 / 3.0).abs() < 1e-15);
        assert!((two.mean() - 4.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn cap_and_sizes() {
        let p = params(2.0, 0.5);
        assert!(matches!(pmf_uniform_multi(20, 5, p), Err(MultiError::EnumerationTooLarge { cap: 24, .. })));
        assert!(pmf_uniform_multi_with(20, 5, p, MultiSpec { cap: 25 }).is_ok());
        assert_eq!(pmf_uniform_multi(0, 2, p), Err(MultiError::BadSize { n: 0, m: 2 }));
        assert_eq!(pmf_uniform_multi(2, 0, p), Err(MultiError::BadSize { n: 2, m: 0 }));
    }

    #[test]
    fn normalised_and_bounded() {
        for (n, m) in [(3, 2), (5, 3), (8, 3), (6, 6), (12, 4)] {
            for (r, c) in [(1.5, 1.0 / 3.0), (2.0, 0.5), (1.0, 0.3), (3.0, 0.7)] {
                let pmf = pmf_uniform_multi(n, m, params(r, c)).unwrap();
                assert!((pmf.total() - 1.0).abs() < 1e-12, "n={n} m={m}");
                let hi = n.min(2 * m) as usize;
                for (q, _) in pmf.atoms() {
                    assert!(q >= 1 && q <= hi, "n={n} m={m} q={q}");
                }
            }
        }
    }

    #[test]
    fn multinomial_dp_matches_enumeration() {
        // for uniform cells every count vector has the same probability, so
        // equal cell probabilities do not reproduce it; instead compare the
        // dp with a brute-force multinomial sum
        let n = 5;
        let pi = [0.1, 0.25, 0.4, 0.25];
        let p2 = params(2.0, 0.5);
        let table = uniform_p_table(n, p2).unwrap();
        let tables = vec![vec![], table.clone(), table.clone(), vec![]];
        let dp = pmf_from_cells(n, &pi, &tables);
        let mut brute = vec![0.0; dp.len()];
        let mut scratch = Vec::new();
        CompositionSpace::weak(n, 4).for_each(|k| {
            let mut w = 120.0;
            for (j, &kj) in k.iter().enumerate() {
                w *= pi[j].powi(kj as i32) / (1..=kj).product::<u32>() as f64;
            }
            add_count_vector(k, &table, w, &mut scratch, &mut brute);
        });
        for (a, b) in dp.iter().zip(&brute) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn deterministic() {
        let a = pmf_uniform_multi(10, 5, params(1.5, 0.4)).unwrap();
        let b = pmf_uniform_multi(10, 5, params(1.5, 0.4)).unwrap();
        assert_eq!(a.probs.iter().map(|v| v.to_bits()).collect::<Vec<_>>(), b.probs.iter().map(|v| v.to_bits()).collect::<Vec<_>>());
    }
}
