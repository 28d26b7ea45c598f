use std::sync::OnceLock;

use pcd_core::{gamma_only, intervalize, Intervalization};
use pcd_multi::GammaPmf;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::config::{McConfig, Reference};
use crate::{HarnessError, Result};

/// Worker pool sized by `CDL_THREADS` when set, else rayon's default.
fn pool() -> &'static rayon::ThreadPool {
    static POOL: OnceLock<rayon::ThreadPool> = OnceLock::new();
    POOL.get_or_init(|| {
        let threads = std::env::var("CDL_THREADS").ok().and_then(|s| s.trim().parse::<usize>().ok()).unwrap_or(0);
        rayon::ThreadPoolBuilder::new().num_threads(threads).build().expect("thread pool")
    })
}

/// Replicates handled by chunk `i` of `k`.
fn chunk_len(total: u64, k: usize, i: usize) -> u64 {
    let k = k as u64;
    total / k + u64::from((i as u64) < total % k)
}

fn chunk_rng(seed: u64, chunk: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk as u64);
    rng
}

/// Histogram of γ over one chunk. With `middle_only`, points outside the
/// cell between the first two reference points are dropped.
fn run_chunk(cfg: &McConfig, fixed: Option<&Intervalization>, chunk: usize, middle_only: bool) -> Result<Vec<u64>> {
    let mut rng = chunk_rng(cfg.seed, chunk);
    let m = cfg.m();
    let mut counts = vec![0u64; 2 * m + 1];
    let mut xs = Vec::with_capacity(cfg.n);
    let mut ys = vec![0.0; m];
    for _ in 0..chunk_len(cfg.replicates, cfg.parallel_chunks, chunk) {
        let sampled;
        let iv = match (&cfg.reference, fixed) {
            (_, Some(iv)) => iv,
            (Reference::Sampled { model, .. }, None) => {
                ys.iter_mut().for_each(|y| *y = model.sample(&mut rng));
                sampled = intervalize(&ys)?;
                &sampled
            }
            (Reference::Fixed { .. }, None) => unreachable!("fixed reference is prebuilt"),
        };
        xs.clear();
        for _ in 0..cfg.n {
            xs.push(cfg.x_model.sample(&mut rng));
        }
        if middle_only {
            let (a, b) = (iv.y_sorted()[0], iv.y_sorted()[1]);
            xs.retain(|&x| x > a && x < b);
        }
        let g = if xs.is_empty() { 0 } else { gamma_only(&xs, iv, cfg.params)? };
        counts[g] += 1;
    }
    Ok(counts)
}

fn merge(parts: Vec<Vec<u64>>) -> Vec<u64> {
    let mut it = parts.into_iter();
    let mut total = it.next().unwrap_or_default();
    for p in it {
        total.iter_mut().zip(p).for_each(|(t, v)| *t += v);
    }
    total
}

/// Counts of γ = 0..=2m, summed over chunks. `parallel = false` runs the
/// same chunks in order on the calling thread.
pub fn mc_gamma_counts(cfg: &McConfig, parallel: bool) -> Result<Vec<u64>> {
    counts_impl(cfg, parallel, false)
}

fn counts_impl(cfg: &McConfig, parallel: bool, middle_only: bool) -> Result<Vec<u64>> {
    cfg.validate()?;
    let fixed = match &cfg.reference {
        Reference::Fixed { y } => Some(intervalize(y)?),
        Reference::Sampled { .. } => None,
    };
    let chunks = 0..cfg.parallel_chunks;
    let parts: Vec<Vec<u64>> = if parallel {
        pool().install(|| chunks.into_par_iter().map(|i| run_chunk(cfg, fixed.as_ref(), i, middle_only)).collect::<Result<_>>())?
    } else {
        chunks.map(|i| run_chunk(cfg, fixed.as_ref(), i, middle_only)).collect::<Result<_>>()?
    };
    Ok(merge(parts))
}

/// Empirical law of γ.
pub fn mc_gamma_pmf(cfg: &McConfig) -> Result<GammaPmf> {
    let counts = mc_gamma_counts(cfg, true)?;
    let r = cfg.replicates as f64;
    let probs = counts.iter().map(|&c| c as f64 / r).collect();
    Ok(GammaPmf::new(cfg.n as u32, cfg.m() as u32, cfg.params, probs))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub p_hat: f64,
    pub stderr: f64,
    pub replicates: u64,
}

impl Estimate {
    fn from_hits(hits: u64, replicates: u64) -> Self {
        let p_hat = hits as f64 / replicates as f64;
        Estimate { p_hat, stderr: (p_hat * (1.0 - p_hat) / replicates as f64).sqrt(), replicates }
    }
}

/// Fraction of replicates whose γ restricted to the cell between the first
/// two reference points equals 2.
pub fn mc_estimate_p(cfg: &McConfig) -> Result<Estimate> {
    if cfg.m() < 2 {
        return Err(HarnessError::BadConfig("P(γ = 2) needs a middle cell (m ≥ 2)".into()));
    }
    let counts = counts_impl(cfg, true, true)?;
    Ok(Estimate::from_hits(counts[2], cfg.replicates))
}

#[cfg(test)]
mod tests {
    use super::*;
    use pcd_core::PcdParams;
    use pcd_dist::uniform_model;

    fn cfg(n: usize, r: f64, c: f64, reps: u64) -> McConfig {
        McConfig::single_cell(uniform_model(0.0, 1.0).unwrap(), n, PcdParams::new(r, c).unwrap(), reps, 7)
    }

    #[test]
    fn chunk_lengths_cover_total() {
        for (t, k) in [(10u64, 3usize), (5, 8), (1_000_003, 64)] {
            assert_eq!((0..k).map(|i| chunk_len(t, k, i)).sum::<u64>(), t);
        }
    }

    #[test]
    fn parallel_equals_serial() {
        let mut c = cfg(6, 1.5, 0.4, 20_000);
        c.parallel_chunks = 7;
        assert_eq!(mc_gamma_counts(&c, true).unwrap(), mc_gamma_counts(&c, false).unwrap());
    }

    #[test]
    fn trivial_cases() {
        assert_eq!(mc_estimate_p(&cfg(1, 2.0, 0.5, 1000)).unwrap().p_hat, 0.0);
        assert_eq!(mc_estimate_p(&cfg(7, f64::INFINITY, 0.3, 1000)).unwrap().p_hat, 0.0);
        assert!(matches!(mc_estimate_p(&cfg(3, 2.0, 0.5, 0)), Err(HarnessError::BadConfig(_))));
    }

    #[test]
    fn two_points_at_cccd() {
        let e = mc_estimate_p(&cfg(2, 2.0, 0.5, 200_000)).unwrap();
        assert!((e.p_hat - 1.0 / 3.0).abs() < 3.0 * e.stderr + 1e-12, "{e:?}");
    }
}
