use pcd_core::PcdParams;
use pcd_dist::DistributionModel;
use serde::{Deserialize, Serialize};

use crate::{HarnessError, Result};

fn default_chunks() -> usize {
    64
}

/// Where the reference points come from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Reference {
    Fixed { y: Vec<f64> },
    Sampled { m: usize, model: DistributionModel },
}

impl Reference {
    pub fn m(&self) -> usize {
        match self {
            Reference::Fixed { y } => y.len(),
            Reference::Sampled { m, .. } => *m,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McConfig {
    pub replicates: u64,
    pub seed: u64,
    pub n: usize,
    pub params: PcdParams,
    pub x_model: DistributionModel,
    pub reference: Reference,
    /// Number of RNG substreams; fixes the result independently of the thread count.
    #[serde(default = "default_chunks")]
    pub parallel_chunks: usize,
}

impl McConfig {
    /// One middle cell spanned by the support of `x_model`.
    pub fn single_cell(x_model: DistributionModel, n: usize, params: PcdParams, replicates: u64, seed: u64) -> Self {
        let (lo, hi) = x_model.support();
        McConfig {
            replicates,
            seed,
            n,
            params,
            x_model,
            reference: Reference::Fixed { y: vec![lo, hi] },
            parallel_chunks: default_chunks(),
        }
    }

    pub fn m(&self) -> usize {
        self.reference.m()
    }

    pub fn validate(&self) -> Result<()> {
        if self.replicates == 0 {
            return Err(HarnessError::BadConfig("zero replicates".into()));
        }
        if self.parallel_chunks == 0 {
            return Err(HarnessError::BadConfig("zero parallel chunks".into()));
        }
        if self.m() == 0 {
            return Err(HarnessError::BadConfig("no reference points".into()));
        }
        if let Reference::Fixed { y } = &self.reference {
            pcd_core::intervalize(y)?;
        }
        Ok(())
    }
}
