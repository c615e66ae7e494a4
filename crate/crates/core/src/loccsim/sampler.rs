use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::Rng;

use crate::error::{invalid, Result};
use crate::repthy::Partition;
use crate::spectra::BlockSpectrum;

/// Source of Young-index measurement outcomes. Protocols see only this.
pub trait YoungSampler: Sync {
    /// Copy count of the measured state.
    fn n(&self) -> u32;

    /// Local dimension, i.e. the row bound of the outcomes.
    fn d(&self) -> usize;

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Partition;
}

/// Samples `λ` with probability `dim_v(λ) × b_λ`.
#[derive(Debug, Clone)]
pub struct BlockSampler {
    n: u32,
    d: usize,
    lambdas: Vec<Partition>,
    index: WeightedIndex<f64>,
}

impl BlockSampler {
    pub fn new(bs: &BlockSpectrum) -> Result<Self> {
        bs.validate()?;
        let masses: Vec<f64> = bs.blocks.iter().map(|b| b.mass()).collect();
        let index = WeightedIndex::new(&masses).map_err(|e| invalid(format!("block masses: {e}")))?;
        Ok(Self {
            n: bs.n,
            d: bs.d,
            lambdas: bs.blocks.iter().map(|b| b.lambda.clone()).collect(),
            index,
        })
    }
}

impl YoungSampler for BlockSampler {
    fn n(&self) -> u32 {
        self.n
    }

    fn d(&self) -> usize {
        self.d
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Partition {
        self.lambdas[self.index.sample(rng)].clone()
    }
}
