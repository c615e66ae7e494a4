use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::weighted::{SpectrumEntry, WeightedSpectrum, MASS_TOL};
use crate::error::{invalid, Error, Result};
use crate::repthy::{BigDim, Partition};

/// One per-k eigenvalue inside a block together with its multiplicity in
/// `U_λ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CValue {
    #[serde(with = "crate::math::serde_log")]
    pub log2_value: f64,
    pub multiplicity: BigDim,
}

/// Per-λ data. `b` is stored once per λ; its `l`-degeneracy is `dim_v`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Block {
    pub lambda: Partition,
    #[serde(with = "crate::math::serde_log")]
    pub log2_b: f64,
    #[serde(rename = "dimU")]
    pub dim_u: BigDim,
    #[serde(rename = "dimV")]
    pub dim_v: BigDim,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c_values: Option<Vec<CValue>>,
    #[serde(skip)]
    pub exact_b: Option<BigRational>,
}

impl Block {
    /// `dim_v × b`: the probability of measuring this Young index.
    pub fn mass(&self) -> f64 {
        (self.log2_b + self.dim_v.log2()).exp2()
    }

    /// `(1/n) log2 d_λ`.
    pub fn log2_dim_v(&self) -> f64 {
        self.dim_v.log2()
    }
}

/// The block form of a symmetric state's local spectrum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockSpectrum {
    pub n: u32,
    pub d: usize,
    pub blocks: Vec<Block>,
}

/// Which measure a flattened spectrum carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Measure {
    /// `{b_λl}`: one value per `(λ, l)`.
    BMeasure,
    /// `{c_λkl}`: one value per `(λ, k, l)`.
    CMeasure,
}

impl BlockSpectrum {
    pub fn total_mass(&self) -> f64 {
        self.blocks.iter().map(Block::mass).sum()
    }

    /// Checks both normalization invariants.
    pub fn validate(&self) -> Result<()> {
        let mass = self.total_mass();
        if (mass - 1.0).abs() > MASS_TOL {
            return Err(invalid(format!("block mass {mass} differs from 1")));
        }
        for block in &self.blocks {
            if let Some(cs) = &block.c_values {
                let mut acc = crate::math::LogSumExp::default();
                for c in cs.iter().filter(|c| !c.multiplicity.is_zero()) {
                    acc.add((c.log2_value + c.multiplicity.log2()) * std::f64::consts::LN_2);
                }
                let sum_log2 = acc.value() / std::f64::consts::LN_2;
                let consistent = (sum_log2 == block.log2_b) || (sum_log2 - block.log2_b).abs().exp2() - 1.0 <= 1e-10;
                if !consistent {
                    return Err(invalid(format!(
                        "block {}: log2 Σ c × mult = {sum_log2} but log2 b = {}",
                        block.lambda, block.log2_b
                    )));
                }
            }
        }
        Ok(())
    }

    /// The flat spectrum of the chosen measure.
    pub fn flatten(&self, measure: Measure) -> Result<WeightedSpectrum> {
        let mut entries = Vec::new();
        for block in &self.blocks {
            if block.log2_b == f64::NEG_INFINITY {
                continue;
            }
            let lv = block.dim_v.log2();
            match measure {
                Measure::BMeasure => entries.push(SpectrumEntry::new(block.log2_b, lv)),
                Measure::CMeasure => {
                    let cs = block.c_values.as_ref().ok_or(Error::MissingCValues)?;
                    entries.extend(
                        cs.iter()
                            .filter(|c| !c.multiplicity.is_zero())
                            .map(|c| SpectrumEntry::new(c.log2_value, c.multiplicity.log2() + lv)),
                    );
                }
            }
        }
        WeightedSpectrum::new(self.n, entries)
    }
}
