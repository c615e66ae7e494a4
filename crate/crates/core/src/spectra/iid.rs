use rayon::prelude::*;

use super::block::{Block, BlockSpectrum};
use super::weighted::{SpectrumEntry, WeightedSpectrum};
use crate::budget::Budget;
use crate::error::{invalid, Result};
use crate::math::LogFactorials;
use crate::prob::ProbVector;
use crate::repthy::{
    count_partitions, count_types, dim_u, dim_v, enumerate_partitions, enumerate_types, schur_exact, schur_log2,
};

/// Block spectrum of `|φ⟩^{⊗n}` with `b_λ = s_λ(p)`.
///
/// Zero entries of `p` are dropped first, so `d` is the support size. When
/// `p` carries exact rationals each block also gets its exact weight.
pub fn iid_block_spectrum(p: &ProbVector, n: u32, budget: &Budget) -> Result<BlockSpectrum> {
    if n == 0 {
        return Err(invalid("n must be positive"));
    }
    let support = p.support();
    let d = support.dim();
    Budget::check("partitions", count_partitions(n, d), budget.max_partitions)?;
    let lambdas = enumerate_partitions(n, d)?;
    let blocks = lambdas
        .into_par_iter()
        .map(|lambda| {
            let log2_b = schur_log2(&lambda, &support)?;
            let exact_b = match support.exact() {
                Some(ex) => Some(schur_exact(&lambda, ex)?),
                None => None,
            };
            Ok(Block {
                dim_u: dim_u(&lambda, d)?,
                dim_v: dim_v(&lambda)?,
                lambda,
                log2_b,
                c_values: None,
                exact_b,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let bs = BlockSpectrum { n, d, blocks };
    bs.validate()?;
    Ok(bs)
}

/// Spectrum of `(Tr_B |φ⟩⟨φ|)^{⊗n}`: one entry per type with value
/// `∏ p_k^{n_k}` and multinomial multiplicity.
pub fn iid_type_spectrum(p: &ProbVector, n: u32, budget: &Budget) -> Result<WeightedSpectrum> {
    if n == 0 {
        return Err(invalid("n must be positive"));
    }
    let support = p.support();
    let d = support.dim();
    Budget::check("types", count_types(n, d), budget.max_types)?;
    let logs: Vec<f64> = support.probs().iter().map(|x| x.log2()).collect();
    let lf = LogFactorials::new(n as usize);
    let entries = enumerate_types(n, d)
        .into_iter()
        .map(|t| {
            let value: f64 = t
                .counts()
                .iter()
                .zip(&logs)
                .map(|(&c, &l)| if c == 0 { 0.0 } else { c as f64 * l })
                .sum();
            SpectrumEntry::new(value, lf.ln_multinomial(t.counts()) / std::f64::consts::LN_2)
        })
        .collect();
    WeightedSpectrum::new(n, entries)
}
