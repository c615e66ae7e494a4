use serde::{Deserialize, Serialize};

use super::{BlockSpectrum, WeightedSpectrum};
use crate::budget::Budget;
use crate::dense::{block_weights, eigenvalues, fixed_rotation, partial_trace_b, spectrum_from_eigenvalues};
use crate::error::{invalid, Result};
use crate::prob::ProbVector;

/// Spectra of `|φ⟩^{⊗n}` computed by brute force.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DenseOracle {
    pub block: BlockSpectrum,
    pub flat: WeightedSpectrum,
}

/// Builds the explicit `2n`-party state vector of `|φ⟩^{⊗n}` (with the
/// Schmidt basis rotated on Alice's side), traces out Bob, and reads off the
/// eigenvalues and isotypic block weights numerically.
pub fn dense_oracle_spectrum(p: &ProbVector, n: u32, budget: &Budget) -> Result<DenseOracle> {
    if n == 0 {
        return Err(invalid("n must be positive"));
    }
    let support = p.support();
    let d = support.dim();
    let full = (d as u128).pow(2 * n);
    Budget::check("dense dimension", full, budget.dense_cap)?;
    let n = n as usize;
    let o = fixed_rotation(d);
    let amps: Vec<f64> = support.probs().iter().map(|x| x.sqrt()).collect();
    // single-pair amplitude ψ_1[a, b] = O[a, b] √p_b
    let single = |a: usize, b: usize| o[(a, b)] * amps[b];
    let state: Vec<f64> = (0..full as usize)
        .map(|index| {
            let dg = crate::dense::digits(index, d, 2 * n);
            dg.chunks(2).map(|ab| single(ab[0], ab[1])).product()
        })
        .collect();
    let rho = partial_trace_b(&state, d, n);
    let vals = eigenvalues(&rho);
    let flat = spectrum_from_eigenvalues(n as u32, &vals);
    let block = block_weights(&rho, d, n)?;
    Ok(DenseOracle { block, flat })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::{iid_block_spectrum, iid_type_spectrum};

    #[test]
    fn product_state_has_rank_one() {
        let p: ProbVector = "1,0".parse().unwrap();
        let o = dense_oracle_spectrum(&p, 2, &Budget::default()).unwrap();
        let vals = o.flat.expand_sorted(16).unwrap();
        assert_eq!(vals.len(), 1);
        assert!((vals[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn block_weights_match_schur() {
        let p: ProbVector = "0.7,0.3".parse().unwrap();
        let budget = Budget::default();
        for n in 1..=4 {
            let o = dense_oracle_spectrum(&p, n, &budget).unwrap();
            let f = iid_block_spectrum(&p, n, &budget).unwrap();
            for (a, b) in o.block.blocks.iter().zip(&f.blocks) {
                assert_eq!(a.lambda, b.lambda);
                assert!((a.log2_b.exp2() - b.log2_b.exp2()).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn flat_matches_type_spectrum() {
        let p: ProbVector = "0.5,0.5".parse().unwrap();
        let budget = Budget::default();
        let o = dense_oracle_spectrum(&p, 3, &budget).unwrap();
        let want = iid_type_spectrum(&p, 3, &budget).unwrap().expand_sorted(64).unwrap();
        let got = o.flat.expand_sorted(64).unwrap();
        assert_eq!(got.len(), want.len());
        for (g, w) in got.iter().zip(&want) {
            assert!((g - w).abs() < 1e-10);
        }
    }

    #[test]
    fn cap_is_enforced() {
        let p: ProbVector = "0.5,0.5".parse().unwrap();
        assert!(dense_oracle_spectrum(&p, 7, &Budget::default()).is_err());
    }
}
