use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::clone1::Amplitudes;
use super::CloneParams;
use crate::budget::Budget;
use crate::dense::{block_weights, digits, eigenvalues, interleave, partial_trace_b, spectrum_from_eigenvalues};
use crate::error::Result;
use crate::math::LogFactorials;
use crate::repthy::enumerate_types;
use crate::spectra::{BlockSpectrum, WeightedSpectrum};

/// Brute-force spectra of the known-basis clone.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Clone1Oracle {
    pub block: BlockSpectrum,
    pub flat: WeightedSpectrum,
}

/// Brute-force local spectra of the universal clone, with and without the
/// local dephasing step.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Clone2Oracle {
    pub dephased: WeightedSpectrum,
    pub undephased: WeightedSpectrum,
}

fn type_of(seq: &[usize], d: usize) -> Vec<u32> {
    let mut t = vec![0u32; d];
    for &x in seq {
        t[x] += 1;
    }
    t
}

/// Builds `Σ_m α_{m,m−j} |m⟩` for every internal label `j`, traces out the
/// internal register and Bob, and diagonalizes.
pub fn dense_clone1_oracle(params: &CloneParams, budget: &Budget) -> Result<Clone1Oracle> {
    let (d, m) = (params.d(), params.m() as usize);
    Budget::check("dense dimension", (d as u128).pow(2 * m as u32), budget.dense_cap)?;
    let amps = Amplitudes::new(params, d);
    let lf = LogFactorials::new(m);
    let full = d.pow(2 * m as u32);
    let local = d.pow(m as u32);
    let mut rho = DMatrix::<f64>::zeros(local, local);
    for j in enumerate_types(params.m() - params.n(), d) {
        let mut state = vec![0.0; full];
        for s in 0..local {
            let seq = digits(s, d, m);
            let mt = type_of(&seq, d);
            if !j.counts().iter().zip(&mt).all(|(a, b)| a <= b) {
                continue;
            }
            let nt: Vec<u32> = mt.iter().zip(j.counts()).map(|(a, b)| a - b).collect();
            let ln_amp2 = amps.ln_alpha_sq(&mt, &nt) - lf.ln_multinomial(&mt);
            state[interleave(&seq, &seq, d)] = (0.5 * ln_amp2).exp();
        }
        rho += partial_trace_b(&state, d, m);
    }
    let flat = spectrum_from_eigenvalues(params.m(), &eigenvalues(&rho));
    let block = block_weights(&rho, d, m)?;
    Ok(Clone1Oracle { block, flat })
}

/// Builds the universal clone's output on `(A ⊗ B)^{⊗m}` for every internal
/// label `j = m̃ − ñ`, then reads off Alice's reduced spectrum before and
/// after dephasing. Dephasing both sides and tracing out Bob leaves exactly
/// the diagonal of Alice's reduced state.
pub fn dense_clone2_oracle(params: &CloneParams, budget: &Budget) -> Result<Clone2Oracle> {
    let (d, m) = (params.d(), params.m() as usize);
    Budget::check("dense dimension", (d as u128).pow(2 * m as u32), budget.dense_cap)?;
    let amps = Amplitudes::new(params, d * d);
    let lf = LogFactorials::new(m);
    let full = d.pow(2 * m as u32);
    let local = d.pow(m as u32);
    let mut rho = DMatrix::<f64>::zeros(local, local);
    for j in enumerate_types(params.m() - params.n(), d * d) {
        let j = j.counts();
        let mut state = vec![0.0; full];
        for index in 0..full {
            // consecutive digit pairs (a_κ, b_κ) index the cell a_κ d + b_κ
            let dg = digits(index, d, 2 * m);
            let cells: Vec<usize> = dg.chunks(2).map(|ab| ab[0] * d + ab[1]).collect();
            let mt = type_of(&cells, d * d);
            let mut diag_m = vec![0u32; d];
            let mut diag_n = vec![0u32; d];
            let mut ok = true;
            for k in 0..d * d {
                let (row, col) = (k / d, k % d);
                if row == col {
                    if mt[k] < j[k] {
                        ok = false;
                        break;
                    }
                    diag_m[row] = mt[k];
                    diag_n[row] = mt[k] - j[k];
                } else if mt[k] != j[k] {
                    ok = false;
                    break;
                }
            }
            if !ok {
                continue;
            }
            let ln_amp2 = amps.ln_alpha_sq(&diag_m, &diag_n) - lf.ln_multinomial(&mt);
            state[index] = (0.5 * ln_amp2).exp();
        }
        rho += partial_trace_b(&state, d, m);
    }
    let undephased = spectrum_from_eigenvalues(params.m(), &eigenvalues(&rho));
    let diag: Vec<f64> = rho
        .diagonal()
        .iter()
        .copied()
        .filter(|&v| v > crate::dense::ZERO_EIGENVALUE)
        .collect();
    let dephased = spectrum_from_eigenvalues(params.m(), &diag);
    Ok(Clone2Oracle { dephased, undephased })
}
