use std::f64::consts::LN_2;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::clone1::Amplitudes;
use super::CloneParams;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::math::{LogFactorials, LogSumExp};
use crate::repthy::{count_types, enumerate_types, for_each_bounded_composition, TypeVector};
use crate::spectra::{SpectrumEntry, WeightedSpectrum};

/// A `d × d` matrix of pair counts `m̃_{k,l}`, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TypeMatrix {
    d: usize,
    entries: Vec<u32>,
}

impl TypeMatrix {
    pub fn new(d: usize, entries: Vec<u32>) -> Result<Self> {
        if entries.len() != d * d {
            return Err(crate::error::invalid(format!(
                "expected {} entries, got {}",
                d * d,
                entries.len()
            )));
        }
        Ok(Self { d, entries })
    }

    pub fn diagonal(diag: &[u32]) -> Self {
        let d = diag.len();
        let mut entries = vec![0; d * d];
        for (k, &x) in diag.iter().enumerate() {
            entries[k * d + k] = x;
        }
        Self { d, entries }
    }

    pub fn get(&self, k: usize, l: usize) -> u32 {
        self.entries[k * self.d + l]
    }

    pub fn total(&self) -> u32 {
        self.entries.iter().sum()
    }

    pub fn row_sums(&self) -> Vec<u32> {
        self.entries.chunks(self.d).map(|r| r.iter().sum()).collect()
    }
}

/// Weight `β_ñ` of one mixture component, keyed by the diagonal of `ñ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MixtureWeight {
    pub n_tilde: TypeMatrix,
    #[serde(with = "crate::math::serde_log")]
    pub log2_beta: f64,
}

/// Spectrum of the universal clone after local dephasing, plus the mixture
/// weights of its components.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Clone2Spectrum {
    pub spectrum: WeightedSpectrum,
    pub betas: Vec<MixtureWeight>,
}

/// `ln` of the number of ways to spread `total` over `cells` cells.
fn ln_spread(lf: &LogFactorials, total: u32, cells: usize) -> f64 {
    if cells == 0 {
        return if total == 0 { 0.0 } else { f64::NEG_INFINITY };
    }
    lf.ln_binomial(total as usize + cells - 1, cells - 1)
}

/// Local spectrum of the universal `n → m` clone after both parties dephase
/// in the computational basis.
///
/// One entry per Alice type `m^A` with value
/// `(∏_j m^A_j! / m!) Σ_{m̃ : rows = m^A} Σ_ñ |α̃_{m̃,ñ}|²` and
/// multiplicity `m! / ∏_j m^A_j!`.
pub fn clone2_spectrum(params: &CloneParams, budget: &Budget) -> Result<Clone2Spectrum> {
    let d = params.d();
    if d > budget.max_clone2_dim {
        return Err(Error::UnsupportedDimension {
            d,
            max: budget.max_clone2_dim,
        });
    }
    let m = params.m();
    // (m^A, diag) pairs are compositions of m into 2d parts
    Budget::check("clone2 type pairs", count_types(m, 2 * d), budget.max_types)?;
    // |α̃_{m̃,ñ}|² only sees the diagonals of m̃ and ñ (off-diagonal ñ
    // vanish), so it is the known-basis formula with d² in the prefactor
    let amps = Amplitudes::new(params, d * d);
    let lf = amps.lf();
    let entries = enumerate_types(m, d)
        .into_par_iter()
        .map(|row| {
            let rows = row.counts();
            let mut acc = LogSumExp::default();
            let mut diag = vec![0u32; d];
            for_each_diag(rows, &mut diag, 0, &mut |diag| {
                let ln_fill: f64 = rows.iter().zip(diag).map(|(&r, &x)| ln_spread(lf, r - x, d - 1)).sum();
                if ln_fill == f64::NEG_INFINITY {
                    return;
                }
                acc.add(ln_fill + amps.ln_alpha_row_sum(diag));
            });
            let ln_mult = lf.ln_multinomial(rows);
            SpectrumEntry::new((acc.value() - ln_mult) / LN_2, ln_mult / LN_2)
        })
        .collect();
    let spectrum = WeightedSpectrum::new(m, entries)?;
    Ok(Clone2Spectrum {
        spectrum,
        betas: mixture_weights(params, &amps),
    })
}

/// Visits every diagonal `x ≤ rows` componentwise.
fn for_each_diag(rows: &[u32], buf: &mut [u32], i: usize, f: &mut impl FnMut(&[u32])) {
    if i == rows.len() {
        f(buf);
        return;
    }
    for x in 0..=rows[i] {
        buf[i] = x;
        for_each_diag(rows, buf, i + 1, f);
    }
}

/// `β_ñ = Σ_{m̃} |α̃_{m̃,ñ}|²` summed explicitly over all `m̃ ≥ ñ`.
fn mixture_weights(params: &CloneParams, amps: &Amplitudes) -> Vec<MixtureWeight> {
    let d = params.d();
    let (n, m) = (params.n(), params.m());
    let lf = amps.lf();
    let off = d * d - d;
    enumerate_types(n, d)
        .into_iter()
        .map(|nt| {
            let mut acc = LogSumExp::default();
            // the diagonal of m̃ carries some total t ≥ n, the rest is off-diagonal
            for t in n..=m {
                let ln_off = ln_spread(lf, m - t, off);
                if ln_off == f64::NEG_INFINITY {
                    continue;
                }
                let bound = vec![t; d];
                for_each_bounded_composition(t, &bound, |diag| {
                    if nt.counts().iter().zip(diag).all(|(a, b)| a <= b) {
                        acc.add(ln_off + amps.ln_alpha_sq(diag, nt.counts()));
                    }
                });
            }
            MixtureWeight {
                n_tilde: TypeMatrix::diagonal(nt.counts()),
                log2_beta: acc.value() / LN_2,
            }
        })
        .collect()
}

/// Diagonal of a type matrix as a type vector.
pub fn diagonal_type(t: &TypeMatrix) -> TypeVector {
    TypeVector::new((0..t.d).map(|k| t.get(k, k)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::LogFactorials;

    fn params(n: u32, m: u32, p: &str) -> CloneParams {
        CloneParams::new(n, m, p.parse().unwrap()).unwrap()
    }

    #[test]
    fn identity_machine() {
        let s = clone2_spectrum(&params(1, 1, "0.7,0.3"), &Budget::default()).unwrap();
        let vals = s.spectrum.expand_sorted(4).unwrap();
        assert!((vals[0] - 0.3).abs() < 1e-14 && (vals[1] - 0.7).abs() < 1e-14);
    }

    #[test]
    fn normalized() {
        for (n, m, p) in [(1, 2, "0.5,0.5"), (2, 7, "0.9,0.1"), (3, 20, "0.7,0.3")] {
            let s = clone2_spectrum(&params(n, m, p), &Budget::default()).unwrap();
            assert!((s.spectrum.total_mass() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn betas_are_multinomial_weights() {
        let c = params(3, 6, "0.7,0.3");
        let s = clone2_spectrum(&c, &Budget::default()).unwrap();
        let lf = LogFactorials::new(8);
        let mut total = 0.0;
        for w in &s.betas {
            let nt = diagonal_type(&w.n_tilde);
            let want: f64 = lf.ln_multinomial(nt.counts()).exp()
                * 0.7f64.powi(nt.counts()[0] as i32)
                * 0.3f64.powi(nt.counts()[1] as i32);
            assert!((w.log2_beta.exp2() - want).abs() < 1e-12);
            total += want;
        }
        assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn dimension_cap() {
        let c = params(1, 2, "0.5,0.3,0.2");
        assert!(matches!(
            clone2_spectrum(&c, &Budget::default()),
            Err(Error::UnsupportedDimension { d: 3, max: 2 })
        ));
        let wide = Budget {
            max_clone2_dim: 3,
            ..Budget::default()
        };
        let s = clone2_spectrum(&c, &wide).unwrap();
        assert!((s.spectrum.total_mass() - 1.0).abs() < 1e-10);
    }
}
