use std::f64::consts::LN_2;

use rayon::prelude::*;

use super::CloneParams;
use crate::budget::Budget;
use crate::error::{invalid, Result};
use crate::math::{LogFactorials, LogSumExp};
use crate::repthy::{
    count_partitions, count_types, dim_u, dim_v, enumerate_partitions, enumerate_types, for_each_bounded_composition,
    KostkaCache, TypeVector,
};
use crate::spectra::{Block, BlockSpectrum, CValue, SpectrumEntry, WeightedSpectrum};

/// Shared log-domain tables for the amplitude formulas.
pub(crate) struct Amplitudes {
    lf: LogFactorials,
    log_p: Vec<f64>,
    /// `ln [(m−n)! (n+D−1)! / (m+D−1)!]` for the internal dimension `D`.
    ln_prefactor: f64,
    n: u32,
}

impl Amplitudes {
    /// `internal` is `d` for the known-basis machine and `d²` for the
    /// universal one.
    pub(crate) fn new(params: &CloneParams, internal: usize) -> Self {
        let (n, m) = (params.n() as usize, params.m() as usize);
        let lf = LogFactorials::new(m + internal);
        let ln_prefactor = lf.ln(m - n) + lf.ln(n + internal - 1) - lf.ln(m + internal - 1);
        let log_p = params.p().probs().iter().map(|x| x.ln()).collect();
        Self {
            lf,
            log_p,
            ln_prefactor,
            n: params.n(),
        }
    }

    pub(crate) fn lf(&self) -> &LogFactorials {
        &self.lf
    }

    /// `ln |α_{m,n}|²` over the diagonal pairs `(m_k, n_k)`.
    pub(crate) fn ln_alpha_sq(&self, m_vec: &[u32], n_vec: &[u32]) -> f64 {
        let mut acc = self.ln_prefactor + self.lf.ln_multinomial(n_vec);
        for ((&mk, &nk), &lp) in m_vec.iter().zip(n_vec).zip(&self.log_p) {
            acc += self.lf.ln_binomial(mk as usize, nk as usize);
            if nk > 0 {
                acc += nk as f64 * lp;
            }
        }
        acc
    }

    /// `ln Σ_{n ≤ m, |n| = n} |α_{m,n}|²`.
    pub(crate) fn ln_alpha_row_sum(&self, m_vec: &[u32]) -> f64 {
        let mut acc = LogSumExp::default();
        for_each_bounded_composition(self.n, m_vec, |n_vec| acc.add(self.ln_alpha_sq(m_vec, n_vec)));
        acc.value()
    }
}

/// `log2 |α_{m,n}|²` for the known-Schmidt-basis machine; phases are dropped.
pub fn alpha_sq(m_vec: &TypeVector, n_vec: &TypeVector, params: &CloneParams) -> Result<f64> {
    if m_vec.d() != params.d() || n_vec.d() != params.d() {
        return Err(invalid("type vectors must have length d"));
    }
    if m_vec.total() != params.m() || n_vec.total() != params.n() {
        return Err(invalid(format!(
            "need |m_vec| = {} and |n_vec| = {}, got {} and {}",
            params.m(),
            params.n(),
            m_vec.total(),
            n_vec.total()
        )));
    }
    if !n_vec.le(m_vec) {
        return Err(invalid(format!("n_vec {n_vec} is not below m_vec {m_vec}")));
    }
    let amps = Amplitudes::new(params, params.d());
    Ok(amps.ln_alpha_sq(m_vec.counts(), n_vec.counts()) / LN_2)
}

/// Per-type eigenvalues `log2 e_m` of the output's local state, each with
/// multiplicity `m! / ∏ m_k!`.
pub fn clone1_type_eigenvalues(params: &CloneParams, budget: &Budget) -> Result<Vec<(TypeVector, f64)>> {
    let d = params.d();
    Budget::check("types", count_types(params.m(), d), budget.max_types)?;
    let amps = Amplitudes::new(params, d);
    Ok(enumerate_types(params.m(), d)
        .into_par_iter()
        .map(|t| {
            let ln_e = amps.ln_alpha_row_sum(t.counts()) - amps.lf().ln_multinomial(t.counts());
            (t, ln_e / LN_2)
        })
        .collect())
}

/// Flat local spectrum of the known-basis clone: one entry per type of `m`.
pub fn clone1_spectrum(params: &CloneParams, budget: &Budget) -> Result<WeightedSpectrum> {
    let lf = LogFactorials::new(params.m() as usize);
    let entries = clone1_type_eigenvalues(params, budget)?
        .into_iter()
        .map(|(t, e)| SpectrumEntry::new(e, lf.ln_multinomial(t.counts()) / LN_2))
        .collect();
    WeightedSpectrum::new(params.m(), entries)
}

/// Block form of the known-basis clone: `b_λ = Σ_m e_m K_{λm}`, with the
/// distinct `e_m` as per-block eigenvalues.
pub fn clone1_block_spectrum(params: &CloneParams, budget: &Budget) -> Result<BlockSpectrum> {
    let d = params.d();
    if d > budget.max_block_dim {
        return Err(crate::Error::UnsupportedDimension {
            d,
            max: budget.max_block_dim,
        });
    }
    let m = params.m();
    Budget::check("partitions", count_partitions(m, d), budget.max_partitions)?;
    let types = clone1_type_eigenvalues(params, budget)?;
    let lambdas = enumerate_partitions(m, d)?;
    let blocks = lambdas
        .into_par_iter()
        .map_init(KostkaCache::new, |cache, lambda| {
            let mut cs: Vec<CValue> = Vec::new();
            for (t, e) in &types {
                let k = cache.get(&lambda, t)?;
                if !k.is_zero() {
                    cs.push(CValue {
                        log2_value: *e,
                        multiplicity: k,
                    });
                }
            }
            cs.sort_by(|a, b| b.log2_value.total_cmp(&a.log2_value));
            let mut merged: Vec<CValue> = Vec::with_capacity(cs.len());
            for c in cs {
                match merged.last_mut() {
                    Some(last) if last.log2_value == c.log2_value => {
                        last.multiplicity.0 += c.multiplicity.0;
                    }
                    _ => merged.push(c),
                }
            }
            let mut acc = LogSumExp::default();
            for c in &merged {
                acc.add((c.log2_value + c.multiplicity.log2()) * LN_2);
            }
            Ok(Block {
                dim_u: dim_u(&lambda, d)?,
                dim_v: dim_v(&lambda)?,
                lambda,
                log2_b: acc.value() / LN_2,
                c_values: Some(merged),
                exact_b: None,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let bs = BlockSpectrum { n: m, d, blocks };
    bs.validate()?;
    Ok(bs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prob::ProbVector;
    use crate::spectra::{iid_type_spectrum, Measure};

    fn params(n: u32, m: u32, p: &str) -> CloneParams {
        CloneParams::new(n, m, p.parse().unwrap()).unwrap()
    }

    #[test]
    fn alpha_sq_hand_value() {
        let c = params(1, 2, "0.5,0.5");
        let v = alpha_sq(&TypeVector::new(vec![2, 0]), &TypeVector::new(vec![1, 0]), &c).unwrap();
        assert!((v.exp2() - 1.0 / 3.0).abs() < 1e-14);
        assert!(alpha_sq(&TypeVector::new(vec![2, 0]), &TypeVector::new(vec![0, 1]), &c).is_err());
    }

    #[test]
    fn alpha_sq_normalized() {
        for (n, m, p) in [
            (1, 2, "0.5,0.5"),
            (2, 5, "0.7,0.3"),
            (2, 4, "0.5,0.3,0.2"),
            (3, 3, "0.6,0.4"),
        ] {
            let c = params(n, m, p);
            let mut total = 0.0;
            for mv in enumerate_types(m, c.d()) {
                for nv in enumerate_types(n, c.d()) {
                    if nv.le(&mv) {
                        total += alpha_sq(&mv, &nv, &c).unwrap().exp2();
                    }
                }
            }
            assert!((total - 1.0).abs() < 1e-10, "{n} {m} {p}: {total}");
        }
    }

    #[test]
    fn identity_clone_is_iid() {
        let budget = Budget::default();
        let c = params(1, 1, "0.7,0.3");
        let mut vals = clone1_spectrum(&c, &budget).unwrap().expand_sorted(4).unwrap();
        vals.sort_by(f64::total_cmp);
        assert!((vals[0] - 0.3).abs() < 1e-14 && (vals[1] - 0.7).abs() < 1e-14);
        let p: ProbVector = "0.6,0.3,0.1".parse().unwrap();
        let c = CloneParams::new(5, 5, p.clone()).unwrap();
        let a = clone1_spectrum(&c, &budget).unwrap();
        let b = iid_type_spectrum(&p, 5, &budget).unwrap();
        for (x, y) in a.entries.iter().zip(&b.entries) {
            assert!((x.log2_value - y.log2_value).abs() < 1e-12);
            assert!((x.log2_multiplicity - y.log2_multiplicity).abs() < 1e-12);
        }
    }

    #[test]
    fn block_spectrum_consistent() {
        let budget = Budget::default();
        let one = clone1_block_spectrum(&params(1, 1, "0.7,0.3"), &budget).unwrap();
        assert_eq!(one.blocks.len(), 1);
        assert!(one.blocks[0].log2_b.abs() < 1e-12);
        for (n, m, p) in [(1, 2, "0.5,0.5"), (3, 7, "0.8,0.2"), (2, 5, "0.5,0.3,0.2")] {
            let bs = clone1_block_spectrum(&params(n, m, p), &budget).unwrap();
            assert!((bs.total_mass() - 1.0).abs() < 1e-10);
            let flat = bs.flatten(Measure::CMeasure).unwrap();
            let direct = clone1_spectrum(&params(n, m, p), &budget).unwrap();
            let (a, b) = (
                flat.expand_sorted(1 << 20).unwrap(),
                direct.expand_sorted(1 << 20).unwrap(),
            );
            assert_eq!(a.len(), b.len());
            for (x, y) in a.iter().zip(&b) {
                assert!((x - y).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn block_dimension_cap() {
        let c = params(1, 2, "0.25,0.25,0.25,0.25");
        assert!(matches!(
            clone1_block_spectrum(&c, &Budget::default()),
            Err(crate::Error::UnsupportedDimension { d: 4, max: 3 })
        ));
    }
}
