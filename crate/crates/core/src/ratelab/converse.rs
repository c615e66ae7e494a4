use serde::{Deserialize, Serialize};

use super::quantile::{estimate_ec, estimate_ed};
use crate::error::{invalid, Result};
use crate::spectra::WeightedSpectrum;

/// Largest spread of the `Ec − Ed` gap across ε (at the largest n) still
/// called ε-insensitive.
pub const CONVERSE_SPREAD_TOL: f64 = 0.02;

/// One `(n, ε)` row of a strong-converse report.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConverseRow {
    pub n: u32,
    pub epsilon: f64,
    #[serde(rename = "Ec")]
    pub ec: f64,
    #[serde(rename = "Ed")]
    pub ed: f64,
    pub gap: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConverseReport {
    pub rows: Vec<ConverseRow>,
    /// Largest gap over ε at the largest n.
    pub final_gap: f64,
    /// `max_ε gap − min_ε gap` at the largest n.
    pub epsilon_spread: f64,
    /// The largest-ε gap is smaller at the largest n than at the smallest.
    pub gap_shrinks: bool,
    pub strong_converse_consistent: bool,
}

/// Cost and distillation quantiles for a family of spectra indexed by
/// increasing n, checking the finite-n shadow of `Ec = Ed`.
pub fn strong_converse_report(family: &[WeightedSpectrum], epsilons: &[f64]) -> Result<ConverseReport> {
    if family.is_empty() || epsilons.is_empty() {
        return Err(invalid("need at least one spectrum and one epsilon"));
    }
    if family.windows(2).any(|w| w[0].n >= w[1].n) {
        return Err(invalid("family must be indexed by strictly increasing n"));
    }
    let mut rows = Vec::with_capacity(family.len() * epsilons.len());
    for ws in family {
        for &eps in epsilons {
            let ec = estimate_ec(ws, eps)?.rate;
            let ed = estimate_ed(ws, eps)?.rate;
            rows.push(ConverseRow {
                n: ws.n,
                epsilon: eps,
                ec,
                ed,
                gap: ec - ed,
            });
        }
    }
    let gaps_at = |n: u32| rows.iter().filter(move |r| r.n == n).map(|r| r.gap);
    let (first, last) = (family[0].n, family[family.len() - 1].n);
    let max_at = |n: u32| gaps_at(n).fold(f64::NEG_INFINITY, f64::max);
    let final_gap = max_at(last);
    let epsilon_spread = final_gap - gaps_at(last).fold(f64::INFINITY, f64::min);
    let gap_shrinks = (family.len() > 1 && final_gap < max_at(first)) || final_gap == 0.0;
    Ok(ConverseReport {
        strong_converse_consistent: gap_shrinks && epsilon_spread <= CONVERSE_SPREAD_TOL,
        rows,
        final_gap,
        epsilon_spread,
        gap_shrinks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::{iid_type_spectrum, SpectrumEntry};
    use crate::{Budget, ProbVector};

    #[test]
    fn deterministic_family_has_no_gap() {
        let family: Vec<_> = [4u32, 8, 16]
            .iter()
            .map(|&n| WeightedSpectrum::new(n, vec![SpectrumEntry::new(-(n as f64), n as f64)]).unwrap())
            .collect();
        let r = strong_converse_report(&family, &[0.01, 0.1]).unwrap();
        assert_eq!(r.final_gap, 0.0);
        assert!(r.strong_converse_consistent);
    }

    #[test]
    fn iid_gap_shrinks() {
        let p: ProbVector = "0.7,0.3".parse().unwrap();
        let family: Vec<_> = [50u32, 200, 800]
            .iter()
            .map(|&n| iid_type_spectrum(&p, n, &Budget::default()).unwrap())
            .collect();
        let r = strong_converse_report(&family, &[0.01, 0.05]).unwrap();
        assert!(r.gap_shrinks);
        assert!(strong_converse_report(&[family[1].clone(), family[0].clone()], &[0.01]).is_err());
    }
}
