use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::spectra::WeightedSpectrum;

/// Slack on cumulative-mass comparisons so that masses which are exactly
/// `1 − ε` or `ε` in real arithmetic are not lost to rounding.
pub const QUANTILE_SLACK: f64 = 1e-12;

/// Which side of the threshold `2^{−nR}` to sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    /// Values `≥ 2^{−nR}` (ties included).
    AtLeast,
    /// Values `< 2^{−nR}`.
    Below,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EstimateKind {
    CostQuantile,
    DistillQuantile,
}

/// A finite-n rate estimate in bits per copy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RateEstimate {
    pub rate: f64,
    pub epsilon: f64,
    pub n: u32,
    pub kind: EstimateKind,
}

/// Mass on one side of the threshold `2^{−nR}`.
pub fn threshold_mass(ws: &WeightedSpectrum, rate: f64, side: Side) -> f64 {
    let cut = -(ws.n as f64) * rate;
    ws.entries
        .iter()
        .filter(|e| (e.log2_value >= cut) == (side == Side::AtLeast))
        .map(|e| e.mass())
        .sum()
}

/// Distinct per-copy surprisals `−(1/n) log2 v`, ascending, with their mass.
pub fn surprisal_distribution(ws: &WeightedSpectrum) -> Vec<(f64, f64)> {
    let n = ws.n as f64;
    ws.merged_descending()
        .into_iter()
        .map(|e| (-e.log2_value / n, e.mass()))
        .collect()
}

fn check_epsilon(epsilon: f64) -> Result<()> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(invalid(format!("epsilon must lie in (0, 1), got {epsilon}")));
    }
    Ok(())
}

/// Smallest `R` whose at-least mass reaches `1 − ε`: the upper quantile
/// standing in for the probabilistic limsup.
pub fn estimate_ec(ws: &WeightedSpectrum, epsilon: f64) -> Result<RateEstimate> {
    check_epsilon(epsilon)?;
    let dist = surprisal_distribution(ws);
    let mut cum = 0.0;
    let mut rate = dist.last().map_or(0.0, |x| x.0);
    for &(x, mass) in &dist {
        cum += mass;
        if cum >= 1.0 - epsilon - QUANTILE_SLACK {
            rate = x;
            break;
        }
    }
    Ok(RateEstimate {
        rate,
        epsilon,
        n: ws.n,
        kind: EstimateKind::CostQuantile,
    })
}

/// Largest `R` with `mass{−(1/n) log2 v < R} ≤ ε`: the lower quantile
/// standing in for the probabilistic liminf.
pub fn estimate_ed(ws: &WeightedSpectrum, epsilon: f64) -> Result<RateEstimate> {
    check_epsilon(epsilon)?;
    let dist = surprisal_distribution(ws);
    let mut cum = 0.0;
    let mut rate = dist.last().map_or(0.0, |x| x.0);
    for &(x, mass) in &dist {
        cum += mass;
        if cum > epsilon + QUANTILE_SLACK {
            rate = x;
            break;
        }
    }
    Ok(RateEstimate {
        rate,
        epsilon,
        n: ws.n,
        kind: EstimateKind::DistillQuantile,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::{iid_type_spectrum, SpectrumEntry};
    use crate::{Budget, ProbVector};

    fn flat(n: u32, r0: f64) -> WeightedSpectrum {
        let k = n as f64 * r0;
        WeightedSpectrum::new(n, vec![SpectrumEntry::new(-k, k)]).unwrap()
    }

    #[test]
    fn deterministic_spectrum() {
        let ws = flat(10, 0.7);
        assert_eq!(threshold_mass(&ws, 0.71, Side::AtLeast), 1.0);
        assert_eq!(threshold_mass(&ws, 0.69, Side::AtLeast), 0.0);
        assert_eq!(threshold_mass(&ws, 0.7, Side::AtLeast), 1.0);
        for eps in [0.001, 0.3, 0.9] {
            assert!((estimate_ec(&ws, eps).unwrap().rate - 0.7).abs() < 1e-15);
            assert!((estimate_ed(&ws, eps).unwrap().rate - 0.7).abs() < 1e-15);
        }
    }

    #[test]
    fn epsilon_domain() {
        let ws = flat(4, 0.5);
        for eps in [0.0, 1.0, -0.1, f64::NAN] {
            assert!(estimate_ec(&ws, eps).is_err());
            assert!(estimate_ed(&ws, eps).is_err());
        }
    }

    #[test]
    fn iid_midpoint_and_quantiles() {
        let p: ProbVector = "0.7,0.3".parse().unwrap();
        let h = p.entropy();
        let ws = iid_type_spectrum(&p, 100, &Budget::default()).unwrap();
        let mid = threshold_mass(&ws, h, Side::AtLeast);
        assert!((mid - 0.5).abs() < 0.1, "{mid}");
        let sum = mid + threshold_mass(&ws, h, Side::Below);
        assert!((sum - 1.0).abs() < 1e-12);
        let ws = iid_type_spectrum(&p, 200, &Budget::default()).unwrap();
        let ec = estimate_ec(&ws, 0.01).unwrap().rate;
        let ed = estimate_ed(&ws, 0.01).unwrap().rate;
        assert!(ed <= ec);
        assert!((ec - 0.9730).abs() < 5e-4, "{ec}");
        assert!((ed - 0.7896).abs() < 5e-4, "{ed}");
    }
}
