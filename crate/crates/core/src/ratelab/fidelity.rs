use num_bigint::BigUint;
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::math::{log2_add, log2_biguint};
use crate::spectra::{Block, BlockSpectrum, WeightedSpectrum};

/// Relative slack when comparing a log2 count against an integer exponent.
const COUNT_SLACK: f64 = 1e-12;
/// Slack before taking `⌊nR⌋`, so that `n × (k/n)` rounding just below `k`
/// still yields `k`.
const FLOOR_SLACK: f64 = 1e-9;

/// Mass of the `2^{⌊nR⌋}` largest eigenvalues: the optimal dilution
/// fidelity of a pure state with this Schmidt spectrum.
pub fn pure_dilution_fidelity(ws: &WeightedSpectrum, rate: f64) -> f64 {
    let k = (ws.n as f64 * rate.max(0.0) + FLOOR_SLACK).floor();
    let mut taken = f64::NEG_INFINITY;
    let mut mass = 0.0;
    for e in ws.merged_descending() {
        let next = log2_add(taken, e.log2_multiplicity);
        if next <= k + COUNT_SLACK {
            mass += e.mass();
            taken = next;
            continue;
        }
        if taken >= k {
            break;
        }
        // partial: 2^k − 2^taken copies of this value
        let room = if taken == f64::NEG_INFINITY {
            k
        } else {
            k + (-(taken - k).exp2()).ln_1p() / std::f64::consts::LN_2
        };
        mass += (e.log2_value + room).exp2();
        break;
    }
    mass.min(1.0)
}

/// Whether `x ≤ 2^t` for a big integer `x`.
pub(crate) fn le_pow2(x: &BigUint, t: f64) -> bool {
    if t < 0.0 {
        return x.bits() == 0;
    }
    let k = t.floor() as u64;
    if x <= &(BigUint::one() << k) {
        return true;
    }
    if x > &(BigUint::one() << (k + 1)) {
        return false;
    }
    log2_biguint(x) <= t
}

/// Result of packing blocks into a maximally entangled resource of Schmidt
/// rank `2^{nR}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SigmaDilution {
    pub rate: f64,
    /// The effective rate `Rⁿ ≤ R`.
    pub effective_rate: f64,
    pub fidelity: f64,
    pub blocks_used: usize,
}

/// Groups block indices by equal `d_λ`, ascending.
fn dim_groups(bs: &BlockSpectrum) -> Vec<Vec<&Block>> {
    let mut order: Vec<&Block> = bs.blocks.iter().collect();
    order.sort_by(|a, b| a.dim_v.0.cmp(&b.dim_v.0));
    let mut groups: Vec<Vec<&Block>> = Vec::new();
    for b in order {
        match groups.last_mut() {
            Some(g) if g[0].dim_v == b.dim_v => g.push(b),
            _ => groups.push(vec![b]),
        }
    }
    groups
}

/// Packs whole `d_λ`-levels, smallest first, while `Σ d_λ ≤ 2^{nR}`. The
/// effective rate is the supremum of `S` for which `{λ : d_λ ≤ 2^{nS}}` is
/// the packed set, capped at `R`.
pub fn sigma_dilution(bs: &BlockSpectrum, rate: f64) -> SigmaDilution {
    let n = bs.n as f64;
    let budget = n * rate;
    let mut used = BigUint::default();
    let mut fidelity = 0.0;
    let mut blocks_used = 0;
    let mut effective_rate = rate;
    for group in dim_groups(bs) {
        let mut next = used.clone();
        for b in &group {
            next += &b.dim_v.0;
        }
        if !le_pow2(&next, budget) {
            effective_rate = rate.min(group[0].dim_v.log2() / n);
            break;
        }
        used = next;
        blocks_used += group.len();
        fidelity += group.iter().map(|b| b.mass()).sum::<f64>();
    }
    SigmaDilution {
        rate,
        effective_rate,
        fidelity: fidelity.min(1.0),
        blocks_used,
    }
}

/// Dilution fidelity of the block-diagonal mixture of maximally entangled
/// states with the same block weights.
pub fn sigma_dilution_fidelity(bs: &BlockSpectrum, rate: f64) -> f64 {
    sigma_dilution(bs, rate).fidelity
}

/// Mass of the blocks with `d_λ ≤ 2^{nR}`.
pub fn dimension_window_mass(bs: &BlockSpectrum, rate: f64) -> f64 {
    let budget = bs.n as f64 * rate;
    bs.blocks
        .iter()
        .filter(|b| le_pow2(&b.dim_v.0, budget))
        .map(Block::mass)
        .sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FidelityPoint {
    #[serde(rename = "R")]
    pub rate: f64,
    pub fidelity: f64,
}

/// Fidelity as a function of the dilution rate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FidelityCurve {
    pub n: u32,
    pub points: Vec<FidelityPoint>,
}

/// CSV row of a fidelity curve.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct FidelityRow {
    pub n: u32,
    #[serde(rename = "R")]
    pub rate: f64,
    pub fidelity: f64,
}

impl FidelityCurve {
    pub fn rows(&self) -> Vec<FidelityRow> {
        self.points
            .iter()
            .map(|p| FidelityRow {
                n: self.n,
                rate: p.rate,
                fidelity: p.fidelity,
            })
            .collect()
    }
}

pub fn pure_fidelity_curve(ws: &WeightedSpectrum, rates: &[f64]) -> FidelityCurve {
    FidelityCurve {
        n: ws.n,
        points: rates
            .par_iter()
            .map(|&rate| FidelityPoint {
                rate,
                fidelity: pure_dilution_fidelity(ws, rate),
            })
            .collect(),
    }
}

pub fn sigma_fidelity_curve(bs: &BlockSpectrum, rates: &[f64]) -> FidelityCurve {
    FidelityCurve {
        n: bs.n,
        points: rates
            .par_iter()
            .map(|&rate| FidelityPoint {
                rate,
                fidelity: sigma_dilution_fidelity(bs, rate),
            })
            .collect(),
    }
}

/// `count` evenly spaced rates on `[lo, hi]`.
pub fn rate_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..count)
            .map(|i| lo + (hi - lo) * i as f64 / (count - 1) as f64)
            .collect(),
    }
}
