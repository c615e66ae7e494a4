use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::sampler::{BlockSampler, YoungSampler};
use crate::error::{invalid, Result};
use crate::math::log2_biguint;
use crate::ratelab::fidelity::le_pow2;
use crate::repthy::{dim_v, Partition};
use crate::spectra::BlockSpectrum;

pub const RNG_NAME: &str = "ChaCha8Rng";
/// Trials per RNG stream. Chunk `k` uses `seed_from_u64(seed)` with stream
/// `k`, so results do not depend on the thread count.
pub const CHUNK_SIZE: usize = 8192;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub lambda: Partition,
    pub success: bool,
    pub ebits: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProtocolKind {
    Dilution,
    Distillation,
}

/// How the per-chunk random streams were derived.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RngInfo {
    pub algorithm: String,
    pub seed: u64,
    pub chunk_size: usize,
    /// Stream ids, one per chunk, in trial order.
    pub streams: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProtocolRun {
    pub kind: ProtocolKind,
    pub n: u32,
    #[serde(rename = "R")]
    pub rate: Option<f64>,
    pub trials: usize,
    pub seed: u64,
    pub rng: RngInfo,
    pub results: Vec<TrialRecord>,
}

fn run_chunks<F>(trials: usize, seed: u64, f: F) -> Result<(RngInfo, Vec<TrialRecord>)>
where
    F: Fn(&mut ChaCha8Rng) -> TrialRecord + Sync,
{
    if trials == 0 {
        return Err(invalid("trials must be at least 1"));
    }
    let chunks = trials.div_ceil(CHUNK_SIZE);
    let results = (0..chunks)
        .into_par_iter()
        .flat_map_iter(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k as u64);
            let len = CHUNK_SIZE.min(trials - k * CHUNK_SIZE);
            (0..len).map(|_| f(&mut rng)).collect::<Vec<_>>()
        })
        .collect();
    let info = RngInfo {
        algorithm: RNG_NAME.to_string(),
        seed,
        chunk_size: CHUNK_SIZE,
        streams: (0..chunks as u64).collect(),
    };
    Ok((info, results))
}

/// Ebits spent by the dilution protocol at rate `R`: `log2` of
/// `Σ_{d_λ ≤ 2^{nR}} d_λ dim U_λ`.
pub fn dilution_ebits(bs: &BlockSpectrum, rate: f64) -> f64 {
    let budget = bs.n as f64 * rate;
    let total: BigUint = bs
        .blocks
        .iter()
        .filter(|b| le_pow2(&b.dim_v.0, budget))
        .map(|b| &b.dim_v.0 * &b.dim_u.0)
        .sum();
    log2_biguint(&total)
}

/// Upper bound on the dilution cost: `nR + d log2(n+1) + d² log2 n`.
pub fn dilution_ebit_bound(n: u32, d: usize, rate: f64) -> f64 {
    let (n, d) = (n as f64, d as f64);
    n * rate + d * (n + 1.0).log2() + d * d * n.log2()
}

/// Dilution: Bob prepares the state locally, both measure the Young index,
/// and the `U_λ ⊗ V_λ` part is teleported when `d_λ ≤ 2^{nR}`.
pub fn simulate_dilution(bs: &BlockSpectrum, rate: f64, trials: usize, seed: u64) -> Result<ProtocolRun> {
    if !(rate >= 0.0) {
        return Err(invalid(format!("rate must be non-negative, got {rate}")));
    }
    let sampler = BlockSampler::new(bs)?;
    let ebits = dilution_ebits(bs, rate);
    let budget = bs.n as f64 * rate;
    let fits: std::collections::HashMap<Partition, bool> = bs
        .blocks
        .iter()
        .map(|b| (b.lambda.clone(), le_pow2(&b.dim_v.0, budget)))
        .collect();
    let (rng, results) = run_chunks(trials, seed, |rng| {
        let lambda = sampler.sample(rng);
        let success = fits[&lambda];
        TrialRecord { lambda, success, ebits }
    })?;
    Ok(ProtocolRun {
        kind: ProtocolKind::Dilution,
        n: bs.n,
        rate: Some(rate),
        trials,
        seed,
        rng,
        results,
    })
}

/// Universal distillation: measure the Young index and keep the maximally
/// entangled state of Schmidt rank `d_λ`. Only the sampler is consulted.
pub fn simulate_distillation<S: YoungSampler>(sampler: &S, trials: usize, seed: u64) -> Result<ProtocolRun> {
    let (rng, results) = run_chunks(trials, seed, |rng| {
        let lambda = sampler.sample(rng);
        let ebits = dim_v(&lambda).map(|dv| dv.log2()).unwrap_or(f64::NAN);
        TrialRecord {
            lambda,
            success: true,
            ebits,
        }
    })?;
    Ok(ProtocolRun {
        kind: ProtocolKind::Distillation,
        n: sampler.n(),
        rate: None,
        trials,
        seed,
        rng,
        results,
    })
}

/// Aggregate statistics of a run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProtocolSummary {
    pub n: u32,
    pub trials: usize,
    pub success_rate: f64,
    /// Mean of `ebits / n`.
    pub mean_yield: f64,
    pub yield_q01: f64,
    pub yield_q05: f64,
    pub yield_q50: f64,
    pub ebits: f64,
}

impl ProtocolRun {
    /// Per-trial yields `(1/n) log2 d_λ` (distillation) or charged ebits per
    /// copy (dilution).
    pub fn yields(&self) -> Vec<f64> {
        self.results.iter().map(|t| t.ebits / self.n as f64).collect()
    }

    /// Empirical `ε`-quantile: the smallest sample `y` with more than `εN`
    /// samples at or below it.
    pub fn yield_quantile(&self, epsilon: f64) -> f64 {
        let mut ys = self.yields();
        ys.sort_by(f64::total_cmp);
        let k = ((epsilon * ys.len() as f64).floor() as usize).min(ys.len() - 1);
        ys[k]
    }

    pub fn success_rate(&self) -> f64 {
        self.results.iter().filter(|t| t.success).count() as f64 / self.trials as f64
    }

    pub fn summary(&self) -> ProtocolSummary {
        let ys = self.yields();
        ProtocolSummary {
            n: self.n,
            trials: self.trials,
            success_rate: self.success_rate(),
            mean_yield: ys.iter().sum::<f64>() / ys.len() as f64,
            yield_q01: self.yield_quantile(0.01),
            yield_q05: self.yield_quantile(0.05),
            yield_q50: self.yield_quantile(0.5),
            ebits: self.results.iter().map(|t| t.ebits).fold(f64::NEG_INFINITY, f64::max),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratelab::dimension_window_mass;
    use crate::spectra::iid_block_spectrum;
    use crate::{Budget, ProbVector};

    fn iid(p: &str, n: u32) -> BlockSpectrum {
        iid_block_spectrum(&p.parse::<ProbVector>().unwrap(), n, &Budget::default()).unwrap()
    }

    #[test]
    fn single_block() {
        let bs = iid("1,0", 6);
        let run = simulate_dilution(&bs, 0.0, 100, 1).unwrap();
        assert_eq!(run.success_rate(), 1.0);
        assert_eq!(run.results[0].ebits, 0.0);
        let run = simulate_distillation(&BlockSampler::new(&bs).unwrap(), 50, 1).unwrap();
        assert!(run.yields().iter().all(|&y| y == 0.0));
    }

    #[test]
    fn dilution_success_matches_window_mass() {
        let bs = iid("0.7,0.3", 50);
        let run = simulate_dilution(&bs, 0.95, 100_000, 7).unwrap();
        let exact = dimension_window_mass(&bs, 0.95);
        let sigma = (exact * (1.0 - exact) / 1e5).sqrt();
        assert!(
            (run.success_rate() - exact).abs() <= 3.0 * sigma.max(1e-6),
            "{} vs {exact}",
            run.success_rate()
        );
        assert!(run.results[0].ebits <= dilution_ebit_bound(50, 2, 0.95));
    }

    #[test]
    fn deterministic_across_thread_counts() {
        let bs = iid("0.6,0.4", 30);
        let a = simulate_dilution(&bs, 0.9, 20_000, 42).unwrap();
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let b = pool.install(|| simulate_dilution(&bs, 0.9, 20_000, 42).unwrap());
        assert_eq!(a, b);
        assert_eq!(a.rng.streams, vec![0, 1, 2]);
        let c = simulate_dilution(&bs, 0.9, 20_000, 43).unwrap();
        assert_ne!(a.results, c.results);
    }

    #[test]
    fn uniform_mean_yield() {
        let bs = iid("1/2,1/2", 100);
        let run = simulate_distillation(&BlockSampler::new(&bs).unwrap(), 100_000, 3).unwrap();
        let mean = run.summary().mean_yield;
        assert!((mean - 0.9239).abs() < 0.003, "{mean}");
    }
}
