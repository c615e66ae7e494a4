use serde::{Deserialize, Serialize};

use super::optimize::{clone_dilution_exponent, ExponentProblem};
use crate::error::{invalid, Result};
use crate::prob::ProbVector;

/// Largest rate whose clone dilution exponent stays within `η`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tradeoff {
    pub eta: f64,
    #[serde(rename = "R")]
    pub rate: f64,
    /// Exponent at `R = log2 d`, the largest achievable.
    pub max_exponent: f64,
    /// `η` is at or above the largest achievable exponent, so the rate is
    /// capped at `log2 d`.
    pub saturated: bool,
}

/// Inverts the non-decreasing map `R ↦ E(R)` on `[H(p), log2 d]`:
/// `sup {R : E(R) ≤ η}` by bisection on `R`.
pub fn rate_exponent_tradeoff(eta: f64, r: f64, p: &ProbVector) -> Result<Tradeoff> {
    if !(eta >= 0.0) {
        return Err(invalid(format!("eta must be non-negative, got {eta}")));
    }
    let exponent = |rate: f64| clone_dilution_exponent(&ExponentProblem::new(rate, r, p.clone())).map(|e| e.value);
    let top = (p.dim() as f64).log2();
    let max_exponent = exponent(top)?;
    if eta >= max_exponent {
        return Ok(Tradeoff {
            eta,
            rate: top,
            max_exponent,
            saturated: true,
        });
    }
    let (mut lo, mut hi) = (p.entropy(), top);
    while hi - lo > 1e-9 {
        let mid = 0.5 * (lo + hi);
        if exponent(mid)? <= eta {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(Tradeoff {
        eta,
        rate: lo,
        max_exponent,
        saturated: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_eta_gives_entropy() {
        let p: ProbVector = "0.7,0.3".parse().unwrap();
        let t = rate_exponent_tradeoff(0.0, 2.0, &p).unwrap();
        assert!((t.rate - p.entropy()).abs() < 1e-6 && !t.saturated);
    }

    #[test]
    fn saturation_and_inversion() {
        let p: ProbVector = "0.7,0.3".parse().unwrap();
        let t = rate_exponent_tradeoff(1.0, 2.0, &p).unwrap();
        assert!(t.saturated && t.rate == 1.0);
        let half = rate_exponent_tradeoff(t.max_exponent / 2.0, 2.0, &p).unwrap();
        let back = clone_dilution_exponent(&ExponentProblem::new(half.rate, 2.0, p))
            .unwrap()
            .value;
        assert!((back - t.max_exponent / 2.0).abs() < 1e-6);
    }
}
