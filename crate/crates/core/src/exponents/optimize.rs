use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::objective::{golden_min, inner_min};
use crate::error::{invalid, Error, Result};
use crate::math::{binary_entropy, entropy_bits, relative_entropy_bits};
use crate::prob::ProbVector;

pub const DEFAULT_GRID: usize = 2001;
pub const DEFAULT_TOL: f64 = 1e-6;
/// Largest local dimension handled by the clone exponent optimizer.
pub const MAX_EXPONENT_DIM: usize = 3;

/// Dilution exponent problem for the known-basis clone at ratio `r`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExponentProblem {
    #[serde(rename = "R")]
    pub rate: f64,
    pub r: f64,
    pub p: ProbVector,
    pub grid: usize,
    pub tol: f64,
}

impl ExponentProblem {
    pub fn new(rate: f64, r: f64, p: ProbVector) -> Self {
        Self {
            rate,
            r,
            p,
            grid: DEFAULT_GRID,
            tol: DEFAULT_TOL,
        }
    }

    fn validate(&self) -> Result<()> {
        check_rate(self.rate, &self.p)?;
        if !(self.r >= 1.0) || !self.r.is_finite() {
            return Err(invalid(format!("ratio r must be ≥ 1, got {}", self.r)));
        }
        if self.grid < 3 {
            return Err(invalid("grid needs at least 3 points"));
        }
        if !(self.tol > 0.0) {
            return Err(invalid("tol must be positive"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExponentResult {
    pub value: f64,
    pub argmin_q: ProbVector,
    pub argmin_qprime: ProbVector,
}

fn check_rate(rate: f64, p: &ProbVector) -> Result<()> {
    if !p.is_full_support() {
        return Err(invalid("exponents need a full-support p"));
    }
    let max = (p.dim() as f64).log2();
    if !(rate >= 0.0) {
        return Err(invalid(format!("rate must be non-negative, got {rate}")));
    }
    if rate > max + 1e-12 {
        return Err(Error::InfeasibleRate { rate, max });
    }
    Ok(())
}

fn normalized(v: &[f64]) -> Result<ProbVector> {
    let s: f64 = v.iter().map(|x| x.max(0.0)).sum();
    ProbVector::new(v.iter().map(|x| x.max(0.0) / s).collect())
}

/// Bisection for `x ∈ [0, ½]` with `h(x) = target`.
fn binary_entropy_inverse(target: f64) -> f64 {
    if target >= 1.0 - 1e-12 {
        return 0.5;
    }
    let (mut lo, mut hi) = (0.0, 0.5);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if binary_entropy(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    hi
}

/// Index of the first strict minimum.
fn argmin(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, &v) in values.iter().enumerate() {
        if v < values[best] {
            best = i;
        }
    }
    best
}

/// Minimum over `H(q) ≥ R` and `q′ ≤ r q` of
/// `h(1/r) − Σ q_i h(q′_i / (r q_i)) + (1/r) D(q′||p)`.
///
/// The inner minimum over `q′` is solved in closed form up to one scalar.
/// The outer objective is convex in `q` and vanishes at `p`, so for
/// `R > H(p)` the minimum sits on the entropy boundary `H(q) = R`; that
/// boundary is scanned on a grid and the best cell refined by golden
/// section.
pub fn clone_dilution_exponent(prob: &ExponentProblem) -> Result<ExponentResult> {
    prob.validate()?;
    let d = prob.p.dim();
    if d > MAX_EXPONENT_DIM {
        return Err(Error::UnsupportedDimension {
            d,
            max: MAX_EXPONENT_DIM,
        });
    }
    let p = prob.p.probs();
    if prob.rate <= prob.p.entropy() {
        return Ok(ExponentResult {
            value: 0.0,
            argmin_q: prob.p.clone(),
            argmin_qprime: prob.p.clone(),
        });
    }
    let point: Box<dyn Fn(f64) -> Vec<f64> + Sync> = match d {
        2 => Box::new(|x: f64| vec![x, 1.0 - x]),
        _ => Box::new(ternary_boundary(prob.rate)),
    };
    // d = 2 scans the feasible segment x ∈ [a, 1 − a] with h(a) = R
    let (lo, hi) = if d == 2 {
        let a = binary_entropy_inverse(prob.rate);
        (a, 1.0 - a)
    } else {
        (0.0, 2.0 * PI)
    };
    let g = |t: f64| inner_min(&point(t), prob.r, p).0;
    let step = (hi - lo) / (prob.grid - 1) as f64;
    let values: Vec<f64> = (0..prob.grid)
        .into_par_iter()
        .map(|i| g(lo + step * i as f64))
        .collect();
    let i = argmin(&values);
    let (mut best_t, mut best_v) = (lo + step * i as f64, values[i]);
    let (a, b) = if d == 2 {
        ((best_t - step).max(lo), (best_t + step).min(hi))
    } else {
        (best_t - step, best_t + step)
    };
    let (t, v) = golden_min(a, b, prob.tol.min(1e-9) * (hi - lo), g);
    if v < best_v {
        best_t = t;
        best_v = v;
    }
    let q = point(best_t);
    let (value, qp) = inner_min(&q, prob.r, p);
    debug_assert!((value - best_v).abs() < 1e-12);
    Ok(ExponentResult {
        value: value.max(0.0),
        argmin_q: normalized(&q)?,
        argmin_qprime: normalized(&qp)?,
    })
}

/// The point where the ray from the uniform distribution at angle `θ`
/// leaves `{H ≥ R}`: either the entropy level curve or the simplex edge.
fn ternary_boundary(rate: f64) -> impl Fn(f64) -> Vec<f64> + Sync {
    let u = 1.0 / 3.0;
    let e1 = [1.0 / 2f64.sqrt(), -1.0 / 2f64.sqrt(), 0.0];
    let e2 = [1.0 / 6f64.sqrt(), 1.0 / 6f64.sqrt(), -2.0 / 6f64.sqrt()];
    move |theta: f64| {
        let (s, c) = theta.sin_cos();
        let v: Vec<f64> = (0..3).map(|i| c * e1[i] + s * e2[i]).collect();
        let at = |t: f64| -> Vec<f64> { v.iter().map(|vi| (u + t * vi).max(0.0)).collect() };
        let s_max = v
            .iter()
            .filter(|&&vi| vi < 0.0)
            .map(|vi| u / -vi)
            .fold(f64::INFINITY, f64::min);
        if entropy_bits(&at(s_max)) >= rate {
            return at(s_max);
        }
        let (mut lo, mut hi) = (0.0, s_max);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if entropy_bits(&at(mid)) >= rate {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        at(lo)
    }
}

/// `q_s ∝ p^s`.
fn tilt(p: &[f64], s: f64) -> Vec<f64> {
    let w: Vec<f64> = p.iter().map(|x| x.powf(s)).collect();
    let z: f64 = w.iter().sum();
    w.into_iter().map(|x| x / z).collect()
}

/// Minimizer of `D(q||p)` over `H(q) ≥ R`.
///
/// The minimizer lies on the tilted family `q ∝ p^s`, `s ∈ [0, 1]`, whose
/// entropy decreases in `s`; `s` is found by bisection on `H(q_s) = R`.
pub fn iid_dilution_argmin(rate: f64, p: &ProbVector) -> Result<ProbVector> {
    check_rate(rate, p)?;
    if rate <= p.entropy() {
        return Ok(p.clone());
    }
    // H(q_s) is flat near s = 0, so resolve the full-entropy end directly
    if rate >= (p.dim() as f64).log2() - 1e-12 {
        return ProbVector::uniform(p.dim());
    }
    let (mut lo, mut hi) = (0.0, 1.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if entropy_bits(&tilt(p.probs(), mid)) >= rate {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    normalized(&tilt(p.probs(), lo))
}

/// `min_{H(q) ≥ R} D(q||p)`: the dilution error exponent of `|φ⟩^{⊗n}`.
pub fn iid_dilution_exponent(rate: f64, p: &ProbVector) -> Result<f64> {
    let q = iid_dilution_argmin(rate, p)?;
    Ok(relative_entropy_bits(q.probs(), p.probs()).max(0.0))
}

/// One row of an exponent curve export.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExponentRow {
    #[serde(rename = "R")]
    pub rate: f64,
    pub clone_exponent: f64,
    pub iid_exponent_over_r: f64,
    pub iid_exponent: f64,
}

/// Clone and i.i.d. exponents over a list of rates.
pub fn exponent_curve(rates: &[f64], r: f64, p: &ProbVector) -> Result<Vec<ExponentRow>> {
    rates
        .iter()
        .map(|&rate| {
            let clone = clone_dilution_exponent(&ExponentProblem::new(rate, r, p.clone()))?.value;
            let iid = iid_dilution_exponent(rate, p)?;
            Ok(ExponentRow {
                rate,
                clone_exponent: clone,
                iid_exponent_over_r: iid / r,
                iid_exponent: iid,
            })
        })
        .collect()
}
