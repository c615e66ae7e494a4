//! Dense brute-force cross-checks at tiny scale.

use serde::Serialize;
use syment_core::cloning::{
    clone1_block_spectrum, clone1_spectrum, clone2_spectrum, dense_clone1_oracle, dense_clone2_oracle, CloneParams,
};
use syment_core::exponents::{clone_dilution_exponent, finite_m_exponent_oracle, ExponentProblem};
use syment_core::spectra::{
    dense_oracle_spectrum, iid_block_spectrum, iid_type_spectrum, BlockSpectrum, WeightedSpectrum,
};
use syment_core::{Budget, Error, ProbVector};

use crate::args::OracleScope;

/// Eigenvalue and block-weight agreement required of the dense comparisons.
pub const DENSE_TOL: f64 = 1e-10;
/// Allowed gap between the finite-m oracle and the exponent optimizer.
pub const EXPONENT_GAP_TOL: f64 = 0.02;
/// Output count of the finite-m exponent oracle.
pub const EXPONENT_ORACLE_M: u32 = 400;
const EXPANSION_LIMIT: usize = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// A budget cap stopped the check; other checks still run.
    CapExceeded,
    Error,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub scope: &'static str,
    pub name: String,
    pub status: Status,
    pub max_deviation: Option<f64>,
    pub tolerance: f64,
    pub detail: String,
}

impl Check {
    pub fn line(&self) -> String {
        let label = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::CapExceeded => "CAP",
            Status::Error => "ERROR",
        };
        let dev = self
            .max_deviation
            .map_or_else(|| "-".to_string(), |d| format!("{d:.3e}"));
        format!(
            "{label} {}/{}: max deviation {dev} (tol {:.0e}) {}",
            self.scope, self.name, self.tolerance, self.detail
        )
    }
}

fn check(scope: &'static str, name: String, tolerance: f64, run: impl FnOnce() -> Result<f64, Error>) -> Check {
    let (status, max_deviation, detail) = match run() {
        Ok(dev) if dev <= tolerance => (Status::Pass, Some(dev), String::new()),
        Ok(dev) => (Status::Fail, Some(dev), String::new()),
        Err(e @ Error::BudgetExceeded { .. }) => (Status::CapExceeded, None, e.to_string()),
        Err(e) => (Status::Error, None, e.to_string()),
    };
    Check {
        scope,
        name,
        status,
        max_deviation,
        tolerance,
        detail,
    }
}

fn flat_deviation(a: &WeightedSpectrum, b: &WeightedSpectrum) -> Result<f64, Error> {
    let (x, y) = (a.expand_sorted(EXPANSION_LIMIT)?, b.expand_sorted(EXPANSION_LIMIT)?);
    if x.len() != y.len() {
        return Ok(f64::INFINITY);
    }
    Ok(x.iter().zip(&y).map(|(u, v)| (u - v).abs()).fold(0.0, f64::max))
}

fn block_deviation(a: &BlockSpectrum, b: &BlockSpectrum) -> f64 {
    if a.blocks.len() != b.blocks.len() {
        return f64::INFINITY;
    }
    a.blocks
        .iter()
        .zip(&b.blocks)
        .map(|(x, y)| {
            if x.lambda != y.lambda {
                f64::INFINITY
            } else {
                (x.log2_b.exp2() - y.log2_b.exp2()).abs()
            }
        })
        .fold(0.0, f64::max)
}

fn pv(s: &str) -> ProbVector {
    s.parse().expect("fixed probability vectors parse")
}

fn spectra_checks(budget: &Budget) -> Vec<Check> {
    let mut out = Vec::new();
    let cases = [("0.7,0.3", 4), ("1/3,2/3", 4), ("0.5,0.3,0.2", 2)];
    for (p, max_n) in cases {
        let p = pv(p);
        for n in 1..=max_n {
            out.push(check("spectra", format!("iid p=({p}) n={n}"), DENSE_TOL, || {
                let o = dense_oracle_spectrum(&p, n, budget)?;
                let flat = flat_deviation(&o.flat, &iid_type_spectrum(&p, n, budget)?)?;
                let block = block_deviation(&o.block, &iid_block_spectrum(&p, n, budget)?);
                Ok(flat.max(block))
            }));
        }
    }
    out
}

fn clone1_checks(budget: &Budget) -> Vec<Check> {
    let p = pv("0.7,0.3");
    let mut out = Vec::new();
    for m in 1..=4u32 {
        for n in 1..=m {
            out.push(check("clone1", format!("n={n} m={m}"), DENSE_TOL, || {
                let c = CloneParams::new(n, m, p.clone())?;
                let o = dense_clone1_oracle(&c, budget)?;
                let flat = flat_deviation(&o.flat, &clone1_spectrum(&c, budget)?)?;
                let block = block_deviation(&o.block, &clone1_block_spectrum(&c, budget)?);
                Ok(flat.max(block))
            }));
        }
    }
    out
}

fn clone2_checks(budget: &Budget) -> Vec<Check> {
    let p = pv("0.7,0.3");
    let mut out = Vec::new();
    for m in 1..=4u32 {
        for n in 1..=m {
            out.push(check("clone2", format!("n={n} m={m} dephased"), DENSE_TOL, || {
                let c = CloneParams::new(n, m, p.clone())?;
                let o = dense_clone2_oracle(&c, budget)?;
                flat_deviation(&o.dephased, &clone2_spectrum(&c, budget)?.spectrum)
            }));
        }
    }
    out
}

fn exponent_checks(budget: &Budget) -> Vec<Check> {
    let name = format!("finite m={EXPONENT_ORACLE_M} vs optimizer, p=(0.7,0.3) r=2 R=1");
    vec![check("exponent", name, EXPONENT_GAP_TOL, || {
        let p = pv("0.7,0.3");
        let target = clone_dilution_exponent(&ExponentProblem::new(1.0, 2.0, p.clone()))?.value;
        let c = CloneParams::from_ratio(EXPONENT_ORACLE_M, 2.0, p)?;
        let oracle = finite_m_exponent_oracle(&c, 1.0, budget)?;
        Ok((oracle - target).abs())
    })]
}

pub fn run_checks(scope: OracleScope, budget: &Budget) -> Vec<Check> {
    let mut out = Vec::new();
    let all = scope == OracleScope::All;
    if all || scope == OracleScope::Spectra {
        out.extend(spectra_checks(budget));
    }
    if all || scope == OracleScope::Clone1 {
        out.extend(clone1_checks(budget));
    }
    if all || scope == OracleScope::Clone2 {
        out.extend(clone2_checks(budget));
    }
    if all || scope == OracleScope::Exponent {
        out.extend(exponent_checks(budget));
    }
    out
}
