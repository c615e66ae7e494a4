use std::io::Write;

use num_bigint::BigUint;
use serde::Serialize;
use serde_json::{json, Value};
use syment_core::cloning::{clone1_block_spectrum, clone1_spectrum, clone2_spectrum, CloneParams};
use syment_core::exponents::{
    clone_dilution_exponent, iid_dilution_exponent, rate_exponent_tradeoff, ExponentProblem, ExponentRow,
};
use syment_core::loccsim::{simulate_dilution, simulate_distillation, BlockSampler, ProtocolRun};
use syment_core::ratelab::{
    estimate_ec, estimate_ed, pure_fidelity_curve, rate_grid, sigma_fidelity_curve, strong_converse_report,
};
use syment_core::repthy::{dim_u, dim_v, enumerate_partitions, BigDim, Partition};
use syment_core::spectra::schema::{BlockSpectrumDoc, Source, WeightedSpectrumDoc};
use syment_core::spectra::{iid_block_spectrum, iid_type_spectrum, BlockSpectrum, WeightedSpectrum};
use syment_core::{Budget, ProbVector};

use crate::args::*;
use crate::error::{usage, CliError};
use crate::output::{to_value, Report};

pub fn parse_p(s: &str) -> Result<ProbVector, CliError> {
    Ok(s.parse::<ProbVector>()?)
}

/// A fully validated state description.
pub struct Resolved {
    pub source: SourceKind,
    pub p: ProbVector,
    /// Copy count of the analysed spectrum (`m` for clones).
    pub n: u32,
    pub clone: Option<CloneParams>,
}

impl Resolved {
    pub fn from_args(a: &SourceArgs) -> Result<Self, CliError> {
        let p = parse_p(&a.p)?;
        match a.source {
            SourceKind::Iid => {
                if a.m.is_some() || a.r.is_some() {
                    return Err(usage("--m and --r apply only to clone sources"));
                }
                let n = a.n.ok_or_else(|| usage("--source iid needs --n"))?;
                if n == 0 {
                    return Err(usage("--n must be positive"));
                }
                Ok(Self {
                    source: a.source,
                    p,
                    n,
                    clone: None,
                })
            }
            SourceKind::Clone1 | SourceKind::Clone2 => {
                let m = a.m.ok_or_else(|| usage("clone sources need --m"))?;
                let params = match (a.n, a.r) {
                    (Some(n), None) => CloneParams::new(n, m, p.clone())?,
                    (None, Some(r)) => CloneParams::from_ratio(m, r, p.clone())?,
                    (None, None) => return Err(usage("clone sources need --n or --r")),
                    (Some(_), Some(_)) => return Err(usage("give either --n or --r, not both")),
                };
                Ok(Self {
                    source: a.source,
                    p,
                    n: m,
                    clone: Some(params),
                })
            }
        }
    }

    fn clone_params(&self) -> &CloneParams {
        self.clone.as_ref().expect("clone sources carry parameters")
    }

    pub fn schema_source(&self) -> Source {
        match self.source {
            SourceKind::Iid => Source::Iid,
            SourceKind::Clone1 => Source::Clone1,
            SourceKind::Clone2 => Source::Clone2,
        }
    }

    pub fn params_value(&self) -> Result<Value, CliError> {
        match &self.clone {
            Some(c) => to_value(c),
            None => Ok(json!({ "n": self.n, "p": self.p.to_string() })),
        }
    }

    pub fn flat(&self, budget: &Budget) -> Result<WeightedSpectrum, CliError> {
        Ok(match self.source {
            SourceKind::Iid => iid_type_spectrum(&self.p, self.n, budget)?,
            SourceKind::Clone1 => clone1_spectrum(self.clone_params(), budget)?,
            SourceKind::Clone2 => clone2_spectrum(self.clone_params(), budget)?.spectrum,
        })
    }

    pub fn block(&self, budget: &Budget) -> Result<BlockSpectrum, CliError> {
        match self.source {
            SourceKind::Iid => Ok(iid_block_spectrum(&self.p, self.n, budget)?),
            SourceKind::Clone1 => Ok(clone1_block_spectrum(self.clone_params(), budget)?),
            SourceKind::Clone2 => Err(usage(
                "the universal clone has no block form here; use the flat spectrum",
            )),
        }
    }
}

fn lambda_str(l: &Partition) -> String {
    l.to_string()
}

// ---- dims

#[derive(Serialize)]
struct DimRow {
    lambda: String,
    #[serde(rename = "dimU")]
    dim_u: BigDim,
    #[serde(rename = "dimV")]
    dim_v: BigDim,
}

#[derive(Serialize)]
struct DimEntry {
    lambda: Partition,
    #[serde(rename = "dimU")]
    dim_u: BigDim,
    #[serde(rename = "dimV")]
    dim_v: BigDim,
}

pub fn dims(a: &DimsArgs, budget: &Budget) -> Result<Report, CliError> {
    if a.n == 0 || a.d == 0 {
        return Err(usage("--n and --d must be positive"));
    }
    let count = syment_core::repthy::count_partitions(a.n, a.d);
    if count > budget.max_partitions as u128 {
        return Err(syment_core::Error::BudgetExceeded {
            what: "partitions",
            needed: count,
            cap: budget.max_partitions as u128,
        }
        .into());
    }
    let mut entries = Vec::new();
    let mut total = BigUint::default();
    for lambda in enumerate_partitions(a.n, a.d)? {
        let (du, dv) = (dim_u(&lambda, a.d)?, dim_v(&lambda)?);
        total += &du.0 * &dv.0;
        entries.push(DimEntry {
            lambda,
            dim_u: du,
            dim_v: dv,
        });
    }
    let expected = BigUint::from(a.d).pow(a.n);
    let rows: Vec<DimRow> = entries
        .iter()
        .map(|e| DimRow {
            lambda: lambda_str(&e.lambda),
            dim_u: e.dim_u.clone(),
            dim_v: e.dim_v.clone(),
        })
        .collect();
    let result = json!({
        "n": a.n,
        "d": a.d,
        "blocks": to_value(&entries)?,
        "completeness": {
            "sum": total.to_string(),
            "expected": expected.to_string(),
            "holds": total == expected,
        },
    });
    Report::new(&result, &rows)
}

// ---- spectrum

#[derive(Serialize)]
struct FlatRow {
    log2_value: Option<f64>,
    log2_multiplicity: Option<f64>,
}

#[derive(Serialize)]
struct BlockRow {
    lambda: String,
    log2_b: Option<f64>,
    #[serde(rename = "dimU")]
    dim_u: BigDim,
    #[serde(rename = "dimV")]
    dim_v: BigDim,
}

fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

pub fn spectrum(a: &SpectrumArgs, budget: &Budget) -> Result<Report, CliError> {
    let src = Resolved::from_args(&a.src)?;
    let params = Some(src.params_value()?);
    match a.form {
        SpectrumForm::Flat => {
            let ws = src.flat(budget)?;
            let rows: Vec<FlatRow> = ws
                .entries
                .iter()
                .map(|e| FlatRow {
                    log2_value: finite(e.log2_value),
                    log2_multiplicity: finite(e.log2_multiplicity),
                })
                .collect();
            Report::new(&WeightedSpectrumDoc::new(ws, Some(src.schema_source()), params), &rows)
        }
        SpectrumForm::Block => {
            let bs = src.block(budget)?;
            let rows: Vec<BlockRow> = bs
                .blocks
                .iter()
                .map(|b| BlockRow {
                    lambda: lambda_str(&b.lambda),
                    log2_b: finite(b.log2_b),
                    dim_u: b.dim_u.clone(),
                    dim_v: b.dim_v.clone(),
                })
                .collect();
            Report::new(&BlockSpectrumDoc::new(bs, Some(src.schema_source()), params), &rows)
        }
    }
}

// ---- fidelity-curve

pub fn fidelity_curve(a: &FidelityArgs, budget: &Budget) -> Result<Report, CliError> {
    let src = Resolved::from_args(&a.src)?;
    let hi = a.r_max.unwrap_or_else(|| (src.p.dim() as f64).log2());
    if a.points < 2 || !(a.r_min >= 0.0) || !(hi > a.r_min) {
        return Err(usage("need --points ≥ 2 and 0 ≤ --r-min < --r-max"));
    }
    let rates = rate_grid(a.r_min, hi, a.points);
    let curve = match a.kind {
        FidelityKind::Pure => pure_fidelity_curve(&src.flat(budget)?, &rates),
        FidelityKind::Sigma => sigma_fidelity_curve(&src.block(budget)?, &rates),
    };
    let result = json!({
        "kind": a.kind,
        "source": src.schema_source(),
        "params": src.params_value()?,
        "curve": to_value(&curve)?,
    });
    Report::new(&result, &curve.rows())
}

// ---- rates

#[derive(Serialize)]
struct RateRow {
    n: u32,
    epsilon: f64,
    #[serde(rename = "Ec")]
    ec: f64,
    #[serde(rename = "Ed")]
    ed: f64,
    entropy: f64,
}

fn check_epsilons(eps: &[f64]) -> Result<(), CliError> {
    if eps.is_empty() || eps.iter().any(|&e| !(e > 0.0 && e < 1.0)) {
        return Err(usage("every --epsilon must lie in (0, 1)"));
    }
    Ok(())
}

pub fn rates(a: &RatesArgs, budget: &Budget) -> Result<Report, CliError> {
    check_epsilons(&a.epsilon)?;
    let src = Resolved::from_args(&a.src)?;
    let ws = src.flat(budget)?;
    let entropy = src.p.entropy();
    let rows = a
        .epsilon
        .iter()
        .map(|&eps| {
            Ok(RateRow {
                n: ws.n,
                epsilon: eps,
                ec: estimate_ec(&ws, eps)?.rate,
                ed: estimate_ed(&ws, eps)?.rate,
                entropy,
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let result = json!({
        "source": src.schema_source(),
        "params": src.params_value()?,
        "entropy": entropy,
        "estimates": to_value(&rows)?,
    });
    Report::new(&result, &rows)
}

// ---- exponent

pub fn exponent(a: &ExponentArgs) -> Result<Report, CliError> {
    let p = parse_p(&a.p)?;
    let rates: Vec<f64> = match (a.rate, a.r_min, a.r_max) {
        (Some(rate), None, None) => vec![rate],
        (None, Some(lo), Some(hi)) => {
            if a.points < 2 || !(hi > lo) {
                return Err(usage("need --points ≥ 2 and --r-min < --r-max"));
            }
            rate_grid(lo, hi, a.points)
        }
        _ => return Err(usage("give --R, or both --r-min and --r-max")),
    };
    let mut rows = Vec::with_capacity(rates.len());
    let mut details = Vec::with_capacity(rates.len());
    for rate in rates {
        let problem = ExponentProblem {
            grid: a.grid,
            tol: a.tol,
            ..ExponentProblem::new(rate, a.r, p.clone())
        };
        let clone = clone_dilution_exponent(&problem)?;
        let iid = iid_dilution_exponent(rate, &p)?;
        rows.push(ExponentRow {
            rate,
            clone_exponent: clone.value,
            iid_exponent_over_r: iid / a.r,
            iid_exponent: iid,
        });
        details.push(json!({
            "R": rate,
            "clone": to_value(&clone)?,
            "iid_exponent": iid,
        }));
    }
    let result = json!({
        "p": p.to_string(),
        "r": a.r,
        "grid": a.grid,
        "tol": a.tol,
        "rows": to_value(&rows)?,
        "argmins": details,
    });
    Report::new(&result, &rows)
}

// ---- tradeoff

pub fn tradeoff(a: &TradeoffArgs) -> Result<Report, CliError> {
    let p = parse_p(&a.p)?;
    let t = rate_exponent_tradeoff(a.eta, a.r, &p)?;
    let result = json!({ "p": p.to_string(), "r": a.r, "tradeoff": to_value(&t)? });
    Report::new(&result, &[t])
}

// ---- protocol

pub fn protocol(a: &ProtocolArgs, budget: &Budget) -> Result<Report, CliError> {
    let src = Resolved::from_args(&a.src)?;
    if a.trials == 0 {
        return Err(usage("--trials must be at least 1"));
    }
    let bs = src.block(budget)?;
    let run: ProtocolRun = match a.kind {
        ProtocolKindArg::Dilution => {
            let rate = a.rate.ok_or_else(|| usage("dilution needs --R"))?;
            simulate_dilution(&bs, rate, a.trials, a.seed)?
        }
        ProtocolKindArg::Distillation => {
            if a.rate.is_some() {
                return Err(usage("--R applies only to dilution"));
            }
            simulate_distillation(&BlockSampler::new(&bs)?, a.trials, a.seed)?
        }
    };
    if let Some(path) = &a.jsonl {
        write_jsonl(path, &run)?;
    }
    let summary = run.summary();
    let result = json!({
        "kind": run.kind,
        "source": src.schema_source(),
        "params": src.params_value()?,
        "R": run.rate,
        "rng": to_value(&run.rng)?,
        "summary": to_value(&summary)?,
    });
    let mut report = Report::new(&result, &[summary])?;
    report.seed = Some(a.seed);
    Ok(report)
}

fn write_jsonl(path: &std::path::Path, run: &ProtocolRun) -> Result<(), CliError> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent)?;
    }
    let mut w = std::io::BufWriter::new(std::fs::File::create(path)?);
    for t in &run.results {
        serde_json::to_writer(&mut w, t).map_err(|e| usage(format!("cannot write trial: {e}")))?;
        w.write_all(b"\n")?;
    }
    w.flush()?;
    Ok(())
}

// ---- converse-report

pub fn converse_report(a: &ConverseArgs, budget: &Budget) -> Result<Report, CliError> {
    check_epsilons(&a.epsilon)?;
    let p = parse_p(&a.p)?;
    let family = a
        .sizes
        .iter()
        .map(|&size| {
            let src = SourceArgs {
                source: a.source,
                p: a.p.clone(),
                n: (a.source == SourceKind::Iid).then_some(size),
                m: (a.source != SourceKind::Iid).then_some(size),
                r: (a.source != SourceKind::Iid).then_some(a.r),
            };
            Resolved::from_args(&src)?.flat(budget)
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let report = strong_converse_report(&family, &a.epsilon)?;
    let result = json!({
        "source": a.source,
        "p": p.to_string(),
        "r": (a.source != SourceKind::Iid).then_some(a.r),
        "entropy": p.entropy(),
        "report": to_value(&report)?,
    });
    Report::new(&result, &report.rows)
}
