use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use syment_core::Budget;

#[derive(Debug, Parser)]
#[command(
    name = "syment",
    version,
    about = "Finite-n entanglement of permutation-symmetric states"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GlobalArgs {
    /// Output file. Defaults to `$SYMENT_OUT_DIR/<command>.<ext>` when that
    /// variable is set, otherwise stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(flatten)]
    #[serde(skip)]
    pub budget: BudgetArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
        }
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct BudgetArgs {
    #[arg(long, global = true)]
    pub max_partitions: Option<u64>,
    #[arg(long, global = true)]
    pub max_types: Option<u64>,
    #[arg(long, global = true)]
    pub dense_cap: Option<u64>,
    #[arg(long, global = true)]
    pub max_block_dim: Option<usize>,
    #[arg(long, global = true)]
    pub max_clone2_dim: Option<usize>,
}

impl BudgetArgs {
    pub fn budget(&self) -> Budget {
        let d = Budget::default();
        Budget {
            max_partitions: self.max_partitions.unwrap_or(d.max_partitions),
            max_types: self.max_types.unwrap_or(d.max_types),
            dense_cap: self.dense_cap.unwrap_or(d.dense_cap),
            max_block_dim: self.max_block_dim.unwrap_or(d.max_block_dim),
            max_clone2_dim: self.max_clone2_dim.unwrap_or(d.max_clone2_dim),
        }
    }
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    /// Young indices with dim U_λ and d_λ, plus the Schur–Weyl completeness check.
    Dims(DimsArgs),
    /// Block or flat spectrum of an i.i.d. or cloned state.
    Spectrum(SpectrumArgs),
    /// Dilution fidelity as a function of rate.
    FidelityCurve(FidelityArgs),
    /// Quantile estimates of entanglement cost and distillable entanglement.
    Rates(RatesArgs),
    /// Dilution error exponents of the known-basis clone and the i.i.d. state.
    Exponent(ExponentArgs),
    /// Largest rate whose clone dilution exponent stays within η.
    Tradeoff(TradeoffArgs),
    /// Monte-Carlo dilution or distillation run.
    Protocol(ProtocolArgs),
    /// Ec/Ed quantiles over a family of output sizes.
    ConverseReport(ConverseArgs),
    /// Dense brute-force cross-checks at tiny scale.
    OracleCheck(OracleArgs),
    /// Run a job described by a TOML config file.
    Run(RunArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Dims(_) => "dims",
            Command::Spectrum(_) => "spectrum",
            Command::FidelityCurve(_) => "fidelity-curve",
            Command::Rates(_) => "rates",
            Command::Exponent(_) => "exponent",
            Command::Tradeoff(_) => "tradeoff",
            Command::Protocol(_) => "protocol",
            Command::ConverseReport(_) => "converse-report",
            Command::OracleCheck(_) => "oracle-check",
            Command::Run(_) => "run",
        }
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct DimsArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub d: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SourceKind {
    Iid,
    Clone1,
    Clone2,
}

/// Which state to analyse. For `iid`, `--n` is the copy count. For clones,
/// `--m` is the output count and the input count is `--n` or `m / r`.
#[derive(Debug, Clone, Args, Serialize)]
pub struct SourceArgs {
    #[arg(long, value_enum, default_value_t = SourceKind::Iid)]
    pub source: SourceKind,
    /// Schmidt probabilities, decimal ("0.7,0.3") or rational ("7/10,3/10").
    #[arg(long)]
    pub p: String,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long)]
    pub r: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SpectrumForm {
    Block,
    Flat,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SpectrumArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub src: SourceArgs,
    #[arg(long, value_enum, default_value_t = SpectrumForm::Flat)]
    pub form: SpectrumForm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FidelityKind {
    /// Top-2^{⌊nR⌋} Schmidt mass of the flat spectrum.
    Pure,
    /// Block packing by d_λ.
    Sigma,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct FidelityArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub src: SourceArgs,
    #[arg(long, value_enum, default_value_t = FidelityKind::Sigma)]
    pub kind: FidelityKind,
    #[arg(long, default_value_t = 0.0)]
    pub r_min: f64,
    /// Defaults to log2 d.
    #[arg(long)]
    pub r_max: Option<f64>,
    #[arg(long, default_value_t = 101)]
    pub points: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct RatesArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub src: SourceArgs,
    #[arg(long, value_delimiter = ',', default_value = "0.01")]
    pub epsilon: Vec<f64>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ExponentArgs {
    #[arg(long)]
    pub p: String,
    #[arg(long, default_value_t = 1.0)]
    pub r: f64,
    /// Single target rate.
    #[arg(long = "R", conflicts_with_all = ["r_min", "r_max"])]
    #[serde(rename = "R")]
    pub rate: Option<f64>,
    /// Curve mode: lower end of the rate sweep.
    #[arg(long, requires = "r_max")]
    pub r_min: Option<f64>,
    #[arg(long, requires = "r_min")]
    pub r_max: Option<f64>,
    #[arg(long, default_value_t = 21)]
    pub points: usize,
    #[arg(long, default_value_t = syment_core::exponents::DEFAULT_GRID)]
    pub grid: usize,
    #[arg(long, default_value_t = syment_core::exponents::DEFAULT_TOL)]
    pub tol: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct TradeoffArgs {
    #[arg(long)]
    pub p: String,
    #[arg(long, default_value_t = 1.0)]
    pub r: f64,
    #[arg(long)]
    pub eta: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ProtocolKindArg {
    Dilution,
    Distillation,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ProtocolArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub src: SourceArgs,
    #[arg(long, value_enum)]
    pub kind: ProtocolKindArg,
    /// Dilution rate.
    #[arg(long = "R")]
    #[serde(rename = "R")]
    pub rate: Option<f64>,
    #[arg(long, default_value_t = 100_000)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Also write every trial as one JSON line to this path.
    #[arg(long)]
    pub jsonl: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ConverseArgs {
    #[arg(long, value_enum, default_value_t = SourceKind::Clone1)]
    pub source: SourceKind,
    #[arg(long)]
    pub p: String,
    /// Clone ratio (ignored for iid).
    #[arg(long, default_value_t = 2.0)]
    pub r: f64,
    /// Copy counts (output counts for clones), increasing.
    #[arg(long, value_delimiter = ',', default_value = "50,100,200")]
    pub sizes: Vec<u32>,
    #[arg(long, value_delimiter = ',', default_value = "0.001,0.01,0.05")]
    pub epsilon: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OracleScope {
    All,
    Spectra,
    Clone1,
    Clone2,
    Exponent,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct OracleArgs {
    #[arg(long, value_enum, default_value_t = OracleScope::All)]
    pub scope: OracleScope,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct RunArgs {
    #[arg(long)]
    pub config: PathBuf,
}
