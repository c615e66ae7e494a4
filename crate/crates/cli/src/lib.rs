//! The `syment` command-line front end: argument parsing, TOML job files,
//! versioned JSON/CSV output and the oracle-check report.

// `!(x > 0.0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod oracle;
pub mod output;

use std::ffi::OsString;
use std::time::Instant;

use clap::Parser;
use serde_json::json;

use args::{Cli, Command};
use config::JobConfig;
use error::CliError;
use output::{destination, render_csv, render_json, to_value, write_bytes, Meta, Report};

/// Parses `argv`, runs the job and returns the process exit code. Errors are
/// reported on stderr as one JSON record.
pub fn run(argv: Vec<OsString>) -> u8 {
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => return clap_exit(e),
    };
    let cli = match cli.command {
        Command::Run(ref r) => match load_job(&r.config, &argv) {
            Ok(Ok(cli)) => cli,
            Ok(Err(e)) => return clap_exit(e),
            Err(e) => return fail(&e),
        },
        _ => cli,
    };
    match execute(&cli) {
        Ok(()) => 0,
        Err(e) => fail(&e),
    }
}

fn clap_exit(e: clap::Error) -> u8 {
    if e.use_stderr() {
        fail(&CliError::Usage(e.to_string().trim_end().to_string()))
    } else {
        print!("{e}");
        0
    }
}

fn fail(e: &CliError) -> u8 {
    let record = serde_json::to_string(&e.record()).expect("error record serializes");
    eprintln!("{record}");
    e.exit_code()
}

/// Global flags given alongside `run` override the job file.
fn load_job(path: &std::path::Path, argv: &[OsString]) -> Result<Result<Cli, clap::Error>, CliError> {
    let job = JobConfig::load(path)?;
    let mut overrides = Vec::new();
    let mut rest = argv.iter().skip(1);
    while let Some(a) = rest.next() {
        let s = a.to_string_lossy();
        if s == "run" {
            continue;
        }
        if s == "--config" {
            rest.next();
            continue;
        }
        if s.starts_with("--config=") {
            continue;
        }
        overrides.push(a.clone());
    }
    Ok(Cli::try_parse_from(job.to_argv(&overrides)?))
}

fn execute(cli: &Cli) -> Result<(), CliError> {
    if let Some(threads) = cli.global.threads {
        if threads == 0 {
            return Err(error::usage("--threads must be at least 1"));
        }
        // only fails if a pool already exists, in which case it is kept
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    let budget = cli.global.budget.budget();
    let start = Instant::now();
    let mut failed = 0;
    let report = match &cli.command {
        Command::Dims(a) => commands::dims(a, &budget)?,
        Command::Spectrum(a) => commands::spectrum(a, &budget)?,
        Command::FidelityCurve(a) => commands::fidelity_curve(a, &budget)?,
        Command::Rates(a) => commands::rates(a, &budget)?,
        Command::Exponent(a) => commands::exponent(a)?,
        Command::Tradeoff(a) => commands::tradeoff(a)?,
        Command::Protocol(a) => commands::protocol(a, &budget)?,
        Command::ConverseReport(a) => commands::converse_report(a, &budget)?,
        Command::OracleCheck(a) => {
            let checks = oracle::run_checks(a.scope, &budget);
            for c in &checks {
                eprintln!("{}", c.line());
            }
            failed = checks
                .iter()
                .filter(|c| matches!(c.status, oracle::Status::Fail | oracle::Status::Error))
                .count();
            let result = json!({
                "passed": failed == 0,
                "checks": to_value(&checks)?,
            });
            Report::new(&result, &checks)?
        }
        Command::Run(_) => return Err(error::usage("a job file cannot invoke run")),
    };
    let meta = Meta {
        command: cli.command.name().to_string(),
        config: json!({
            "global": to_value(&cli.global)?,
            "budget": to_value(&budget)?,
            "args": to_value(&cli.command)?,
        }),
        seed: report.seed,
        wall_time_ms: start.elapsed().as_millis() as u64,
    };
    let bytes = match cli.global.format {
        args::Format::Json => render_json(&meta, report.result).into_bytes(),
        args::Format::Csv => render_csv(&meta, &report.table),
    };
    let dest = destination(cli.global.output.as_deref(), &meta.command, cli.global.format);
    write_bytes(dest.as_deref(), &bytes)?;
    if failed > 0 {
        return Err(CliError::ChecksFailed(failed));
    }
    Ok(())
}
