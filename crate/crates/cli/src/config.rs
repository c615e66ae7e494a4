//! TOML job files, translated into an argument vector so that they go
//! through exactly the same parsing and validation as the command line.
//!
//! ```toml
//! command = "rates"
//!
//! [params]
//! source = "clone1"
//! p = "0.7,0.3"
//! r = 2
//! m = 200
//! epsilon = [0.01, 0.05]
//!
//! [output]
//! path = "rates.json"
//! format = "json"
//!
//! [budget]
//! max_types = 100000
//! ```

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use serde::Deserialize;
use toml::{Table, Value};

use crate::error::{usage, CliError};

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    pub command: String,
    #[serde(default)]
    pub params: Table,
    #[serde(default)]
    pub output: Option<OutputConfig>,
    #[serde(default)]
    pub budget: Table,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    pub path: Option<PathBuf>,
    pub format: Option<String>,
}

const COMMANDS: [&str; 9] = [
    "dims",
    "spectrum",
    "fidelity-curve",
    "rates",
    "exponent",
    "tradeoff",
    "protocol",
    "converse-report",
    "oracle-check",
];

impl JobConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text =
            std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let job: Self = toml::from_str(text).map_err(|e| usage(format!("bad config: {e}")))?;
        if !COMMANDS.contains(&job.command.as_str()) {
            return Err(usage(format!("unknown command {:?} in config", job.command)));
        }
        Ok(job)
    }

    /// The equivalent command line. Keys map to `--key` with underscores
    /// turned into dashes, arrays are comma-joined and `true` booleans
    /// become bare flags. Command-line output flags take precedence over
    /// the `[output]` table.
    pub fn to_argv(&self, global_overrides: &[OsString]) -> Result<Vec<OsString>, CliError> {
        let mut argv: Vec<OsString> = vec!["syment".into()];
        argv.extend(global_overrides.iter().cloned());
        let has = |flag: &str| global_overrides.iter().any(|a| a == flag);
        if let Some(out) = &self.output {
            if let Some(path) = out.path.as_ref().filter(|_| !has("--output")) {
                argv.push("--output".into());
                argv.push(path.clone().into());
            }
            if let Some(format) = out.format.as_ref().filter(|_| !has("--format")) {
                argv.push("--format".into());
                argv.push(format.into());
            }
        }
        push_table(&mut argv, &self.budget, "budget")?;
        argv.push(self.command.clone().into());
        push_table(&mut argv, &self.params, "params")?;
        Ok(argv)
    }
}

fn push_table(argv: &mut Vec<OsString>, table: &Table, section: &str) -> Result<(), CliError> {
    for (key, value) in table {
        let flag = format!("--{}", key.replace('_', "-"));
        match value {
            Value::Boolean(true) => argv.push(flag.into()),
            Value::Boolean(false) => {}
            other => {
                argv.push(flag.into());
                argv.push(scalar_or_list(other, section, key)?.into());
            }
        }
    }
    Ok(())
}

fn scalar_or_list(value: &Value, section: &str, key: &str) -> Result<String, CliError> {
    match value {
        Value::Array(items) => Ok(items
            .iter()
            .map(|v| scalar(v, section, key))
            .collect::<Result<Vec<_>, _>>()?
            .join(",")),
        v => scalar(v, section, key),
    }
}

fn scalar(value: &Value, section: &str, key: &str) -> Result<String, CliError> {
    match value {
        Value::String(s) => Ok(s.clone()),
        Value::Integer(i) => Ok(i.to_string()),
        Value::Float(f) => Ok(f.to_string()),
        Value::Boolean(b) => Ok(b.to_string()),
        _ => Err(usage(format!(
            "[{section}] {key}: expected a scalar or a list of scalars"
        ))),
    }
}
