use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{json, Value};

use crate::args::Format;
use crate::error::{usage, CliError};

/// Version of the JSON envelope and CSV metadata layout.
pub const OUTPUT_SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "SYMENT_OUT_DIR";

/// What a command produced, before it is wrapped with metadata.
#[derive(Debug)]
pub struct Report {
    pub result: Value,
    /// CSV body with its header row.
    pub table: Vec<u8>,
    pub seed: Option<u64>,
}

impl Report {
    pub fn new<R: Serialize, T: Serialize>(result: &R, rows: &[T]) -> Result<Self, CliError> {
        Ok(Self {
            result: to_value(result)?,
            table: csv_body(rows)?,
            seed: None,
        })
    }
}

pub fn to_value<T: Serialize>(x: &T) -> Result<Value, CliError> {
    serde_json::to_value(x).map_err(|e| usage(format!("cannot serialize result: {e}")))
}

fn csv_body<T: Serialize>(rows: &[T]) -> Result<Vec<u8>, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row)
            .map_err(|e| usage(format!("cannot write CSV row: {e}")))?;
    }
    w.into_inner().map_err(|e| usage(format!("cannot flush CSV: {e}")))
}

/// Run metadata shared by both output formats.
#[derive(Debug, Clone)]
pub struct Meta {
    pub command: String,
    pub config: Value,
    pub seed: Option<u64>,
    pub wall_time_ms: u64,
}

pub fn render_json(meta: &Meta, result: Value) -> String {
    let envelope = json!({
        "schema_version": OUTPUT_SCHEMA_VERSION,
        "tool_version": TOOL_VERSION,
        "command": meta.command,
        "config": meta.config,
        "seed": meta.seed,
        "wall_time_ms": meta.wall_time_ms,
        "result": result,
    });
    let mut s = serde_json::to_string_pretty(&envelope).expect("Value always serializes");
    s.push('\n');
    s
}

/// `# key=value` metadata lines followed by the table.
pub fn render_csv(meta: &Meta, table: &[u8]) -> Vec<u8> {
    let seed = meta.seed.map_or_else(|| "none".to_string(), |s| s.to_string());
    let mut out = format!(
        "# schema_version={OUTPUT_SCHEMA_VERSION}\n# tool_version={TOOL_VERSION}\n# command={}\n# config={}\n# seed={seed}\n# wall_time_ms={}\n",
        meta.command, meta.config, meta.wall_time_ms
    )
    .into_bytes();
    out.extend_from_slice(table);
    out
}

/// `--output` if given (`-` is stdout), else `$SYMENT_OUT_DIR/<command>.<ext>`,
/// else stdout.
pub fn destination(output: Option<&Path>, command: &str, format: Format) -> Option<PathBuf> {
    if let Some(p) = output {
        return (p != Path::new("-")).then(|| p.to_path_buf());
    }
    let dir = std::env::var_os(OUT_DIR_ENV).filter(|d| !d.is_empty())?;
    Some(Path::new(&dir).join(format!("{command}.{}", format.extension())))
}

pub fn write_bytes(dest: Option<&Path>, bytes: &[u8]) -> Result<(), CliError> {
    match dest {
        Some(path) => {
            if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                fs::create_dir_all(parent)?;
            }
            fs::write(path, bytes)?;
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(bytes)?;
            stdout.flush()?;
        }
    }
    Ok(())
}
