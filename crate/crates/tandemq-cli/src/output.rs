//! Output emission: a JSON envelope per run, or CSV tables, written to
//! stdout or a file. Outputs carry no timestamps, so identical runs are
//! byte-identical; wall-clock notes go to stderr only.

use serde::Serialize;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::config::ResolvedConfig;
use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Serialize)]
pub struct Envelope<'a, T: Serialize> {
    pub schema_version: u32,
    pub command: &'a str,
    pub config: &'a ResolvedConfig,
    #[serde(flatten)]
    pub payload: T,
}

pub fn json_envelope<T: Serialize>(
    command: &str,
    config: &ResolvedConfig,
    payload: T,
) -> Result<String, CliError> {
    let envelope = Envelope {
        schema_version: SCHEMA_VERSION,
        command,
        config,
        payload,
    };
    let mut text = serde_json::to_string_pretty(&envelope)
        .map_err(|e| CliError::Io(format!("serialization failed: {e}")))?;
    text.push('\n');
    Ok(text)
}

/// Build a CSV document from a header and rows of already formatted cells.
pub fn csv_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    out.push_str(&header.join(","));
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// Write to `out` when given, stdout otherwise.
pub fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), CliError> {
    match out {
        Some(path) => write_file(path, text),
        None => {
            std::io::stdout()
                .write_all(text.as_bytes())
                .map_err(|e| CliError::Io(format!("cannot write to stdout: {e}")))?;
            Ok(())
        }
    }
}

pub fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text)
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

/// Machine-readable error object, printed to stderr on failure.
pub fn error_json(err: &CliError) -> String {
    let object = serde_json::json!({
        "schema_version": SCHEMA_VERSION,
        "error": {
            "code": err.code(),
            "message": err.to_string(),
        }
    });
    serde_json::to_string(&object).expect("error object serializes")
}
