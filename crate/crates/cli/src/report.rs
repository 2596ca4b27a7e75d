//! Report envelope and atomic file output.

use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};

use crate::failure::Failure;

pub const TOOL: &str = "rlsc";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Wraps a command result with the data needed to re-run it.
pub fn envelope(command: &str, invocation: &[String], seed: Option<u64>, params: Value, result: impl Serialize) -> Value {
    let mut v = json!({
        "tool": TOOL,
        "version": VERSION,
        "command": command,
        "invocation": invocation,
        "params": params,
        "result": result,
    });
    if let Some(seed) = seed {
        v["seed"] = json!(seed);
    }
    v
}

pub fn to_json_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports are valid JSON");
    s.push('\n');
    s
}

/// Writes through a temporary file in the target directory, then renames.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<(), Failure> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)
        .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    tmp.write_all(contents)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path)
        .map_err(|e| Failure::usage(format!("{}: {}", path.display(), e.error)))?;
    Ok(())
}
