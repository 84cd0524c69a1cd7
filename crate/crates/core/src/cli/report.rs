//! The JSON envelope written by `--out`.
//!
//! Every field is a pure function of the fixture, the flags and the seed, so
//! two runs with the same inputs write byte-identical files. Wall-clock time
//! is only printed to standard output.

use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use super::CliError;

pub const ENVELOPE_FORMAT: &str = "ymbv-report/1";

#[derive(Clone, Debug, Serialize)]
pub struct Envelope {
    pub format: &'static str,
    pub tool_version: &'static str,
    pub fixture_sha256: String,
    pub command: &'static str,
    pub args: Value,
    pub pass: bool,
    pub results: Value,
}

impl Envelope {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn write(&self, path: &Path) -> Result<(), CliError> {
        std::fs::write(path, self.to_json()).map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))
    }
}

/// Reads a document that is either a bare payload with the given `format`
/// tag or an envelope carrying it under `results.<key>`.
pub fn read_payload(path: &Path, format: &str, key: &str) -> Result<String, CliError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let v: Value =
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{} is not JSON: {e}", path.display())))?;
    if v.get("format").and_then(Value::as_str) == Some(format) {
        return Ok(text);
    }
    match v.get("results").and_then(|r| r.get(key)) {
        Some(inner) if inner.get("format").and_then(Value::as_str) == Some(format) => {
            Ok(serde_json::to_string(inner).expect("serializable"))
        }
        _ => Err(CliError::Usage(format!("{} holds no `{format}` document", path.display()))),
    }
}
