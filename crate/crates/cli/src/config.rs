//! Run configuration: `{schema_version, experiment, seed, params}` JSON with
//! dotted `--set` overrides and a digest of the canonical form.

use crate::error::{CliError, CliResult};
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};
use std::path::Path;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub schema_version: u32,
    pub experiment: String,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "empty_object")]
    pub params: Value,
}

fn empty_object() -> Value {
    Value::Object(Map::new())
}

impl RunConfig {
    /// Serialized with sorted keys, so equal configs hash equally.
    pub fn canonical_json(&self) -> String {
        serde_json::to_string(self).expect("config values serialize")
    }

    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(self.canonical_json().as_bytes()))
    }
}

/// A fresh config document for `experiment`.
pub fn base_document(experiment: &str) -> Value {
    serde_json::json!({
        "schema_version": SCHEMA_VERSION,
        "experiment": experiment,
        "seed": 0,
        "params": {},
    })
}

pub fn read_document(path: &Path) -> CliResult<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path.display(), e))?;
    serde_json::from_str(&text).map_err(|e| CliError::config(format!("{}: {e}", path.display())))
}

/// `path=value`; the value is JSON when it parses as JSON, else a string.
pub fn parse_override(raw: &str) -> CliResult<(String, Value)> {
    let (path, value) = raw
        .split_once('=')
        .ok_or_else(|| CliError::config(format!("override `{raw}` is not of the form key.path=value")))?;
    let path = path.trim();
    if path.is_empty() || path.split('.').any(str::is_empty) {
        return Err(CliError::config(format!("override `{raw}` has an empty key")));
    }
    let value = serde_json::from_str(value).unwrap_or_else(|_| Value::String(value.to_string()));
    Ok((path.to_string(), value))
}

const TOP_LEVEL: [&str; 3] = ["schema_version", "experiment", "seed"];

/// Sets `path` (relative to `params` unless it names a top-level key).
pub fn apply_override(doc: &mut Value, path: &str, value: Value) -> CliResult<()> {
    let mut keys: Vec<&str> = path.split('.').collect();
    if keys[0] == "params" {
        keys.remove(0);
    } else if !TOP_LEVEL.contains(&keys[0]) {
        keys.insert(0, "params");
    }
    if keys.is_empty() {
        return Err(CliError::config("cannot override params as a whole"));
    }
    let mut node = doc;
    for (i, key) in keys.iter().enumerate() {
        let obj = node
            .as_object_mut()
            .ok_or_else(|| CliError::config(format!("override {path}: `{}` is not an object", keys[..i].join("."))))?;
        if i + 1 == keys.len() {
            obj.insert(key.to_string(), value);
            return Ok(());
        }
        node = obj.entry(key.to_string()).or_insert_with(empty_object);
    }
    unreachable!("loop returns on the last key")
}

pub fn into_config(doc: Value) -> CliResult<RunConfig> {
    let cfg: RunConfig = serde_json::from_value(doc).map_err(|e| CliError::config(e.to_string()))?;
    if cfg.schema_version != SCHEMA_VERSION {
        return Err(CliError::config(format!(
            "schema_version {} is not supported (expected {SCHEMA_VERSION})",
            cfg.schema_version
        )));
    }
    if !cfg.params.is_object() {
        return Err(CliError::config("params must be an object"));
    }
    Ok(cfg)
}
