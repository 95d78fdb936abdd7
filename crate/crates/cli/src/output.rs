//! Run directory layout: `report.json`, `snapshots/*.csv`, `manifest.json`.

use crate::config::{RunConfig, SCHEMA_VERSION};
use crate::error::{CliError, CliResult};
use crate::experiments::Artifacts;
use chrono::{DateTime, SecondsFormat, Utc};
use serde::Serialize;
use sha2::{Digest, Sha256};
use std::path::{Path, PathBuf};

/// Environment variable naming the parent of default run directories.
pub const OUT_ENV: &str = "SOLITONLAB_OUT";

pub fn default_run_dir(experiment: &str, seed: u64, now: DateTime<Utc>) -> PathBuf {
    let parent = std::env::var_os(OUT_ENV).map_or_else(|| PathBuf::from("runs"), PathBuf::from);
    parent.join(format!("{experiment}-{}-{seed}", now.format("%Y%m%dT%H%M%SZ")))
}

#[derive(Debug, Serialize)]
pub struct OutputEntry {
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub tool_version: &'static str,
    pub config_digest: String,
    pub seed: u64,
    pub experiment: String,
    pub started_utc: String,
    pub finished_utc: String,
    pub outputs: Vec<OutputEntry>,
}

fn utc(t: DateTime<Utc>) -> String {
    t.to_rfc3339_opts(SecondsFormat::Millis, true)
}

fn write(dir: &Path, rel: &str, bytes: &[u8]) -> CliResult<()> {
    let path = dir.join(rel);
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent).map_err(|e| CliError::io(parent.display(), e))?;
    }
    std::fs::write(&path, bytes).map_err(|e| CliError::io(path.display(), e))
}

/// The report document; carries no timestamps, so it is a pure function of
/// the config.
pub fn report_json(config: &RunConfig, results: &serde_json::Value) -> Vec<u8> {
    let doc = serde_json::json!({
        "schema_version": SCHEMA_VERSION,
        "experiment": config.experiment,
        "seed": config.seed,
        "config": config,
        "results": results,
    });
    let mut bytes = serde_json::to_vec_pretty(&doc).expect("report serializes");
    bytes.push(b'\n');
    bytes
}

pub fn write_run(
    dir: &Path,
    config: &RunConfig,
    artifacts: &Artifacts,
    started: DateTime<Utc>,
    finished: DateTime<Utc>,
) -> CliResult<RunManifest> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir.display(), e))?;
    let mut files = vec![("report.json".to_string(), report_json(config, &artifacts.results))];
    files.extend(artifacts.files.iter().cloned());
    files.sort_by(|a, b| a.0.cmp(&b.0));

    let mut outputs = Vec::with_capacity(files.len());
    for (rel, bytes) in &files {
        write(dir, rel, bytes)?;
        outputs.push(OutputEntry {
            path: rel.clone(),
            sha256: hex::encode(Sha256::digest(bytes)),
        });
    }
    let manifest = RunManifest {
        tool_version: env!("CARGO_PKG_VERSION"),
        config_digest: config.digest(),
        seed: config.seed,
        experiment: config.experiment.clone(),
        started_utc: utc(started),
        finished_utc: utc(finished),
        outputs,
    };
    let mut bytes = serde_json::to_vec_pretty(&manifest).expect("manifest serializes");
    bytes.push(b'\n');
    write(dir, "manifest.json", &bytes)?;
    Ok(manifest)
}
