use crate::error::{CliError, CliResult};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use soliton_core::grid::{write_snapshot_csv, Grid1D};
use soliton_core::solvers::{RunReport, Sample};
use std::fmt::Write as _;

/// Everything a run produces besides the manifest.
pub struct Artifacts {
    pub results: Value,
    /// Paths relative to the run directory, with contents.
    pub files: Vec<(String, Vec<u8>)>,
    pub summary: String,
}

impl Artifacts {
    pub fn new(results: impl Serialize, summary: String) -> Self {
        Artifacts {
            results: to_value(results),
            files: Vec::new(),
            summary,
        }
    }

    pub fn with_file(mut self, path: impl Into<String>, contents: Vec<u8>) -> Self {
        self.files.push((path.into(), contents));
        self
    }
}

pub fn to_value(x: impl Serialize) -> Value {
    serde_json::to_value(x).expect("reports serialize to JSON")
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GridParams {
    pub n: usize,
    pub z_min: f64,
    pub z_max: f64,
}

impl Default for GridParams {
    fn default() -> Self {
        GridParams {
            n: 512,
            z_min: -20.48,
            z_max: 20.48,
        }
    }
}

impl GridParams {
    pub fn build(&self) -> CliResult<Grid1D> {
        Ok(Grid1D::new(self.n, self.z_min, self.z_max)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct StepParams {
    pub dt: f64,
    pub t_final: f64,
    pub snapshot_every: usize,
}

impl Default for StepParams {
    fn default() -> Self {
        StepParams {
            dt: 1e-3,
            t_final: 1.0,
            snapshot_every: 100,
        }
    }
}

/// Tabulated potential recipes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum PotentialSpec {
    #[default]
    None,
    /// `V = g z`.
    Linear { g: f64 },
    /// `V = k z^2 / 2`.
    Harmonic { k: f64 },
    /// `V = v0` on `[start, start + length)`.
    Barrier { v0: f64, start: f64, length: f64 },
    Table { values: Vec<f64> },
}

impl PotentialSpec {
    pub fn sample(&self, grid: &Grid1D) -> CliResult<Vec<f64>> {
        let v: Vec<f64> = match self {
            PotentialSpec::None => vec![0.0; grid.n()],
            PotentialSpec::Linear { g } => grid.points().map(|z| g * z).collect(),
            PotentialSpec::Harmonic { k } => grid.points().map(|z| 0.5 * k * z * z).collect(),
            PotentialSpec::Barrier { v0, start, length } => grid
                .points()
                .map(|z| if z >= *start && z < start + length { *v0 } else { 0.0 })
                .collect(),
            PotentialSpec::Table { values } => {
                if values.len() != grid.n() {
                    return Err(CliError::config(format!(
                        "potential table has {} values but the grid has {}",
                        values.len(),
                        grid.n()
                    )));
                }
                values.clone()
            }
        };
        if v.iter().any(|x| !x.is_finite()) {
            return Err(CliError::config("potential contains non-finite values"));
        }
        Ok(v)
    }
}

pub fn samples_csv(samples: &[Sample]) -> Vec<u8> {
    let mut s = String::from("t,norm,centroid,rms_width,peak_position\n");
    for x in samples {
        let _ = writeln!(s, "{:e},{:e},{:e},{:e},{:e}", x.t, x.norm, x.centroid, x.rms_width, x.peak_position);
    }
    s.into_bytes()
}

/// `snapshots/snapshot_NNNN.csv` for every kept snapshot, plus the sampled
/// observables.
pub fn report_files(report: &RunReport) -> CliResult<Vec<(String, Vec<u8>)>> {
    let mut files = vec![("snapshots/observables.csv".to_string(), samples_csv(&report.samples))];
    for (i, snap) in report.snapshots.iter().enumerate() {
        let extra: Vec<(&str, &[f64])> = snap.columns.iter().map(|(n, c)| (n.as_str(), c.as_slice())).collect();
        let mut buf = Vec::new();
        write_snapshot_csv(&mut buf, &snap.field, snap.t, &extra).map_err(|e| CliError::io("snapshot", e))?;
        files.push((format!("snapshots/snapshot_{i:04}.csv"), buf));
    }
    Ok(files)
}

/// Errors collected from a fallible check, as diagnostics.
pub fn collect<T>(out: &mut Vec<String>, r: CliResult<T>) -> Option<T> {
    match r {
        Ok(x) => Some(x),
        Err(CliError::Config(msgs)) => {
            out.extend(msgs);
            None
        }
        Err(e) => {
            out.push(e.to_string());
            None
        }
    }
}
