//! Quantum-potential-cancelled evolution of a sech envelope, with its
//! centroid checked against the classical trajectory under `V = g z`.

use super::common::{collect, report_files, Artifacts, GridParams, PotentialSpec, StepParams};
use crate::error::CliResult;
use serde::{Deserialize, Serialize};
use soliton_core::madelung::{evolve_ekholdt, EkholdtConfig};
use std::fmt::Write as _;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct MadelungParams {
    pub grid: GridParams,
    pub r: f64,
    pub a: f64,
    pub v_e: f64,
    pub z0: f64,
    pub mass: f64,
    pub hbar: f64,
    pub potential: PotentialSpec,
    pub solver: StepParams,
    pub keep_snapshots: bool,
}

impl Default for MadelungParams {
    fn default() -> Self {
        MadelungParams {
            grid: GridParams::default(),
            r: 1.0,
            a: 1.0,
            v_e: 1.0,
            z0: 0.0,
            mass: 1.0,
            hbar: 1.0,
            potential: PotentialSpec::Linear { g: 0.2 },
            solver: StepParams {
                dt: 1e-2,
                t_final: 5.0,
                snapshot_every: 50,
            },
            keep_snapshots: true,
        }
    }
}

fn config(p: &MadelungParams) -> CliResult<(soliton_core::grid::Grid1D, EkholdtConfig)> {
    let grid = p.grid.build()?;
    let potential = p.potential.sample(&grid)?;
    let s = p.solver;
    let mut cfg = EkholdtConfig::free(&grid, p.r, p.a, p.v_e, p.z0, s.dt, s.t_final, s.snapshot_every)
        .with_potential(potential);
    cfg.mass = p.mass;
    cfg.hbar = p.hbar;
    cfg.keep_snapshots = p.keep_snapshots;
    Ok((grid, cfg))
}

pub fn diagnostics(p: &MadelungParams) -> Vec<String> {
    let mut out = Vec::new();
    if let Some((grid, cfg)) = collect(&mut out, config(p)) {
        let d = cfg.diagnostics(&grid);
        if d.is_empty() {
            // boundary containment and the initial CFL guard
            collect(&mut out, cfg.initial_field(&grid).map_err(Into::into));
        }
        out.extend(d);
    }
    out
}

#[derive(Serialize)]
struct Trajectory {
    g: f64,
    /// max |centroid - classical| over the samples.
    max_abs_error: f64,
    /// max_abs_error over the largest classical displacement from z0.
    relative_error: f64,
}

pub fn run(p: &MadelungParams) -> CliResult<Artifacts> {
    let (grid, cfg) = config(p)?;
    let initial = cfg.initial_field(&grid)?;
    let report = evolve_ekholdt(&initial, &cfg)?;
    let c = &report.conservation;
    let mut summary = format!(
        "{} steps of {:.4e} to t = {}\nrms width ratio {:.9}\nmax drift of sum R^2 dz {:.3e}\n",
        report.steps,
        report.effective_dt,
        report.t_final,
        report.width_ratio(),
        c.max_norm_drift
    );

    let mut trajectory = None;
    let mut csv = String::from("t,centroid,classical\n");
    let slope = match p.potential {
        PotentialSpec::None => Some(0.0),
        PotentialSpec::Linear { g } => Some(g),
        _ => None,
    };
    if let Some(g) = slope {
        let classical = |t: f64| p.z0 + p.v_e * t - g * t * t / (2.0 * p.mass);
        let (mut err, mut span) = (0.0f64, 0.0f64);
        for s in &report.samples {
            let zc = classical(s.t);
            err = err.max((s.centroid - zc).abs());
            span = span.max((zc - p.z0).abs());
            let _ = writeln!(csv, "{:e},{:e},{:e}", s.t, s.centroid, zc);
        }
        let rel = if span > 0.0 { err / span } else { err };
        let _ = writeln!(summary, "centroid vs classical trajectory: max error {err:.3e} ({rel:.3e} of the travel)");
        trajectory = Some(Trajectory {
            g,
            max_abs_error: err,
            relative_error: rel,
        });
    }

    let mut art = Artifacts::new(serde_json::json!({ "run": report, "trajectory": trajectory }), summary);
    art.files = report_files(&report)?;
    if trajectory.is_some() {
        art = art.with_file("snapshots/trajectory.csv", csv.into_bytes());
    }
    Ok(art)
}
