//! One solver run from one packet.

use super::common::{collect, report_files, Artifacts, GridParams, PotentialSpec, StepParams};
use crate::error::CliResult;
use serde::{Deserialize, Serialize};
use soliton_core::analysis::phase_regression_frequency;
use soliton_core::dispersion::DispersionBranch;
use soliton_core::grid::{build_packet, ComplexField, Grid1D, PacketSpec};
use soliton_core::solvers::{
    breather_field, evolve_klein_gordon, evolve_linear_schrodinger, evolve_nls, klein_gordon_rate, BranchSign,
    KleinGordonParams, RunReport, Scheme, SolverConfig,
};
use std::fmt::Write as _;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct KleinGordonSettings {
    pub c: f64,
    pub omega0: f64,
    /// Branch the initial rate is placed on.
    pub branch: BranchSign,
}

impl Default for KleinGordonSettings {
    fn default() -> Self {
        KleinGordonSettings {
            c: 1.0,
            omega0: 1.0,
            branch: BranchSign::Positive,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct EvolveParams {
    pub scheme: Scheme,
    pub grid: GridParams,
    pub packet: PacketSpec,
    pub solver: StepParams,
    pub potential: PotentialSpec,
    pub klein_gordon: KleinGordonSettings,
    /// Grid index recorded every step.
    pub probe: Option<usize>,
    pub keep_snapshots: bool,
}

impl Default for EvolveParams {
    fn default() -> Self {
        EvolveParams {
            scheme: Scheme::Nls,
            grid: GridParams::default(),
            packet: PacketSpec::breather(1.0, 0.0, 0.0),
            solver: StepParams::default(),
            potential: PotentialSpec::None,
            klein_gordon: KleinGordonSettings::default(),
            probe: None,
            keep_snapshots: true,
        }
    }
}

fn solver_config(p: &EvolveParams, grid: &Grid1D) -> CliResult<SolverConfig> {
    let mut cfg = SolverConfig::new(
        p.scheme,
        p.solver.dt,
        p.solver.t_final,
        p.solver.snapshot_every,
        p.potential.sample(grid)?,
    )?
    .with_klein_gordon(KleinGordonParams {
        c: p.klein_gordon.c,
        omega0: p.klein_gordon.omega0,
    });
    if let Some(i) = p.probe {
        cfg = cfg.with_probe(i);
    }
    if !p.keep_snapshots {
        cfg = cfg.without_snapshots();
    }
    Ok(cfg)
}

pub fn diagnostics(p: &EvolveParams) -> Vec<String> {
    let mut out = Vec::new();
    let Some(grid) = collect(&mut out, p.grid.build()) else {
        return out;
    };
    collect(&mut out, build_packet(&p.packet, &grid).map_err(Into::into));
    if let Some(cfg) = collect(&mut out, solver_config(p, &grid)) {
        out.extend(cfg.diagnostics(&grid));
    }
    out
}

/// Comparison with the exact breather, when the run is a free NLS breather.
#[derive(Serialize)]
struct BreatherCheck {
    l2_error: f64,
    max_error: f64,
}

#[derive(Serialize)]
struct FrequencyCheck {
    omega_measured: f64,
    /// For a plane-wave packet: the dispersion-relation value.
    omega_exact: Option<f64>,
}

fn breather_check(p: &EvolveParams, report: &RunReport) -> Option<BreatherCheck> {
    match (p.scheme, p.packet, &p.potential) {
        (Scheme::Nls, PacketSpec::SechBreather { amplitude, center, velocity }, PotentialSpec::None) => {
            let exact: ComplexField = breather_field(&report.grid, report.t_final, amplitude, velocity, center);
            Some(BreatherCheck {
                l2_error: report.final_field.l2_distance(&exact),
                max_error: report.final_field.max_abs_difference(&exact),
            })
        }
        _ => None,
    }
}

pub fn run(p: &EvolveParams) -> CliResult<Artifacts> {
    let grid = p.grid.build()?;
    let psi0 = build_packet(&p.packet, &grid)?;
    let cfg = solver_config(p, &grid)?;
    let report = match p.scheme {
        Scheme::LinearSchrodinger => evolve_linear_schrodinger(&psi0, &cfg)?,
        Scheme::Nls => evolve_nls(&psi0, &cfg)?,
        Scheme::KleinGordon => {
            let kg = p.klein_gordon;
            let rate = klein_gordon_rate(&psi0, kg.branch, kg.c, kg.omega0);
            evolve_klein_gordon(&psi0, &rate, &cfg)?
        }
    };

    let c = &report.conservation;
    let mut summary = format!(
        "{} on {} points, dz = {:.4e}: {} steps of {:.4e} to t = {}\n",
        report.scheme,
        grid.n(),
        grid.dz(),
        report.steps,
        report.effective_dt,
        report.t_final
    );
    let _ = writeln!(summary, "rms width ratio {:.6}", report.width_ratio());
    let _ = writeln!(summary, "max norm drift {:.3e}", c.max_norm_drift);
    if let Some(e) = c.max_energy_drift {
        let _ = writeln!(summary, "max energy drift {e:.3e}");
    }

    let breather = breather_check(p, &report);
    if let Some(b) = &breather {
        let _ = writeln!(summary, "L2 error vs exact breather {:.3e}", b.l2_error);
    }
    let frequency = (!report.probe.is_empty()).then(|| {
        let measured = phase_regression_frequency(&report.probe);
        let exact = match (p.scheme, p.packet) {
            (Scheme::KleinGordon, PacketSpec::PlaneWave { k0, .. }) => {
                DispersionBranch::klein_gordon(p.klein_gordon.omega0, p.klein_gordon.c)
                    .ok()
                    .map(|b| b.omega(k0))
            }
            _ => None,
        };
        let _ = writeln!(summary, "probe frequency {measured:.8}");
        FrequencyCheck {
            omega_measured: measured,
            omega_exact: exact,
        }
    });

    let mut art = Artifacts::new(
        serde_json::json!({ "run": report, "breather_error": breather, "frequency": frequency }),
        summary,
    );
    art.files = report_files(&report)?;
    Ok(art)
}
