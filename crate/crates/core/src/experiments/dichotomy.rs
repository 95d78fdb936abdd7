//! The same sech packet under the linear Schrödinger equation, the cubic
//! NLS and the quantum-potential-cancelling evolution: one spreads, the
//! other two keep their shape.

use crate::error::{Error, Result};
use crate::grid::{build_packet, observables, Grid1D, PacketSpec};
use crate::madelung::{evolve_ekholdt, EkholdtConfig};
use crate::solvers::{evolve_linear_schrodinger, evolve_nls, Conservation, RunReport, Sample, Scheme, SolverConfig};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Width ratio window for "shape preserved".
pub const SHAPE_TOLERANCE: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DichotomySettings {
    pub n: usize,
    pub dz: f64,
    pub dt: f64,
    pub t_final: f64,
    pub snapshot_every: usize,
    /// Envelope parameter a of `a sech(a z)`.
    pub a: f64,
    /// Multiplies the initial amplitude only (1 = the NLS soliton).
    pub amplitude_scale: f64,
}

impl Default for DichotomySettings {
    fn default() -> Self {
        DichotomySettings {
            n: 4096,
            dz: 0.1,
            dt: 1e-3,
            t_final: 10.0,
            snapshot_every: 500,
            a: 1.0,
            amplitude_scale: 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    ShapePreserved,
    Dispersed,
    NotASoliton,
}

#[derive(Debug, Clone, Serialize)]
pub struct SolverOutcome {
    pub solver: String,
    pub width_ratio: f64,
    pub verdict: Verdict,
    pub samples: Vec<Sample>,
    pub conservation: Option<Conservation>,
    #[serde(skip)]
    pub report: Option<RunReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DichotomyReport {
    pub settings: DichotomySettings,
    pub linear: SolverOutcome,
    pub nls: SolverOutcome,
    pub ekholdt: SolverOutcome,
}

impl DichotomyReport {
    pub fn outcomes(&self) -> [&SolverOutcome; 3] {
        [&self.linear, &self.nls, &self.ekholdt]
    }

    /// Rows `t, linear, nls, ekholdt` of rms width; the three runs share
    /// their sampling times.
    pub fn width_table(&self) -> Vec<[f64; 4]> {
        self.linear
            .samples
            .iter()
            .zip(&self.nls.samples)
            .zip(&self.ekholdt.samples)
            .map(|((l, n), e)| [l.t, l.rms_width, n.rms_width, e.rms_width])
            .collect()
    }
}

fn verdict(ratio: f64, soliton_expected: bool) -> Verdict {
    if (ratio - 1.0).abs() <= SHAPE_TOLERANCE {
        Verdict::ShapePreserved
    } else if soliton_expected {
        Verdict::NotASoliton
    } else {
        Verdict::Dispersed
    }
}

fn outcome(solver: &str, report: RunReport, soliton_expected: bool) -> SolverOutcome {
    let ratio = report.width_ratio();
    SolverOutcome {
        solver: solver.to_string(),
        width_ratio: ratio,
        verdict: verdict(ratio, soliton_expected),
        samples: report.samples.clone(),
        conservation: Some(report.conservation),
        report: Some(report),
    }
}

pub fn dichotomy_grid(settings: &DichotomySettings) -> Result<Grid1D> {
    Grid1D::centered(settings.n, settings.dz)
}

pub fn run_dispersion_vs_soliton(settings: &DichotomySettings) -> Result<DichotomyReport> {
    if !(settings.amplitude_scale > 0.0) {
        return Err(Error::Config(format!(
            "amplitude_scale must be > 0, got {}",
            settings.amplitude_scale
        )));
    }
    let grid = dichotomy_grid(settings)?;
    let psi0 = build_packet(&PacketSpec::breather(settings.a, 0.0, 0.0), &grid)?
        .scaled(Complex64::new(settings.amplitude_scale, 0.0));

    if settings.t_final == 0.0 {
        let sample = Sample::new(0.0, observables(&psi0)?);
        let still = |name: &str| SolverOutcome {
            solver: name.to_string(),
            width_ratio: 1.0,
            verdict: Verdict::ShapePreserved,
            samples: vec![sample],
            conservation: None,
            report: None,
        };
        return Ok(DichotomyReport {
            settings: *settings,
            linear: still("linear_schrodinger"),
            nls: still("nls"),
            ekholdt: still("ekholdt"),
        });
    }

    let every = settings.snapshot_every;
    let linear_cfg = SolverConfig::free(Scheme::LinearSchrodinger, &grid, settings.dt, settings.t_final, every)?;
    let nls_cfg = SolverConfig::free(Scheme::Nls, &grid, settings.dt, settings.t_final, every)?;
    let ek_cfg = EkholdtConfig::free(
        &grid,
        settings.a * settings.amplitude_scale,
        settings.a,
        0.0,
        0.0,
        settings.dt,
        settings.t_final,
        every,
    );

    let linear = evolve_linear_schrodinger(&psi0, &linear_cfg)?;
    let nls = evolve_nls(&psi0, &nls_cfg)?;
    let initial = ek_cfg.initial_field(&grid)?;
    let ekholdt = evolve_ekholdt(&initial, &ek_cfg)?;

    Ok(DichotomyReport {
        settings: *settings,
        linear: outcome("linear_schrodinger", linear, false),
        nls: outcome("nls", nls, true),
        ekholdt: outcome("ekholdt", ekholdt, true),
    })
}
