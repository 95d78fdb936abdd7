//! Time integrators for the linear Schrödinger, cubic NLS and Klein–Gordon
//! equations, plus the exact moving-breather solution used as reference.
//!
//! Coefficient conventions (normalized units):
//!
//! * linear Schrödinger: `i psi_t + (1/2) psi_zz - V psi = 0` (hbar = m = 1)
//! * NLS: `i phi_t + phi_zz + 2 |phi|^2 phi = 0`
//! * Klein–Gordon: `psi_tt = c^2 psi_zz - omega0^2 psi`

mod breather;
mod klein_gordon;
pub(crate) mod report;
mod split_step;

pub use breather::{breather_field, nls_breather_exact};
pub use klein_gordon::{evolve_klein_gordon, klein_gordon_rate, BranchSign};
pub use report::{Conservation, ProbeSample, RunReport, Sample, Snapshot};
pub use split_step::{evolve_linear_schrodinger, evolve_nls};

use crate::error::{Error, Result};
use crate::grid::Grid1D;
use serde::{Deserialize, Serialize};

pub const LINEAR_CONVENTION: &str = "i psi_t + (1/2) psi_zz - V psi = 0 (hbar = m = 1)";
pub const NLS_CONVENTION: &str = "i phi_t + phi_zz + 2|phi|^2 phi = 0";
pub const KLEIN_GORDON_CONVENTION: &str = "psi_tt = c^2 psi_zz - omega0^2 psi";

/// Leapfrog guard: `dt <= KG_CFL * dz / c`.
pub const KG_CFL: f64 = 0.9;
/// Split-step accuracy guard: `dt * max|V| <= SPLIT_STEP_PHASE_GUARD`.
pub const SPLIT_STEP_PHASE_GUARD: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    LinearSchrodinger,
    Nls,
    KleinGordon,
}

impl Scheme {
    pub fn convention(self) -> &'static str {
        match self {
            Scheme::LinearSchrodinger => LINEAR_CONVENTION,
            Scheme::Nls => NLS_CONVENTION,
            Scheme::KleinGordon => KLEIN_GORDON_CONVENTION,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KleinGordonParams {
    pub c: f64,
    pub omega0: f64,
}

impl Default for KleinGordonParams {
    fn default() -> Self {
        KleinGordonParams { c: 1.0, omega0: 1.0 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    pub scheme: Scheme,
    pub dt: f64,
    pub t_final: f64,
    /// Steps between recorded samples and snapshots.
    pub snapshot_every: usize,
    /// Tabulated V(z), one value per grid point.
    pub potential: Vec<f64>,
    pub klein_gordon: KleinGordonParams,
    /// Grid index recorded every step (for frequency measurements).
    pub probe: Option<usize>,
    /// Keep full field snapshots (observables are always sampled).
    pub keep_snapshots: bool,
}

impl SolverConfig {
    pub fn new(scheme: Scheme, dt: f64, t_final: f64, snapshot_every: usize, potential: Vec<f64>) -> Result<Self> {
        let cfg = SolverConfig {
            scheme,
            dt,
            t_final,
            snapshot_every,
            potential,
            klein_gordon: KleinGordonParams::default(),
            probe: None,
            keep_snapshots: true,
        };
        if let Some(msg) = cfg.basic_problems().into_iter().next() {
            return Err(Error::Config(msg));
        }
        Ok(cfg)
    }

    /// Free evolution (V = 0) on `grid`.
    pub fn free(scheme: Scheme, grid: &Grid1D, dt: f64, t_final: f64, snapshot_every: usize) -> Result<Self> {
        Self::new(scheme, dt, t_final, snapshot_every, vec![0.0; grid.n()])
    }

    pub fn with_klein_gordon(mut self, params: KleinGordonParams) -> Self {
        self.klein_gordon = params;
        self
    }

    pub fn with_probe(mut self, index: usize) -> Self {
        self.probe = Some(index);
        self
    }

    pub fn without_snapshots(mut self) -> Self {
        self.keep_snapshots = false;
        self
    }

    fn basic_problems(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !(self.dt > 0.0) || !self.dt.is_finite() {
            out.push(format!("solver.dt must be > 0, got {}", self.dt));
        }
        if !(self.t_final >= self.dt) || !self.t_final.is_finite() {
            out.push(format!(
                "solver.t_final must be >= dt, got t_final = {} with dt = {}",
                self.t_final, self.dt
            ));
        }
        if self.snapshot_every == 0 {
            out.push("solver.snapshot_every must be >= 1".to_string());
        }
        if self.potential.iter().any(|v| !v.is_finite()) {
            out.push("potential contains non-finite values".to_string());
        }
        out
    }

    /// Every problem that would stop this configuration from running on `grid`.
    pub fn diagnostics(&self, grid: &Grid1D) -> Vec<String> {
        let mut out = self.basic_problems();
        if self.potential.len() != grid.n() {
            out.push(format!(
                "potential has {} samples but the grid has {}",
                self.potential.len(),
                grid.n()
            ));
        }
        if let Some(p) = self.probe {
            if p >= grid.n() {
                out.push(format!("probe index {p} outside grid of {}", grid.n()));
            }
        }
        let max_v = self.potential.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        match self.scheme {
            Scheme::LinearSchrodinger => {
                if self.dt * max_v > SPLIT_STEP_PHASE_GUARD {
                    out.push(format!(
                        "split-step guard violated: dt * max|V| = {:.4e} exceeds {SPLIT_STEP_PHASE_GUARD}",
                        self.dt * max_v
                    ));
                }
            }
            Scheme::Nls => {
                if max_v != 0.0 {
                    out.push("the NLS scheme takes no potential; potential must be zero".to_string());
                }
            }
            Scheme::KleinGordon => {
                let KleinGordonParams { c, omega0 } = self.klein_gordon;
                if !(c > 0.0) || !(omega0 >= 0.0) {
                    out.push(format!(
                        "klein_gordon needs c > 0 and omega0 >= 0, got c = {c}, omega0 = {omega0}"
                    ));
                } else {
                    let bound = KG_CFL * grid.dz() / c;
                    if self.dt > bound {
                        out.push(format!(
                            "Klein-Gordon CFL guard violated: dt = {} exceeds {KG_CFL} dz / c = {bound:.6e}",
                            self.dt
                        ));
                    }
                }
                if max_v != 0.0 {
                    out.push("the Klein-Gordon scheme takes no potential; potential must be zero".to_string());
                }
            }
        }
        out
    }

    pub fn check(&self, grid: &Grid1D, expected: Scheme) -> Result<()> {
        if self.scheme != expected {
            return Err(Error::Config(format!(
                "solver scheme is {:?} but {:?} was requested",
                self.scheme, expected
            )));
        }
        match self.diagnostics(grid).into_iter().next() {
            Some(msg) => Err(Error::Config(msg)),
            None => Ok(()),
        }
    }

    /// Number of steps and the effective step that lands exactly on `t_final`.
    pub fn step_plan(&self) -> (usize, f64) {
        step_plan(self.dt, self.t_final)
    }
}

pub(crate) fn step_plan(dt: f64, t_final: f64) -> (usize, f64) {
    let steps = ((t_final / dt) - 1e-9).ceil().max(1.0) as usize;
    (steps, t_final / steps as f64)
}
