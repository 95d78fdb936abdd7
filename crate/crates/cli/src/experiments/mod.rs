//! Experiment dispatch: typed parameters per experiment id.

mod barrier;
mod bohr;
mod common;
mod dichotomy;
mod dispersion;
mod evolve;
mod kinematics;
mod madelung;

pub use common::Artifacts;

use crate::config::RunConfig;
use crate::error::{CliError, CliResult};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;
use soliton_core::experiments::DichotomySettings;

pub const EXPERIMENTS: [&str; 8] = [
    "kinematics",
    "dispersion",
    "evolve",
    "madelung",
    "soliton-vs-dispersion",
    "barrier",
    "bohr",
    "photon",
];

#[derive(Debug, Clone)]
pub enum Plan {
    Kinematics(kinematics::KinematicsParams),
    Dispersion(dispersion::DispersionParams),
    Evolve(evolve::EvolveParams),
    Madelung(madelung::MadelungParams),
    SolitonVsDispersion(DichotomySettings),
    Barrier(barrier::BarrierParams),
    Bohr(bohr::BohrParams),
    Photon(bohr::PhotonParams),
}

/// Run-time knobs that do not change numeric output.
#[derive(Debug, Clone, Copy, Default)]
pub struct Context {
    pub seed: u64,
    pub parallel_trials: Option<usize>,
}

fn parse<T: DeserializeOwned>(params: &Value) -> CliResult<T> {
    serde_json::from_value(params.clone()).map_err(|e| CliError::config(format!("params: {e}")))
}

impl Plan {
    pub fn from_config(cfg: &RunConfig) -> CliResult<Plan> {
        let p = &cfg.params;
        Ok(match cfg.experiment.as_str() {
            "kinematics" => Plan::Kinematics(parse(p)?),
            "dispersion" => Plan::Dispersion(parse(p)?),
            "evolve" => Plan::Evolve(parse(p)?),
            "madelung" => Plan::Madelung(parse(p)?),
            "soliton-vs-dispersion" => Plan::SolitonVsDispersion(parse(p)?),
            "barrier" => Plan::Barrier(parse(p)?),
            "bohr" => Plan::Bohr(parse(p)?),
            "photon" => Plan::Photon(parse(p)?),
            other => {
                return Err(CliError::config(format!(
                    "unknown experiment `{other}` (expected one of {})",
                    EXPERIMENTS.join(", ")
                )))
            }
        })
    }

    /// Every parameter, defaults included, as it will be used.
    pub fn effective_params(&self) -> Value {
        fn v(x: impl Serialize) -> Value {
            common::to_value(x)
        }
        match self {
            Plan::Kinematics(p) => v(p),
            Plan::Dispersion(p) => v(p),
            Plan::Evolve(p) => v(p),
            Plan::Madelung(p) => v(p),
            Plan::SolitonVsDispersion(p) => v(p),
            Plan::Barrier(p) => v(p),
            Plan::Bohr(p) => v(p),
            Plan::Photon(p) => v(p),
        }
    }

    /// Schema and physics-guard problems; empty means runnable.
    pub fn diagnostics(&self, seed: u64) -> Vec<String> {
        match self {
            Plan::Kinematics(p) => kinematics::diagnostics(p),
            Plan::Dispersion(p) => dispersion::diagnostics(p),
            Plan::Evolve(p) => evolve::diagnostics(p),
            Plan::Madelung(p) => madelung::diagnostics(p),
            Plan::SolitonVsDispersion(p) => dichotomy::diagnostics(p),
            Plan::Barrier(p) => barrier::diagnostics(p, seed),
            Plan::Bohr(p) => bohr::bohr_diagnostics(p),
            Plan::Photon(p) => bohr::photon_diagnostics(p),
        }
    }

    pub fn execute(&self, ctx: Context) -> CliResult<Artifacts> {
        match self {
            Plan::Kinematics(p) => kinematics::run(p),
            Plan::Dispersion(p) => dispersion::run(p),
            Plan::Evolve(p) => evolve::run(p),
            Plan::Madelung(p) => madelung::run(p),
            Plan::SolitonVsDispersion(p) => dichotomy::run(p),
            Plan::Barrier(p) => barrier::run(p, ctx.seed, ctx.parallel_trials),
            Plan::Bohr(p) => bohr::run_bohr(p),
            Plan::Photon(p) => bohr::run_photon(p),
        }
    }
}
