use super::common::Artifacts;
use crate::error::CliResult;
use serde::{Deserialize, Serialize};
use soliton_core::constants::{electron_constants, MUON_MASS};
use soliton_core::kinematics::{kinematic_state, PhaseVelocity};
use std::fmt::Write as _;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Particle {
    Electron,
    Muon,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct KinematicsParams {
    /// Axial velocity as a fraction of c.
    pub v_over_c: f64,
    pub particle: Particle,
}

impl Default for KinematicsParams {
    fn default() -> Self {
        KinematicsParams {
            v_over_c: 0.6,
            particle: Particle::Electron,
        }
    }
}

pub fn diagnostics(p: &KinematicsParams) -> Vec<String> {
    if (0.0..1.0).contains(&p.v_over_c) {
        Vec::new()
    } else {
        vec![format!("v_over_c must lie in [0, 1), got {}", p.v_over_c)]
    }
}

fn fmt_unbounded(v: PhaseVelocity) -> String {
    match v {
        PhaseVelocity::Finite(x) => format!("{x:.6e}"),
        PhaseVelocity::Unbounded => "unbounded".to_string(),
    }
}

pub fn run(p: &KinematicsParams) -> CliResult<Artifacts> {
    let k = electron_constants();
    let mass = match p.particle {
        Particle::Electron => k.m0,
        Particle::Muon => MUON_MASS,
    };
    let s = kinematic_state(p.v_over_c * k.c, mass, &k)?;
    let mut out = String::new();
    let rows: [(&str, String, &str); 14] = [
        ("v", format!("{:.6e}", s.v), "m/s"),
        ("beta", format!("{:.6}", s.beta), ""),
        ("gamma_model", format!("{:.9}", s.gamma_model), "sqrt(1 - beta^2)"),
        ("phi", format!("{:.9}", s.phi), "rad"),
        ("f0", format!("{:.6e}", s.f0), "Hz"),
        ("f_clock", format!("{:.6e}", s.f_clock), "Hz"),
        ("f_wave", format!("{:.6e}", s.f_wave), "Hz"),
        ("f_zigzag", format!("{:.6e}", s.f_zigzag), "Hz"),
        ("V_phase", fmt_unbounded(s.v_phase), "m/s"),
        ("w", format!("{:.6e}", s.w), "m"),
        ("lambda_guide", format!("{:.6e}", s.lambda_guide), "m"),
        ("lambda_phase", fmt_unbounded(s.lambda_phase), "m"),
        ("T_zigzag", format!("{:.6e}", s.t_zigzag), "s"),
        ("L_zigzag", format!("{:.6e}", s.l_zigzag), "m"),
    ];
    for (name, value, unit) in rows {
        let _ = writeln!(out, "{name:<14} {value:>16}  {unit}");
    }
    Ok(Artifacts::new(s, out))
}
