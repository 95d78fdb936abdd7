use super::common::Artifacts;
use crate::error::CliResult;
use serde::{Deserialize, Serialize};
use soliton_core::constants::electron_constants;
use soliton_core::experiments::{bohr_orbit, bohr_phase_accordance, photon_relations, BohrOrbit, PhaseAccordance};
use std::fmt::Write as _;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct BohrParams {
    pub n_max: u32,
}

impl Default for BohrParams {
    fn default() -> Self {
        BohrParams { n_max: 20 }
    }
}

pub fn bohr_diagnostics(p: &BohrParams) -> Vec<String> {
    if p.n_max == 0 {
        vec!["n_max must be >= 1".to_string()]
    } else {
        Vec::new()
    }
}

#[derive(Serialize)]
struct BohrRow {
    orbit: BohrOrbit,
    accordance: PhaseAccordance,
    /// orbit_length / de_broglie_wavelength - N, relative.
    standing_wave_error: f64,
}

pub fn run_bohr(p: &BohrParams) -> CliResult<Artifacts> {
    let k = electron_constants();
    let mut rows = Vec::new();
    let mut csv = String::from(
        "n,radius,velocity,period,energy_ev,tau,orbit_length,de_broglie_wavelength,quantization_residual,nonrelativistic_gap\n",
    );
    let mut summary = String::from("  N   radius (m)     energy (eV)   L/lambda   f_clock*tau-N   nonrel gap\n");
    for n in 1..=p.n_max {
        let orbit = bohr_orbit(n, &k)?;
        let accordance = bohr_phase_accordance(n, &k)?;
        let ratio = orbit.orbit_length / orbit.de_broglie_wavelength;
        let _ = writeln!(
            csv,
            "{n},{:e},{:e},{:e},{:e},{:e},{:e},{:e},{:e},{:e}",
            orbit.radius,
            orbit.velocity,
            orbit.period,
            orbit.energy / k.ev,
            orbit.extra_arc_time,
            orbit.orbit_length,
            orbit.de_broglie_wavelength,
            accordance.quantization_residual,
            accordance.nonrelativistic_gap
        );
        let _ = writeln!(
            summary,
            "{n:>3}  {:.6e}  {:>12.6}  {:>9.6}  {:>13.3e}  {:.3e}",
            orbit.radius,
            orbit.energy / k.ev,
            ratio,
            accordance.quantization_residual,
            accordance.nonrelativistic_gap
        );
        rows.push(BohrRow {
            orbit,
            accordance,
            standing_wave_error: (ratio - n as f64) / n as f64,
        });
    }
    Ok(Artifacts::new(
        serde_json::json!({ "constants": k, "orbits": rows }),
        summary,
    )
    .with_file("snapshots/orbits.csv", csv.into_bytes()))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PhotonParams {
    /// Photon frequency (Hz).
    pub f: f64,
    /// Mode cutoff (Hz).
    pub f0: f64,
}

impl Default for PhotonParams {
    fn default() -> Self {
        let f0 = electron_constants().rest_frequency();
        PhotonParams { f: 2.0 * f0, f0 }
    }
}

pub fn photon_diagnostics(p: &PhotonParams) -> Vec<String> {
    let mut out = Vec::new();
    if !(p.f > 0.0) {
        out.push(format!("f must be > 0, got {}", p.f));
    }
    if !(p.f0 > 0.0) {
        out.push(format!("f0 must be > 0, got {}", p.f0));
    }
    out
}

pub fn run_photon(p: &PhotonParams) -> CliResult<Artifacts> {
    let r = photon_relations(p.f, p.f0, &electron_constants())?;
    let summary = format!(
        "f        {:.6e} Hz\nf0       {:.6e} Hz\nf_zigzag {:.6e} Hz\nE_zigzag {:.6e} J\n",
        r.f, r.f0, r.f_zigzag, r.e_zigzag
    );
    Ok(Artifacts::new(r, summary))
}
