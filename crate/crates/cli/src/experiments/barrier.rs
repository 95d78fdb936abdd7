//! Hidden-phase barrier Monte Carlo plus optional wavepacket-splitting
//! comparisons of the linear transmission coefficient.

use super::common::{collect, Artifacts};
use crate::error::CliResult;
use serde::{Deserialize, Serialize};
use soliton_core::constants::electron_constants;
use soliton_core::experiments::{
    run_barrier_monte_carlo, wavepacket_transmission, BarrierSpec, WavepacketBarrier, WavepacketTransmission,
};
use std::fmt::Write as _;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct BarrierParams {
    pub v0_ev: f64,
    pub energy_ev: f64,
    pub length_m: f64,
    pub trials: u64,
    /// Gap centre offset as a fraction of the guide width.
    pub gap_offset: f64,
    /// Normalized-unit (hbar = m = 1) wavepacket-splitting runs.
    pub wavepackets: Vec<WavepacketBarrier>,
}

impl Default for BarrierParams {
    fn default() -> Self {
        // V0 = m0 c^2 / 4 puts the gap at w'/w = 0.8
        let k = electron_constants();
        let mc2_ev = k.rest_energy() / k.ev;
        BarrierParams {
            v0_ev: 0.25 * mc2_ev,
            energy_ev: 0.5 * mc2_ev,
            length_m: 1e-12,
            trials: 1_000_000,
            gap_offset: 0.0,
            wavepackets: Vec::new(),
        }
    }
}

fn spec(p: &BarrierParams, seed: u64) -> BarrierSpec {
    let ev = electron_constants().ev;
    BarrierSpec {
        v0: p.v0_ev * ev,
        length: p.length_m,
        energy: p.energy_ev * ev,
        trials: p.trials,
        seed,
        gap_offset: p.gap_offset,
    }
}

fn wavepacket_diagnostics(i: usize, w: &WavepacketBarrier) -> Vec<String> {
    let mut out = Vec::new();
    for (name, x) in [("energy", w.energy), ("v0", w.v0), ("length", w.length), ("sigma", w.sigma), ("dz", w.dz), ("dt", w.dt), ("t_final", w.t_final)] {
        if !(x > 0.0) || !x.is_finite() {
            out.push(format!("wavepackets[{i}].{name} must be > 0, got {x}"));
        }
    }
    if !(w.z0 + 4.0 * w.sigma < 0.0) {
        out.push(format!("wavepackets[{i}] starts on the barrier: need z0 + 4 sigma < 0"));
    }
    let half = 0.5 * w.n as f64 * w.dz;
    if !(w.length < half) {
        out.push(format!("wavepackets[{i}] barrier extends past the domain edge {half}"));
    }
    if w.dt * w.v0 > soliton_core::solvers::SPLIT_STEP_PHASE_GUARD {
        out.push(format!(
            "wavepackets[{i}]: split-step guard violated: dt * v0 = {:.4e} exceeds {}",
            w.dt * w.v0,
            soliton_core::solvers::SPLIT_STEP_PHASE_GUARD
        ));
    }
    if out.is_empty() {
        if let Some(grid) = collect(&mut out, soliton_core::grid::Grid1D::centered(w.n, w.dz).map_err(Into::into)) {
            let k0 = (2.0 * w.energy).sqrt();
            let packet = soliton_core::grid::PacketSpec::gaussian(w.sigma, k0, w.z0);
            if let Err(e) = soliton_core::grid::build_packet(&packet, &grid) {
                out.push(format!("wavepackets[{i}]: {e}"));
            }
        }
    }
    out
}

pub fn diagnostics(p: &BarrierParams, seed: u64) -> Vec<String> {
    let mut out = spec(p, seed).diagnostics(&electron_constants());
    for (i, w) in p.wavepackets.iter().enumerate() {
        out.extend(wavepacket_diagnostics(i, w));
    }
    out
}

pub fn run(p: &BarrierParams, seed: u64, threads: Option<usize>) -> CliResult<Artifacts> {
    let k = electron_constants();
    let mc = run_barrier_monte_carlo(&spec(p, seed), &k, threads)?;
    let mut summary = format!(
        "{} trials, seed {}: transmitted {}, tunneled {}, reflected {}\n",
        p.trials, seed, mc.transmitted, mc.tunneled, mc.reflected
    );
    let _ = writeln!(
        summary,
        "transmission fraction {:.6} +- {:.6} (w'/w = {:.6}, expected {:.6})",
        mc.transmission_fraction, mc.standard_error, mc.geometric_gap_fraction, mc.expected_fraction
    );
    let _ = writeln!(summary, "linear-equation T at the same (E, V0, L): {:.6e}", mc.linear_t);

    let mut packets: Vec<WavepacketTransmission> = Vec::new();
    let mut csv = String::from("energy,v0,length,transmitted_fraction,linear_t,linear_t_packet\n");
    for w in &p.wavepackets {
        let r = wavepacket_transmission(w)?;
        let _ = writeln!(
            summary,
            "wavepacket E = {}, V0 = {}, L = {}: transmitted {:.6}, T(E) {:.6}",
            w.energy, w.v0, w.length, r.transmitted_fraction, r.linear_t
        );
        let _ = writeln!(
            csv,
            "{:e},{:e},{:e},{:e},{:e},{:e}",
            w.energy, w.v0, w.length, r.transmitted_fraction, r.linear_t, r.linear_t_packet
        );
        packets.push(r);
    }
    let mut art = Artifacts::new(serde_json::json!({ "monte_carlo": mc, "wavepackets": packets }), summary);
    if !packets.is_empty() {
        art = art.with_file("snapshots/wavepackets.csv", csv.into_bytes());
    }
    Ok(art)
}
