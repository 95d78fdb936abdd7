//! Dispersion tables, optionally checked against Klein–Gordon runs: a
//! plane-wave probe per wavenumber (frequency) and a Gaussian packet
//! (group velocity).

use super::common::{collect, Artifacts, GridParams};
use crate::error::{CliError, CliResult};
use serde::{Deserialize, Serialize};
use soliton_core::analysis::{linear_fit, phase_regression_frequency};
use soliton_core::dispersion::{BranchKind, DispersionBranch};
use soliton_core::grid::{build_packet, PacketSpec};
use soliton_core::solvers::{evolve_klein_gordon, klein_gordon_rate, BranchSign, KleinGordonParams, Scheme, SolverConfig};
use std::f64::consts::PI;
use std::fmt::Write as _;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DispersionParams {
    pub branch: BranchKind,
    pub omega0: f64,
    pub c: f64,
    pub potential: f64,
    pub hbar: f64,
    pub k_max: f64,
    pub points: usize,
    /// Wavenumbers whose frequency is measured with a Klein–Gordon run.
    pub probe_k: Vec<f64>,
    pub probe: ProbeParams,
    pub packet: Option<PacketProbe>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ProbeParams {
    pub grid: GridParams,
    pub dt: f64,
    pub t_final: f64,
    pub index: usize,
}

impl Default for ProbeParams {
    fn default() -> Self {
        ProbeParams {
            grid: GridParams {
                n: 1024,
                z_min: -8.0 * PI,
                z_max: 8.0 * PI,
            },
            dt: 0.01,
            t_final: 100.0,
            index: 300,
        }
    }
}

/// Gaussian packet whose centroid speed is compared with the group velocity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PacketProbe {
    pub k0: f64,
    pub sigma: f64,
    pub grid: GridParams,
    pub dt: f64,
    pub t_final: f64,
    pub snapshot_every: usize,
}

impl Default for PacketProbe {
    fn default() -> Self {
        PacketProbe {
            k0: 0.75,
            sigma: 8.0,
            grid: GridParams {
                n: 4096,
                z_min: -32.0 * PI,
                z_max: 32.0 * PI,
            },
            dt: 0.02,
            t_final: 100.0,
            snapshot_every: 50,
        }
    }
}

impl Default for DispersionParams {
    fn default() -> Self {
        DispersionParams {
            branch: BranchKind::KleinGordon,
            omega0: 1.0,
            c: 1.0,
            potential: 0.0,
            hbar: 1.0,
            k_max: 3.0,
            points: 31,
            probe_k: Vec::new(),
            probe: ProbeParams::default(),
            packet: None,
        }
    }
}

fn branch(p: &DispersionParams) -> CliResult<DispersionBranch> {
    Ok(match p.branch {
        BranchKind::KleinGordon => DispersionBranch::klein_gordon(p.omega0, p.c)?,
        BranchKind::SchrodingerApprox => DispersionBranch::schrodinger(p.omega0, p.c, p.potential, p.hbar)?,
    })
}

fn kg_config(grid: &soliton_core::grid::Grid1D, dt: f64, t_final: f64, every: usize, p: &DispersionParams) -> CliResult<SolverConfig> {
    Ok(SolverConfig::free(Scheme::KleinGordon, grid, dt, t_final, every)?.with_klein_gordon(KleinGordonParams {
        c: p.c,
        omega0: p.omega0,
    }))
}

pub fn diagnostics(p: &DispersionParams) -> Vec<String> {
    let mut out = Vec::new();
    collect(&mut out, branch(p));
    if !(p.k_max >= 0.0) || p.points < 2 {
        out.push(format!("need k_max >= 0 and points >= 2, got {} and {}", p.k_max, p.points));
    }
    let wants_runs = !p.probe_k.is_empty() || p.packet.is_some();
    if wants_runs && p.branch != BranchKind::KleinGordon {
        out.push("probe_k and packet measurements run the Klein-Gordon solver; set branch to klein_gordon".into());
        return out;
    }
    if !p.probe_k.is_empty() {
        if let Some(grid) = collect(&mut out, p.probe.grid.build()) {
            for &k in &p.probe_k {
                let cycles = k * grid.length() / (2.0 * PI);
                if (cycles - cycles.round()).abs() > 1e-9 {
                    out.push(format!(
                        "probe_k = {k} is not periodic on a domain of length {} ({cycles} wavelengths)",
                        grid.length()
                    ));
                }
            }
            if p.probe.index >= grid.n() {
                out.push(format!("probe.index {} outside grid of {}", p.probe.index, grid.n()));
            }
            if let Some(cfg) = collect(&mut out, kg_config(&grid, p.probe.dt, p.probe.t_final, usize::MAX, p)) {
                out.extend(cfg.diagnostics(&grid));
            }
        }
    }
    if let Some(pk) = &p.packet {
        if let Some(grid) = collect(&mut out, pk.grid.build()) {
            collect(&mut out, build_packet(&PacketSpec::gaussian(pk.sigma, pk.k0, 0.0), &grid).map_err(CliError::from));
            if let Some(cfg) = collect(&mut out, kg_config(&grid, pk.dt, pk.t_final, pk.snapshot_every.max(1), p)) {
                out.extend(cfg.diagnostics(&grid));
            }
        }
    }
    out
}

#[derive(Serialize)]
struct Row {
    k: f64,
    omega: f64,
    group_velocity: f64,
    phase_velocity: Option<f64>,
}

#[derive(Serialize)]
struct FrequencyProbe {
    k: f64,
    omega_exact: f64,
    omega_measured: f64,
    relative_error: f64,
    max_energy_drift: Option<f64>,
}

#[derive(Serialize)]
struct GroupVelocityProbe {
    k0: f64,
    group_velocity_exact: f64,
    centroid_velocity: f64,
    relative_error: f64,
}

pub fn run(p: &DispersionParams) -> CliResult<Artifacts> {
    let b = branch(p)?;
    let mut rows = Vec::new();
    let mut csv = String::from("k,omega,group_velocity,phase_velocity\n");
    for i in 0..p.points {
        let k = p.k_max * i as f64 / (p.points - 1) as f64;
        let omega = b.omega(k);
        let vg = b.group_velocity(k);
        let vp = if k > 0.0 { Some(omega / k) } else { None };
        let _ = writeln!(csv, "{k:e},{omega:e},{vg:e},{}", vp.map_or("inf".to_string(), |v| format!("{v:e}")));
        rows.push(Row {
            k,
            omega,
            group_velocity: vg,
            phase_velocity: vp,
        });
    }
    let mut summary = format!("{:?} branch, omega0 = {}, c = {}\n", p.branch, p.omega0, p.c);

    let mut probes = Vec::new();
    if !p.probe_k.is_empty() {
        let grid = p.probe.grid.build()?;
        for &k in &p.probe_k {
            let psi0 = build_packet(&PacketSpec::PlaneWave { amplitude: 1.0, k0: k }, &grid)?;
            let rate = klein_gordon_rate(&psi0, BranchSign::Positive, p.c, p.omega0);
            let cfg = kg_config(&grid, p.probe.dt, p.probe.t_final, usize::MAX, p)?
                .with_probe(p.probe.index)
                .without_snapshots();
            let rep = evolve_klein_gordon(&psi0, &rate, &cfg)?;
            let measured = phase_regression_frequency(&rep.probe);
            let exact = b.omega(k);
            let _ = writeln!(summary, "k = {k}: omega measured {measured:.8}, exact {exact:.8}");
            probes.push(FrequencyProbe {
                k,
                omega_exact: exact,
                omega_measured: measured,
                relative_error: (measured - exact) / exact,
                max_energy_drift: rep.conservation.max_energy_drift,
            });
        }
    }

    let mut packet = None;
    if let Some(pk) = &p.packet {
        let grid = pk.grid.build()?;
        let psi0 = build_packet(&PacketSpec::gaussian(pk.sigma, pk.k0, 0.0), &grid)?;
        let rate = klein_gordon_rate(&psi0, BranchSign::Positive, p.c, p.omega0);
        let cfg = kg_config(&grid, pk.dt, pk.t_final, pk.snapshot_every, p)?.without_snapshots();
        let rep = evolve_klein_gordon(&psi0, &rate, &cfg)?;
        let t: Vec<f64> = rep.samples.iter().map(|s| s.t).collect();
        let z: Vec<f64> = rep.samples.iter().map(|s| s.centroid).collect();
        let (v, _) = linear_fit(&t, &z);
        let exact = b.group_velocity(pk.k0);
        let _ = writeln!(summary, "packet at k0 = {}: centroid speed {v:.6}, group velocity {exact:.6}", pk.k0);
        packet = Some(GroupVelocityProbe {
            k0: pk.k0,
            group_velocity_exact: exact,
            centroid_velocity: v,
            relative_error: (v - exact) / exact,
        });
    }

    Ok(Artifacts::new(
        serde_json::json!({ "branch": b, "table": rows, "frequency_probes": probes, "packet_probe": packet }),
        summary,
    )
    .with_file("snapshots/dispersion.csv", csv.into_bytes()))
}
