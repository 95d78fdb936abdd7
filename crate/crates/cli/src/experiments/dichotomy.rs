use super::common::{collect, Artifacts};
use crate::error::CliResult;
use soliton_core::experiments::dichotomy::dichotomy_grid;
use soliton_core::experiments::{run_dispersion_vs_soliton, DichotomySettings};
use soliton_core::grid::{build_packet, PacketSpec};
use soliton_core::madelung::EkholdtConfig;
use soliton_core::solvers::{Scheme, SolverConfig};
use std::fmt::Write as _;

pub fn diagnostics(p: &DichotomySettings) -> Vec<String> {
    let mut out = Vec::new();
    if !(p.amplitude_scale > 0.0) {
        out.push(format!("amplitude_scale must be > 0, got {}", p.amplitude_scale));
    }
    let Some(grid) = collect(&mut out, dichotomy_grid(p).map_err(Into::into)) else {
        return out;
    };
    collect(&mut out, build_packet(&PacketSpec::breather(p.a, 0.0, 0.0), &grid).map_err(Into::into));
    if p.t_final == 0.0 {
        return out;
    }
    for scheme in [Scheme::LinearSchrodinger, Scheme::Nls] {
        if let Some(cfg) = collect(
            &mut out,
            SolverConfig::free(scheme, &grid, p.dt, p.t_final, p.snapshot_every).map_err(Into::into),
        ) {
            out.extend(cfg.diagnostics(&grid));
        }
    }
    let ek = EkholdtConfig::free(&grid, p.a * p.amplitude_scale, p.a, 0.0, 0.0, p.dt, p.t_final, p.snapshot_every);
    out.extend(ek.diagnostics(&grid));
    out.sort();
    out.dedup();
    out
}

pub fn run(p: &DichotomySettings) -> CliResult<Artifacts> {
    let rep = run_dispersion_vs_soliton(p)?;
    let mut csv = String::from("t,linear_schrodinger,nls,ekholdt\n");
    for [t, l, n, e] in rep.width_table() {
        let _ = writeln!(csv, "{t:e},{l:e},{n:e},{e:e}");
    }
    let mut summary = format!("rms width ratio at t = {}:\n", p.t_final);
    for o in rep.outcomes() {
        let drift = o.conservation.map_or(0.0, |c| c.max_norm_drift);
        let _ = writeln!(
            summary,
            "  {:<20} {:>10.6}  {:<16} norm drift {drift:.2e}",
            o.solver,
            o.width_ratio,
            serde_json::to_value(o.verdict).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default()
        );
    }
    Ok(Artifacts::new(&rep, summary).with_file("snapshots/widths.csv", csv.into_bytes()))
}
