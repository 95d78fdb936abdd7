//! Leapfrog integration of `psi_tt = c^2 psi_zz - omega0^2 psi` with the
//! periodic second-order finite-difference Laplacian.

use super::report::{NormTracker, ProbeSample, Recorder, RunReport};
use super::{Scheme, SolverConfig};
use crate::error::{Error, Result};
use crate::grid::ComplexField;
use crate::spectral::Spectral;
use num_complex::Complex64;

/// Which root of `omega^2 = omega0^2 + c^2 k^2` the initial rate selects.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BranchSign {
    /// `psi_t = -i omega psi`, waves `exp(i (k z - omega t))`.
    Positive,
    /// `psi_t = +i omega psi`.
    Negative,
}

/// Initial time derivative that puts every Fourier mode of `psi0` on one
/// branch: `psi_t = -/+ i omega(k) psi` mode by mode.
pub fn klein_gordon_rate(psi0: &ComplexField, sign: BranchSign, c: f64, omega0: f64) -> ComplexField {
    let mut spectral = Spectral::new(psi0.grid());
    let mut data = psi0.values().to_vec();
    let s = match sign {
        BranchSign::Positive => -1.0,
        BranchSign::Negative => 1.0,
    };
    spectral.apply_symbol(&mut data, |k| {
        Complex64::new(0.0, s * (omega0 * omega0 + c * c * k * k).sqrt())
    });
    ComplexField::new(*psi0.grid(), data).expect("rate of a finite field is finite")
}

fn laplacian(src: &[Complex64], out: &mut [Complex64], inv_dz2: f64) {
    let n = src.len();
    for j in 0..n {
        let left = src[(j + n - 1) % n];
        let right = src[(j + 1) % n];
        out[j] = (left - 2.0 * src[j] + right) * inv_dz2;
    }
}

/// Staggered energy conserved exactly by leapfrog:
/// `|(u1 - u0)/dt|^2 + c^2 Re(D u1 . conj(D u0)) + omega0^2 Re(u1 conj(u0))`.
fn staggered_energy(u0: &[Complex64], u1: &[Complex64], dt: f64, dz: f64, c: f64, omega0: f64) -> f64 {
    let n = u0.len();
    let mut e = 0.0;
    for j in 0..n {
        let jp = (j + 1) % n;
        let rate = (u1[j] - u0[j]) / dt;
        let d1 = (u1[jp] - u1[j]) / dz;
        let d0 = (u0[jp] - u0[j]) / dz;
        e += rate.norm_sqr() + c * c * (d1 * d0.conj()).re + omega0 * omega0 * (u1[j] * u0[j].conj()).re;
    }
    e * dz
}

pub fn evolve_klein_gordon(
    psi0: &ComplexField,
    dpsi0_dt: &ComplexField,
    config: &SolverConfig,
) -> Result<RunReport> {
    let grid = *psi0.grid();
    if dpsi0_dt.grid() != &grid {
        return Err(Error::Config(
            "initial field and initial rate live on different grids".into(),
        ));
    }
    config.check(&grid, Scheme::KleinGordon)?;
    let (steps, dt) = config.step_plan();
    let c = config.klein_gordon.c;
    let omega0 = config.klein_gordon.omega0;
    let dz = grid.dz();
    let inv_dz2 = 1.0 / (dz * dz);
    let n = grid.n();

    let mut prev = psi0.values().to_vec();
    let mut lap = vec![Complex64::new(0.0, 0.0); n];
    laplacian(&prev, &mut lap, inv_dz2);
    let mut curr: Vec<Complex64> = (0..n)
        .map(|j| {
            let acc = c * c * lap[j] - omega0 * omega0 * prev[j];
            prev[j] + dt * dpsi0_dt.values()[j] + 0.5 * dt * dt * acc
        })
        .collect();

    let mut field = psi0.clone();
    let mut norms = NormTracker::new(field.norm());
    let mut recorder = Recorder::new(config.snapshot_every, config.keep_snapshots);
    let mut probe = Vec::new();
    let e0 = staggered_energy(&prev, &curr, dt, dz, c, omega0);
    let mut max_energy_drift: f64 = 0.0;

    recorder.record(0.0, &field)?;
    if let Some(j) = config.probe {
        probe.push(ProbeSample { t: 0.0, re: prev[j].re, im: prev[j].im });
    }
    let mut next = vec![Complex64::new(0.0, 0.0); n];
    for s in 1..=steps {
        // curr holds step s
        field.values_mut().copy_from_slice(&curr);
        norms.update(field.norm());
        let t = s as f64 * dt;
        if let Some(j) = config.probe {
            probe.push(ProbeSample { t, re: curr[j].re, im: curr[j].im });
        }
        if recorder.due(s, steps) {
            recorder.record(t, &field)?;
        }
        if s == steps {
            break;
        }
        laplacian(&curr, &mut lap, inv_dz2);
        for j in 0..n {
            let acc = c * c * lap[j] - omega0 * omega0 * curr[j];
            next[j] = 2.0 * curr[j] - prev[j] + dt * dt * acc;
        }
        std::mem::swap(&mut prev, &mut curr);
        std::mem::swap(&mut curr, &mut next);
        let e = staggered_energy(&prev, &curr, dt, dz, c, omega0);
        max_energy_drift = max_energy_drift.max((e - e0).abs() / e0.abs());
    }

    Ok(RunReport {
        scheme: format!("{:?}", config.scheme),
        convention: config.scheme.convention().to_string(),
        grid,
        requested_dt: config.dt,
        effective_dt: dt,
        steps,
        t_final: steps as f64 * dt,
        samples: recorder.samples,
        conservation: norms.finish(Some((e0, max_energy_drift))),
        probe,
        snapshots: recorder.snapshots,
        final_field: field,
    })
}
