//! Strang split-step Fourier integrators.

use super::report::{NormTracker, Recorder, RunReport};
use super::{Scheme, SolverConfig};
use crate::error::Result;
use crate::grid::ComplexField;
use crate::spectral::Spectral;
use num_complex::Complex64;

/// `i psi_t + (1/2) psi_zz - V psi = 0`: half potential kick, exact kinetic
/// step `exp(-i k^2 dt / 2)`, half potential kick.
pub fn evolve_linear_schrodinger(psi0: &ComplexField, config: &SolverConfig) -> Result<RunReport> {
    let grid = *psi0.grid();
    config.check(&grid, Scheme::LinearSchrodinger)?;
    let (steps, dt) = config.step_plan();
    let mut spectral = Spectral::new(&grid);

    let half_kick: Vec<Complex64> = config
        .potential
        .iter()
        .map(|&v| Complex64::from_polar(1.0, -0.5 * v * dt))
        .collect();
    let kinetic: Vec<Complex64> = spectral
        .wavenumbers()
        .iter()
        .map(|&k| Complex64::from_polar(1.0, -0.5 * k * k * dt))
        .collect();

    run(psi0, config, steps, dt, |psi| {
        for (x, p) in psi.iter_mut().zip(&half_kick) {
            *x *= p;
        }
        spectral.forward(psi);
        for (x, p) in psi.iter_mut().zip(&kinetic) {
            *x *= p;
        }
        spectral.inverse(psi);
        for (x, p) in psi.iter_mut().zip(&half_kick) {
            *x *= p;
        }
    })
}

/// `i phi_t + phi_zz + 2|phi|^2 phi = 0`: half linear step `exp(-i k^2 dt / 2)`,
/// full nonlinear phase rotation `exp(2 i |phi|^2 dt)` (exact, |phi| is
/// invariant under it), half linear step.
pub fn evolve_nls(psi0: &ComplexField, config: &SolverConfig) -> Result<RunReport> {
    let grid = *psi0.grid();
    config.check(&grid, Scheme::Nls)?;
    let (steps, dt) = config.step_plan();
    let mut spectral = Spectral::new(&grid);

    let linear_half: Vec<Complex64> = spectral
        .wavenumbers()
        .iter()
        .map(|&k| Complex64::from_polar(1.0, -0.5 * k * k * dt))
        .collect();

    run(psi0, config, steps, dt, |psi| {
        spectral.forward(psi);
        for (x, p) in psi.iter_mut().zip(&linear_half) {
            *x *= p;
        }
        spectral.inverse(psi);
        for x in psi.iter_mut() {
            *x *= Complex64::from_polar(1.0, 2.0 * x.norm_sqr() * dt);
        }
        spectral.forward(psi);
        for (x, p) in psi.iter_mut().zip(&linear_half) {
            *x *= p;
        }
        spectral.inverse(psi);
    })
}

fn run<F>(psi0: &ComplexField, config: &SolverConfig, steps: usize, dt: f64, mut step: F) -> Result<RunReport>
where
    F: FnMut(&mut [Complex64]),
{
    let grid = *psi0.grid();
    let mut field = psi0.clone();
    let mut norms = NormTracker::new(field.norm());
    let mut recorder = Recorder::new(config.snapshot_every, config.keep_snapshots);
    let mut probe = Vec::new();
    let probe_at = |field: &ComplexField, t: f64, probe: &mut Vec<super::ProbeSample>| {
        if let Some(j) = config.probe {
            let v = field.values()[j];
            probe.push(super::ProbeSample { t, re: v.re, im: v.im });
        }
    };

    recorder.record(0.0, &field)?;
    probe_at(&field, 0.0, &mut probe);
    for s in 1..=steps {
        step(field.values_mut());
        norms.update(field.norm());
        let t = s as f64 * dt;
        probe_at(&field, t, &mut probe);
        if recorder.due(s, steps) {
            recorder.record(t, &field)?;
        }
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
        conservation: norms.finish(None),
        probe,
        snapshots: recorder.snapshots,
        final_field: field,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{build_packet, Grid1D, PacketSpec};
    use crate::solvers::breather_field;
    use std::f64::consts::PI;

    #[test]
    fn plane_wave_phase_is_exact() {
        let g = Grid1D::new(128, 0.0, 20.0 * PI).unwrap();
        let k0 = 0.3; // 0.3 * 20 pi = 3 * 2 pi: periodic
        let psi0 = build_packet(&PacketSpec::PlaneWave { amplitude: 1.0, k0 }, &g).unwrap();
        let cfg = SolverConfig::free(Scheme::LinearSchrodinger, &g, 1e-2, 2.0, 50).unwrap();
        let rep = evolve_linear_schrodinger(&psi0, &cfg).unwrap();
        let t = rep.t_final;
        let expect = psi0.scaled(Complex64::from_polar(1.0, -k0 * k0 * t / 2.0));
        assert!(rep.final_field.max_abs_difference(&expect) < 1e-10);
    }

    #[test]
    fn gaussian_width_doubles_at_root_three() {
        // free spreading: sigma(t)^2 = sigma^2 (1 + (t / sigma^2)^2)
        let g = Grid1D::centered(1024, 0.05).unwrap();
        let psi0 = build_packet(&PacketSpec::gaussian(1.0, 0.0, 0.0), &g).unwrap();
        let cfg = SolverConfig::free(Scheme::LinearSchrodinger, &g, 3f64.sqrt() / 400.0, 3f64.sqrt(), 400).unwrap();
        let rep = evolve_linear_schrodinger(&psi0, &cfg).unwrap();
        let ratio = rep.width_ratio();
        assert!((ratio - 2.0).abs() < 1e-8, "{ratio}");
    }

    #[test]
    fn sech_disperses_without_nonlinearity() {
        let g = Grid1D::centered(2048, 0.1).unwrap();
        let psi0 = build_packet(&PacketSpec::breather(1.0, 0.0, 0.0), &g).unwrap();
        let cfg = SolverConfig::free(Scheme::LinearSchrodinger, &g, 1e-2, 5.0, 10).unwrap();
        let rep = evolve_linear_schrodinger(&psi0, &cfg).unwrap();
        for w in rep.samples.windows(2) {
            assert!(w[1].rms_width > w[0].rms_width);
        }
        assert!(rep.width_ratio() > 2.0);
    }

    #[test]
    fn unitary_to_roundoff() {
        let g = Grid1D::centered(512, 0.08).unwrap();
        let psi0 = build_packet(&PacketSpec::gaussian(1.0, 1.0, -3.0), &g).unwrap();
        let v: Vec<f64> = g.points().map(|z| 0.5 * (-z * z).exp()).collect();
        let cfg = SolverConfig::new(Scheme::LinearSchrodinger, 1e-3, 1.0, 100, v).unwrap();
        let rep = evolve_linear_schrodinger(&psi0, &cfg).unwrap();
        assert!(rep.conservation.max_step_norm_drift <= 1e-12);
        assert!(rep.conservation.max_norm_drift <= 1e-9);
    }

    #[test]
    fn stationary_breather() {
        let g = Grid1D::centered(512, 0.08).unwrap();
        let psi0 = build_packet(&PacketSpec::breather(1.0, 0.0, 0.0), &g).unwrap();
        let cfg = SolverConfig::free(Scheme::Nls, &g, 1e-3, 1.0, 100).unwrap();
        let rep = evolve_nls(&psi0, &cfg).unwrap();
        let exact = breather_field(&g, rep.t_final, 1.0, 0.0, 0.0);
        let err = rep.final_field.l2_distance(&exact);
        assert!(err <= 1e-6, "{err}");
        assert!(rep.conservation.max_step_norm_drift <= 1e-12);
    }

    #[test]
    fn overdriven_sech_is_not_a_soliton() {
        let g = Grid1D::centered(1024, 0.05).unwrap();
        let psi0 = build_packet(&PacketSpec::breather(1.0, 0.0, 0.0), &g)
            .unwrap()
            .scaled(Complex64::new(2.0, 0.0));
        let cfg = SolverConfig::free(Scheme::Nls, &g, 1e-3, 2.0, 100).unwrap();
        let rep = evolve_nls(&psi0, &cfg).unwrap();
        let ratio = rep.width_ratio();
        assert!(!(0.99..=1.01).contains(&ratio), "{ratio}");
    }

    #[test]
    fn scheme_mismatch_rejected() {
        let g = Grid1D::centered(64, 0.5).unwrap();
        let psi0 = build_packet(&PacketSpec::gaussian(1.0, 0.0, 0.0), &g).unwrap();
        let cfg = SolverConfig::free(Scheme::Nls, &g, 1e-3, 1.0, 1).unwrap();
        assert!(evolve_linear_schrodinger(&psi0, &cfg).is_err());
    }
}
