//! Bohr orbits and the clock/wave phase accordance along them.

use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};
use crate::kinematics::kinematic_state;
use serde::Serialize;
use std::f64::consts::PI;

/// Above this fraction of c the nonrelativistic orbit is flagged.
pub const RELATIVISTIC_WARNING_BETA: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BohrOrbit {
    pub n: u32,
    pub radius: f64,
    pub velocity: f64,
    /// Orbital period T.
    pub period: f64,
    /// Angular momentum M = m v r.
    pub angular_momentum: f64,
    /// `-m v^2 / 2` (J).
    pub energy: f64,
    /// `tau = v^2 / (c^2 - v^2) T`.
    pub extra_arc_time: f64,
    pub orbit_length: f64,
    pub de_broglie_wavelength: f64,
    pub relativistic_warning: bool,
}

fn check_n(n: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("principal quantum number must be >= 1".into()));
    }
    Ok(())
}

/// Solves `m v^2 r = e^2` with `m v r = N hbar`.
pub fn bohr_orbit(n: u32, constants: &PhysicalConstants) -> Result<BohrOrbit> {
    check_n(n)?;
    let m = constants.m0;
    let c = constants.c;
    let nh = n as f64 * constants.hbar;
    let velocity = constants.e2_coulomb / nh;
    let radius = nh / (m * velocity);
    let period = 2.0 * PI * radius / velocity;
    Ok(BohrOrbit {
        n,
        radius,
        velocity,
        period,
        angular_momentum: m * velocity * radius,
        energy: -0.5 * m * velocity * velocity,
        extra_arc_time: velocity * velocity / (c * c - velocity * velocity) * period,
        orbit_length: 2.0 * PI * radius,
        de_broglie_wavelength: constants.h / (m * velocity),
        relativistic_warning: velocity > RELATIVISTIC_WARNING_BETA * c,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhaseAccordance {
    pub n: u32,
    /// Extra arc time from the orbit's velocity and period (s).
    pub tau: f64,
    /// The same on the relativistic orbit, period `gamma T`.
    pub tau_relativistic: f64,
    /// `f_clock tau - N` on the relativistic circular orbit.
    pub quantization_residual: f64,
    /// `f_clock tau - N` with the nonrelativistic orbit inputs, `N (1/gamma - 1)`.
    pub nonrelativistic_gap: f64,
    /// Max relative error of `phi_wave = phi_clock` along the path.
    pub phase_identity_error: f64,
}

/// `f_clock tau` for an orbit of speed `v` and period `period`.
fn clock_cycles(v: f64, period: f64, constants: &PhysicalConstants) -> f64 {
    let c = constants.c;
    let gamma = (1.0 - (v / c).powi(2)).sqrt();
    let tau = v * v / (c * c - v * v) * period;
    constants.rest_frequency() * gamma * tau
}

/// Quantization check. The relativistic orbit keeps `v = e^2 / (N hbar)` but
/// obeys `m v r / gamma = N hbar`, for which `f_clock tau = N` exactly; the
/// nonrelativistic orbit misses by `N (1/gamma - 1) ~ alpha^2 / (2N)`.
pub fn bohr_phase_accordance(n: u32, constants: &PhysicalConstants) -> Result<PhaseAccordance> {
    let orbit = bohr_orbit(n, constants)?;
    let v = orbit.velocity;
    let gamma = (1.0 - (v / constants.c).powi(2)).sqrt();
    let rel_period = orbit.period * gamma;
    let c = constants.c;
    Ok(PhaseAccordance {
        n,
        tau: orbit.extra_arc_time,
        tau_relativistic: v * v / (c * c - v * v) * rel_period,
        quantization_residual: clock_cycles(v, rel_period, constants) - n as f64,
        nonrelativistic_gap: clock_cycles(v, orbit.period, constants) - n as f64,
        phase_identity_error: phase_accordance_error(v, orbit.orbit_length, 100, constants)?,
    })
}

/// Largest relative mismatch between the wave phase `f_wave (t - z / V_phase)`
/// and the clock phase `f_clock z / v`, at `t = z / v`, over `samples` points
/// in `(0, path]`.
pub fn phase_accordance_error(v: f64, path: f64, samples: usize, constants: &PhysicalConstants) -> Result<f64> {
    let s = kinematic_state(v, constants.m0, constants)?;
    let v_phase = s
        .v_phase
        .finite()
        .ok_or_else(|| Error::Domain("phase accordance needs v > 0".into()))?;
    let mut worst: f64 = 0.0;
    for i in 1..=samples {
        let z = path * i as f64 / samples as f64;
        let t = z / v;
        let wave = s.f_wave * (t - z / v_phase);
        let clock = s.f_clock * z / v;
        worst = worst.max(((wave - clock) / clock).abs());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::electron_constants;

    #[test]
    fn ground_state_oracle() {
        let k = electron_constants();
        let o = bohr_orbit(1, &k).unwrap();
        assert!((o.radius / 5.291_772_109e-11 - 1.0).abs() < 1e-6);
        assert!((o.energy / k.ev / -13.605_693 - 1.0).abs() < 1e-6);
        assert!((o.velocity / (k.fine_structure() * k.c) - 1.0).abs() < 1e-12);
        assert!(!o.relativistic_warning);
    }

    #[test]
    fn scaling_with_n() {
        let k = electron_constants();
        let a = bohr_orbit(1, &k).unwrap();
        let b = bohr_orbit(2, &k).unwrap();
        assert!((b.radius / a.radius - 4.0).abs() < 1e-12);
        assert!((b.energy / a.energy - 0.25).abs() < 1e-12);
    }

    #[test]
    fn bohr_rule_and_standing_wave() {
        let k = electron_constants();
        for n in 1..=20 {
            let o = bohr_orbit(n, &k).unwrap();
            assert!((o.angular_momentum / (n as f64 * k.hbar) - 1.0).abs() < 1e-12);
            assert!((o.orbit_length / o.de_broglie_wavelength / n as f64 - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn tau_ratio_for_ground_state() {
        let k = electron_constants();
        let o = bohr_orbit(1, &k).unwrap();
        let a = k.fine_structure();
        let ratio = o.extra_arc_time / o.period;
        assert!((ratio / (a * a / (1.0 - a * a)) - 1.0).abs() < 1e-12);
        assert!((ratio / 5.33e-5 - 1.0).abs() < 1e-3);
    }

    #[test]
    fn quantization_residuals() {
        let k = electron_constants();
        let a = k.fine_structure();
        for n in 1..=20 {
            let p = bohr_phase_accordance(n, &k).unwrap();
            assert!(p.quantization_residual.abs() <= 1e-9, "{n}: {}", p.quantization_residual);
            let expect = a * a / (2.0 * n as f64);
            assert!((p.nonrelativistic_gap / expect - 1.0).abs() < 1e-3, "{n}");
            assert!(p.phase_identity_error <= 1e-12);
        }
    }

    #[test]
    fn phase_identity_at_point_six_c() {
        let k = electron_constants();
        assert!(phase_accordance_error(0.6 * k.c, 1e-9, 100, &k).unwrap() <= 1e-12);
    }

    #[test]
    fn zero_n_rejected() {
        assert!(bohr_orbit(0, &electron_constants()).is_err());
    }
}
