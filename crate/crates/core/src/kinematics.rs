//! Closed-form waveguide kinematics of the zigzagging electron.
//!
//! The electron is pictured as a particle bouncing at speed `c` between the
//! side walls of a guide of width `w`. The zigzag angle `phi` fixes every
//! other quantity: axial velocity `v = c sin(phi)`, clock and wave
//! frequencies, phase velocity and the two wavelength readings.
//!
//! `gamma_model` is `sqrt(1 - beta^2)`, the reciprocal of the usual Lorentz
//! factor.

use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Phase velocity, which diverges for a particle at rest.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PhaseVelocity {
    Finite(f64),
    Unbounded,
}

impl PhaseVelocity {
    pub fn finite(self) -> Option<f64> {
        match self {
            PhaseVelocity::Finite(v) => Some(v),
            PhaseVelocity::Unbounded => None,
        }
    }

    pub fn is_unbounded(self) -> bool {
        matches!(self, PhaseVelocity::Unbounded)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KinematicState {
    /// Axial velocity (m/s).
    pub v: f64,
    pub beta: f64,
    /// sqrt(1 - beta^2).
    pub gamma_model: f64,
    /// Zigzag angle (rad).
    pub phi: f64,
    /// Cutoff / rest frequency m0 c^2 / h (Hz).
    pub f0: f64,
    pub f_clock: f64,
    pub f_wave: f64,
    pub f_zigzag: f64,
    pub v_phase: PhaseVelocity,
    /// Guide width h / (2 m0 c) (m).
    pub w: f64,
    /// Wavelength read as 2 w cos(phi) (m).
    pub lambda_guide: f64,
    /// Wavelength read as V_phase / f_wave (m); unbounded at rest.
    pub lambda_phase: PhaseVelocity,
    pub t_zigzag: f64,
    pub l_zigzag: f64,
}

/// Guide width `w = h / (2 m c)`.
pub fn guide_width(mass: f64, constants: &PhysicalConstants) -> Result<f64> {
    if !(mass > 0.0) || !mass.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "mass must be positive and finite, got {mass}"
        )));
    }
    Ok(constants.h / (2.0 * mass * constants.c))
}

pub fn kinematic_state(v: f64, mass: f64, constants: &PhysicalConstants) -> Result<KinematicState> {
    let c = constants.c;
    if !v.is_finite() || v < 0.0 || v >= c {
        return Err(Error::Domain(format!(
            "velocity must satisfy 0 <= v < c, got v = {v} m/s"
        )));
    }
    let w = guide_width(mass, constants)?;
    let f0 = mass * c * c / constants.h;
    let beta = v / c;
    let gamma_model = (1.0 - beta * beta).sqrt();
    let phi = beta.asin();
    let (sin_phi, cos_phi) = (beta, gamma_model);

    let f_clock = f0 * gamma_model;
    let f_wave = f0 / gamma_model;
    let v_phase = if v > 0.0 {
        PhaseVelocity::Finite(c / sin_phi)
    } else {
        PhaseVelocity::Unbounded
    };
    let lambda_phase = match v_phase {
        PhaseVelocity::Finite(vp) => PhaseVelocity::Finite(vp / f_wave),
        PhaseVelocity::Unbounded => PhaseVelocity::Unbounded,
    };

    Ok(KinematicState {
        v,
        beta,
        gamma_model,
        phi,
        f0,
        f_clock,
        f_wave,
        f_zigzag: f_clock,
        v_phase,
        w,
        lambda_guide: 2.0 * w * cos_phi,
        lambda_phase,
        t_zigzag: cos_phi / f0,
        l_zigzag: 2.0 * w * phi.tan(),
    })
}

impl KinematicState {
    /// Axial velocity recovered from the zigzag angle.
    pub fn velocity_from_angle(&self, c: f64) -> f64 {
        c * self.phi.sin()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::{electron_constants, MUON_MASS};
    use proptest::prelude::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn electron_width() {
        let k = electron_constants();
        let w = guide_width(k.m0, &k).unwrap();
        // h / (2 m0 c) evaluated from CODATA: half the Compton wavelength
        assert!(rel(w, 1.213_155e-12) < 1e-6, "{w}");
    }

    #[test]
    fn width_halves_with_double_mass() {
        let k = electron_constants();
        let w1 = guide_width(k.m0, &k).unwrap();
        let w2 = guide_width(2.0 * k.m0, &k).unwrap();
        assert!(rel(w2, w1 / 2.0) < 1e-15);
    }

    #[test]
    fn muon_width() {
        let k = electron_constants();
        let w = guide_width(MUON_MASS, &k).unwrap();
        assert!(rel(w, 5.867e-15) < 1e-3, "{w}");
    }

    #[test]
    fn non_positive_mass_rejected() {
        let k = electron_constants();
        assert!(matches!(guide_width(0.0, &k), Err(Error::InvalidArgument(_))));
        assert!(matches!(guide_width(-1.0, &k), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn rest_case() {
        let k = electron_constants();
        let s = kinematic_state(0.0, k.m0, &k).unwrap();
        assert_eq!(s.phi, 0.0);
        assert_eq!(s.f_clock, s.f0);
        assert_eq!(s.f_wave, s.f0);
        assert_eq!(s.lambda_guide, 2.0 * s.w);
        assert_eq!(s.l_zigzag, 0.0);
        assert!(s.v_phase.is_unbounded());
        assert!(s.lambda_phase.is_unbounded());
    }

    #[test]
    fn three_five_velocity() {
        let k = electron_constants();
        let s = kinematic_state(0.6 * k.c, k.m0, &k).unwrap();
        assert!(rel(s.gamma_model, 0.8) < 1e-14);
        assert!(rel(s.f_clock, 0.8 * s.f0) < 1e-14);
        assert!(rel(s.f_wave, 1.25 * s.f0) < 1e-14);
        assert!(rel(s.v_phase.finite().unwrap(), 5.0 / 3.0 * k.c) < 1e-14);
        assert!(rel(s.lambda_guide, 1.6 * s.w) < 1e-14);
        assert!(rel(s.l_zigzag, 1.5 * s.w) < 1e-14);
        assert!(rel(s.v * s.v_phase.finite().unwrap(), k.c * k.c) < 1e-14);
        // the two wavelength readings disagree
        let lp = s.lambda_phase.finite().unwrap();
        assert!(rel(lp, 2.0 * s.w * 0.8 / 0.6) < 1e-14);
        assert!(rel(lp, s.lambda_guide) > 0.1);
    }

    #[test]
    fn clock_wave_product() {
        let k = electron_constants();
        let s = kinematic_state(0.8 * k.c, k.m0, &k).unwrap();
        assert!(rel(s.f_clock * s.f_wave, s.f0 * s.f0) < 1e-12);
    }

    #[test]
    fn superluminal_rejected() {
        let k = electron_constants();
        assert!(matches!(kinematic_state(k.c, k.m0, &k), Err(Error::Domain(_))));
        assert!(matches!(kinematic_state(-1.0, k.m0, &k), Err(Error::Domain(_))));
        assert!(matches!(kinematic_state(f64::NAN, k.m0, &k), Err(Error::Domain(_))));
    }

    proptest! {
        #[test]
        fn phase_group_product(beta in 1e-6f64..0.999_999) {
            let k = electron_constants();
            let s = kinematic_state(beta * k.c, k.m0, &k).unwrap();
            let vp = s.v_phase.finite().unwrap();
            prop_assert!(rel(s.v * vp, k.c * k.c) <= 1e-12);
        }

        #[test]
        fn frequency_ordering(beta in 1e-6f64..0.999_999) {
            let k = electron_constants();
            let s = kinematic_state(beta * k.c, k.m0, &k).unwrap();
            prop_assert!(s.f_clock < s.f0 && s.f0 < s.f_wave);
        }

        #[test]
        fn angle_round_trip(beta in 1e-6f64..0.999_999) {
            let k = electron_constants();
            let s = kinematic_state(beta * k.c, k.m0, &k).unwrap();
            prop_assert!(rel(s.velocity_from_angle(k.c), s.v) <= 1e-12);
        }

        #[test]
        fn width_scales_inverse_mass(scale in 0.01f64..100.0) {
            let k = electron_constants();
            let w = guide_width(k.m0, &k).unwrap();
            let ws = guide_width(scale * k.m0, &k).unwrap();
            prop_assert!(rel(ws * scale, w) <= 1e-15);
        }
    }
}
