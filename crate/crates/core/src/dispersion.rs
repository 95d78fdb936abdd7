//! Dispersion relations of the relativistic and parabolic wave equations.
//!
//! All wavenumbers are angular (rad per length) and all returned frequencies
//! are angular. `omega0 = 2 pi f0` is the cutoff.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BranchKind {
    KleinGordon,
    SchrodingerApprox,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DispersionBranch {
    pub kind: BranchKind,
    /// Angular cutoff frequency.
    pub omega0: f64,
    /// Wave speed.
    pub c: f64,
    /// Potential energy; always zero on the relativistic branch.
    pub potential: f64,
    pub hbar: f64,
}

impl DispersionBranch {
    pub fn klein_gordon(omega0: f64, c: f64) -> Result<Self> {
        Self::checked(BranchKind::KleinGordon, omega0, c, 0.0, 1.0)
    }

    pub fn schrodinger(omega0: f64, c: f64, potential: f64, hbar: f64) -> Result<Self> {
        Self::checked(BranchKind::SchrodingerApprox, omega0, c, potential, hbar)
    }

    /// Normalized units: omega0 = c = hbar = 1.
    pub fn normalized(kind: BranchKind) -> Self {
        DispersionBranch {
            kind,
            omega0: 1.0,
            c: 1.0,
            potential: 0.0,
            hbar: 1.0,
        }
    }

    fn checked(kind: BranchKind, omega0: f64, c: f64, potential: f64, hbar: f64) -> Result<Self> {
        if !(omega0 > 0.0 && c > 0.0 && hbar > 0.0) || !potential.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "branch needs omega0, c, hbar > 0 and finite V (omega0={omega0}, c={c}, hbar={hbar}, V={potential})"
            )));
        }
        Ok(DispersionBranch {
            kind,
            omega0,
            c,
            potential,
            hbar,
        })
    }

    pub fn omega(&self, k: f64) -> f64 {
        let ck = self.c * k;
        match self.kind {
            BranchKind::KleinGordon => (self.omega0 * self.omega0 + ck * ck).sqrt(),
            BranchKind::SchrodingerApprox => {
                self.omega0 + self.potential / self.hbar + ck * ck / (2.0 * self.omega0)
            }
        }
    }

    /// Analytic d(omega)/dk.
    pub fn group_velocity(&self, k: f64) -> f64 {
        match self.kind {
            BranchKind::KleinGordon => self.c * self.c * k / self.omega(k),
            BranchKind::SchrodingerApprox => self.c * self.c * k / self.omega0,
        }
    }
}

/// Spatial decay rate of a below-cutoff wave, `2 pi sqrt(f0_eff^2 - f^2) / c`.
///
/// Frequencies are ordinary (Hz or normalized cycles), not angular.
pub fn evanescent_kappa(f: f64, f0_eff: f64, c: f64) -> Result<f64> {
    if !(f >= 0.0) || !(f0_eff > 0.0) || !(c > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "need f >= 0, f0_eff > 0, c > 0 (f={f}, f0_eff={f0_eff}, c={c})"
        )));
    }
    if f >= f0_eff {
        return Err(Error::Domain(format!(
            "f = {f} is at or above the cutoff {f0_eff}; the wave propagates"
        )));
    }
    Ok(2.0 * PI * ((f0_eff - f) * (f0_eff + f)).sqrt() / c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn kg() -> DispersionBranch {
        DispersionBranch::normalized(BranchKind::KleinGordon)
    }

    fn schr() -> DispersionBranch {
        DispersionBranch::normalized(BranchKind::SchrodingerApprox)
    }

    #[test]
    fn cutoff() {
        assert_eq!(kg().omega(0.0), 1.0);
        assert_eq!(schr().omega(0.0), 1.0);
    }

    #[test]
    fn three_four_five() {
        assert!((kg().omega(0.75) - 1.25).abs() < 1e-15);
        assert!((kg().group_velocity(0.75) - 0.6).abs() < 1e-15);
    }

    #[test]
    fn parabolic_approximation_gap() {
        let w_s = schr().omega(0.1);
        assert!((w_s - 1.005).abs() < 1e-15);
        let w_kg = kg().omega(0.1);
        // sqrt(1 + x^2) = 1 + x^2/2 - x^4/8 + x^6/16 - ...
        let gap = w_s - w_kg;
        assert!(gap > 0.0);
        let x: f64 = 0.1;
        assert!((gap - (x.powi(4) / 8.0 - x.powi(6) / 16.0)).abs() < 1e-9);
    }

    #[test]
    fn potential_shift() {
        let b = DispersionBranch::schrodinger(2.0, 1.0, 0.5, 0.25).unwrap();
        assert!((b.omega(0.0) - 4.0).abs() < 1e-15);
    }

    #[test]
    fn group_velocity_values() {
        assert_eq!(kg().group_velocity(0.0), 0.0);
        assert_eq!(schr().group_velocity(0.0), 0.0);
        assert!((schr().group_velocity(0.6) - 0.6).abs() < 1e-15);
        // parabolic branch goes superluminal, relativistic never does
        assert!(schr().group_velocity(1.5) > 1.0);
        assert!(kg().group_velocity(1e6) < 1.0);
    }

    #[test]
    fn evanescent_values() {
        let k = evanescent_kappa(0.8, 1.0, 1.0).unwrap();
        assert!((k - 2.0 * PI * 0.6).abs() < 1e-14);
        assert!((evanescent_kappa(0.0, 1.0, 1.0).unwrap() - 2.0 * PI).abs() < 1e-14);
        let near = evanescent_kappa(1.0 - 1e-12, 1.0, 1.0).unwrap();
        assert!(near < 1e-4);
        assert!(matches!(evanescent_kappa(1.0, 1.0, 1.0), Err(Error::Domain(_))));
        assert!(matches!(evanescent_kappa(1.2, 1.0, 1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn invalid_branch() {
        assert!(DispersionBranch::klein_gordon(0.0, 1.0).is_err());
        assert!(DispersionBranch::schrodinger(1.0, -1.0, 0.0, 1.0).is_err());
    }

    proptest! {
        #[test]
        fn quartic_gap_bound(x in 0.0f64..=0.2) {
            let gap = (kg().omega(x) - schr().omega(x)).abs();
            prop_assert!(gap <= x.powi(4) + 1e-16);
        }

        #[test]
        fn group_velocity_matches_finite_difference(x in 0.01f64..5.0, which in 0usize..2) {
            let b = if which == 0 { kg() } else { schr() };
            let h = 1e-6;
            let fd = (b.omega(x + h) - b.omega(x - h)) / (2.0 * h);
            let vg = b.group_velocity(x);
            prop_assert!(((fd - vg) / vg).abs() <= 1e-6);
        }

        #[test]
        fn relativistic_subluminal(x in -1e3f64..1e3) {
            prop_assert!(kg().group_velocity(x).abs() < 1.0);
        }
    }
}
