//! CODATA 2018 constants backing the model's symbols.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Muon rest mass (kg), CODATA 2018.
pub const MUON_MASS: f64 = 1.883_531_627e-28;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConstants {
    /// Speed of light (m/s).
    pub c: f64,
    /// Planck constant (J s).
    pub h: f64,
    /// Reduced Planck constant (J s).
    pub hbar: f64,
    /// Electron rest mass (kg).
    pub m0: f64,
    /// Coulomb coupling e^2 / (4 pi eps0) (J m).
    pub e2_coulomb: f64,
    /// Electron-volt (J).
    pub ev: f64,
}

impl PhysicalConstants {
    /// Rest energy m0 c^2 (J).
    pub fn rest_energy(&self) -> f64 {
        self.m0 * self.c * self.c
    }

    /// Cutoff (rest) frequency f0 = m0 c^2 / h (Hz).
    pub fn rest_frequency(&self) -> f64 {
        self.rest_energy() / self.h
    }

    /// Fine-structure constant e^2 / (hbar c).
    pub fn fine_structure(&self) -> f64 {
        self.e2_coulomb / (self.hbar * self.c)
    }
}

/// The fixed CODATA 2018 constant set.
pub fn electron_constants() -> PhysicalConstants {
    let h = 6.626_070_15e-34;
    let elementary_charge = 1.602_176_634e-19;
    let epsilon0 = 8.854_187_812_8e-12;
    PhysicalConstants {
        c: 299_792_458.0,
        h,
        hbar: h / (2.0 * PI),
        m0: 9.109_383_701_5e-31,
        e2_coulomb: elementary_charge * elementary_charge / (4.0 * PI * epsilon0),
        ev: elementary_charge,
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        electron_constants()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hbar_is_h_over_two_pi() {
        let k = electron_constants();
        assert!((k.hbar / k.h - 1.0 / (2.0 * PI)).abs() < 1e-16);
    }

    #[test]
    fn all_positive() {
        let k = electron_constants();
        for x in [k.c, k.h, k.hbar, k.m0, k.e2_coulomb, k.ev] {
            assert!(x > 0.0);
        }
    }

    #[test]
    fn rest_energy_in_ev() {
        let k = electron_constants();
        let mc2_ev = k.rest_energy() / k.ev;
        assert!((mc2_ev - 510_998.95).abs() < 0.01, "{mc2_ev}");
    }

    #[test]
    fn rest_frequency() {
        let k = electron_constants();
        let f0 = k.rest_frequency();
        assert!((f0 / 1.2356e20 - 1.0).abs() < 1e-4, "{f0}");
    }

    #[test]
    fn fine_structure_constant() {
        let alpha = electron_constants().fine_structure();
        assert!((1.0 / alpha - 137.035_999).abs() < 1e-3);
    }
}
