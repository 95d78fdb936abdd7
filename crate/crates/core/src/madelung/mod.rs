//! Polar (Madelung) form `psi = R exp(i S / hbar)`, the quantum potential
//! `Q = -(hbar^2 / 2m) R'' / R`, residuals of the Hamilton–Jacobi and
//! continuity equations, and the evolution in which `Q` is cancelled.
//!
//! `S` is stored in action units (not divided by hbar). Derivatives of `S`
//! use a fourth-order non-periodic stencil because `S` itself is generally
//! not periodic even when `psi` is; everything built from `R` uses spectral
//! derivatives.

mod ekholdt;

pub use ekholdt::{evolve_ekholdt, EkholdtConfig, EKHOLDT_CFL, EKHOLDT_CONVENTION};

use crate::analysis::wrap_angle;
use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};
use crate::grid::{ComplexField, Grid1D};
use crate::kinematics::guide_width;
use crate::spectral::{gradient4, Spectral};
use num_complex::Complex64;
use serde::Serialize;

pub const DEFAULT_NODE_THRESHOLD: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct MadelungField {
    grid: Grid1D,
    amplitude: Vec<f64>,
    action: Vec<f64>,
    support: Vec<bool>,
    hbar: f64,
}

/// Real profile that is only meaningful where `mask` is set.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MaskedField {
    pub values: Vec<f64>,
    pub mask: Vec<bool>,
}

impl MaskedField {
    pub fn max_abs(&self) -> f64 {
        self.supported().map(|(_, v)| v.abs()).fold(0.0, f64::max)
    }

    /// `(index, value)` pairs on the mask.
    pub fn supported(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.values
            .iter()
            .zip(&self.mask)
            .enumerate()
            .filter(|(_, (_, &m))| m)
            .map(|(j, (&v, _))| (j, v))
    }
}

impl MadelungField {
    /// Builds a field from amplitude and action samples, checking for nodes.
    pub fn from_parts(
        grid: Grid1D,
        amplitude: Vec<f64>,
        action: Vec<f64>,
        hbar: f64,
        node_threshold: f64,
    ) -> Result<Self> {
        if amplitude.len() != grid.n() || action.len() != grid.n() {
            return Err(Error::Config(format!(
                "R and S need {} samples, got {} and {}",
                grid.n(),
                amplitude.len(),
                action.len()
            )));
        }
        if amplitude.iter().any(|&r| !(r >= 0.0) || !r.is_finite()) {
            return Err(Error::InvalidArgument("R must be finite and non-negative".into()));
        }
        if action.iter().any(|s| !s.is_finite()) {
            return Err(Error::InvalidArgument("S must be finite".into()));
        }
        let support = node_free_support(&grid, &amplitude, node_threshold)?;
        Ok(MadelungField {
            grid,
            amplitude,
            action,
            support,
            hbar,
        })
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    /// R.
    pub fn amplitude(&self) -> &[f64] {
        &self.amplitude
    }

    /// S, in action units.
    pub fn action(&self) -> &[f64] {
        &self.action
    }

    pub fn support(&self) -> &[bool] {
        &self.support
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn recompose(&self) -> ComplexField {
        let values = self
            .amplitude
            .iter()
            .zip(&self.action)
            .map(|(&r, &s)| Complex64::from_polar(r, s / self.hbar))
            .collect();
        ComplexField::new(self.grid, values).expect("finite R and S give a finite field")
    }

    /// dS/dz.
    pub fn action_gradient(&self) -> Vec<f64> {
        gradient4(&self.action, self.grid.dz())
    }
}

/// Support mask `R > threshold * max R`, rejecting fields whose support
/// splits into more than one (cyclic) interval.
fn node_free_support(grid: &Grid1D, amplitude: &[f64], threshold: f64) -> Result<Vec<bool>> {
    let peak = amplitude.iter().cloned().fold(0.0, f64::max);
    if !(peak > 0.0) {
        return Err(Error::DegenerateField("R vanishes everywhere".into()));
    }
    let cut = threshold * peak;
    let support: Vec<bool> = amplitude.iter().map(|&r| r > cut).collect();
    let n = support.len();
    // starts of cyclic runs of `true`
    let starts: Vec<usize> = (0..n)
        .filter(|&j| support[j] && !support[(j + n - 1) % n])
        .collect();
    if starts.len() <= 1 {
        return Ok(support);
    }
    let mut locations = Vec::new();
    for &start in &starts {
        // walk back through the gap preceding this run and record its deepest
        // point; the gap through the periodic seam is the packet's outside,
        // not a node
        let mut j = (start + n - 1) % n;
        let mut best = j;
        let mut through_seam = false;
        while !support[j] {
            if amplitude[j] < amplitude[best] {
                best = j;
            }
            through_seam |= j == 0;
            j = (j + n - 1) % n;
        }
        if !through_seam {
            locations.push(grid.z(best));
        }
    }
    locations.sort_by(f64::total_cmp);
    Err(Error::Node { locations })
}

/// Polar decomposition in normalized units (hbar = 1). The phase is unwrapped
/// outward from the amplitude peak.
pub fn decompose(psi: &ComplexField, node_threshold: f64) -> Result<MadelungField> {
    decompose_with_hbar(psi, node_threshold, 1.0)
}

pub fn decompose_with_hbar(psi: &ComplexField, node_threshold: f64, hbar: f64) -> Result<MadelungField> {
    let values = psi.values();
    let n = values.len();
    let amplitude: Vec<f64> = values.iter().map(|v| v.norm()).collect();
    let support = node_free_support(psi.grid(), &amplitude, node_threshold)?;

    let arg: Vec<f64> = values.iter().map(|v| v.arg()).collect();
    let peak = (0..n)
        .max_by(|&a, &b| amplitude[a].total_cmp(&amplitude[b]))
        .unwrap_or(0);
    let mut phase = vec![0.0; n];
    phase[peak] = arg[peak];
    for j in peak + 1..n {
        phase[j] = phase[j - 1] + wrap_angle(arg[j] - arg[j - 1]);
    }
    for j in (0..peak).rev() {
        phase[j] = phase[j + 1] + wrap_angle(arg[j] - arg[j + 1]);
    }
    Ok(MadelungField {
        grid: *psi.grid(),
        amplitude,
        action: phase.into_iter().map(|p| hbar * p).collect(),
        support,
        hbar,
    })
}

pub fn quantum_potential(field: &MadelungField, mass: f64) -> MaskedField {
    let mut spectral = Spectral::new(&field.grid);
    quantum_potential_with(&mut spectral, field, mass)
}

fn quantum_potential_with(spectral: &mut Spectral, field: &MadelungField, mass: f64) -> MaskedField {
    let r_zz = spectral.second_derivative_real(&field.amplitude);
    let pref = -field.hbar * field.hbar / (2.0 * mass);
    let values = field
        .amplitude
        .iter()
        .zip(&r_zz)
        .zip(&field.support)
        .map(|((&r, &d2), &on)| if on { pref * d2 / r } else { 0.0 })
        .collect();
    MaskedField {
        values,
        mask: field.support.clone(),
    }
}

/// Two snapshots `dt` apart; residuals are evaluated at their midpoint.
#[derive(Debug, Clone, Copy)]
pub struct FieldPair<'a> {
    pub earlier: &'a MadelungField,
    pub later: &'a MadelungField,
    pub dt: f64,
}

impl FieldPair<'_> {
    fn check(&self) -> Result<()> {
        if self.earlier.grid != self.later.grid {
            return Err(Error::Config("snapshot pair lives on different grids".into()));
        }
        if self.earlier.hbar != self.later.hbar {
            return Err(Error::Config("snapshot pair uses different hbar".into()));
        }
        if !(self.dt > 0.0) {
            return Err(Error::Config(format!("pair spacing must be > 0, got {}", self.dt)));
        }
        Ok(())
    }

    fn mask(&self) -> Vec<bool> {
        self.earlier
            .support
            .iter()
            .zip(&self.later.support)
            .map(|(&a, &b)| a && b)
            .collect()
    }

    /// dS/dt by centred difference; 2 pi hbar offsets between independently
    /// unwrapped snapshots cancel.
    fn action_rate(&self) -> Vec<f64> {
        let hbar = self.earlier.hbar;
        self.earlier
            .action
            .iter()
            .zip(&self.later.action)
            .map(|(&s1, &s2)| hbar * wrap_angle((s2 - s1) / hbar) / self.dt)
            .collect()
    }
}

fn check_potential(grid: &Grid1D, potential: &[f64]) -> Result<()> {
    if potential.len() != grid.n() {
        return Err(Error::Config(format!(
            "potential has {} samples but the grid has {}",
            potential.len(),
            grid.n()
        )));
    }
    Ok(())
}

/// `S_z^2 / 2m + V` and `Q` for one field.
fn hamilton_jacobi_terms(
    spectral: &mut Spectral,
    field: &MadelungField,
    potential: &[f64],
    mass: f64,
) -> (Vec<f64>, MaskedField) {
    let classical = field
        .action_gradient()
        .iter()
        .zip(potential)
        .map(|(&sz, &v)| sz * sz / (2.0 * mass) + v)
        .collect();
    (classical, quantum_potential_with(spectral, field, mass))
}

/// Pointwise `S_t + S_z^2/2m + V + Q` (`include_q`) or without the `Q` term.
pub fn hj_residual(pair: FieldPair<'_>, potential: &[f64], mass: f64, include_q: bool) -> Result<MaskedField> {
    pair.check()?;
    check_potential(&pair.earlier.grid, potential)?;
    let mut spectral = Spectral::new(&pair.earlier.grid);
    let (c1, q1) = hamilton_jacobi_terms(&mut spectral, pair.earlier, potential, mass);
    let (c2, q2) = hamilton_jacobi_terms(&mut spectral, pair.later, potential, mass);
    let rate = pair.action_rate();
    let mask = pair.mask();
    let values = (0..rate.len())
        .map(|j| {
            if !mask[j] {
                return 0.0;
            }
            let mut r = rate[j] + 0.5 * (c1[j] + c2[j]);
            if include_q {
                r += 0.5 * (q1.values[j] + q2.values[j]);
            }
            r
        })
        .collect();
    Ok(MaskedField { values, mask })
}

/// As [`hj_residual`] with an analytic `dS/dt` for a single field.
pub fn hj_residual_with_rate(
    field: &MadelungField,
    action_rate: &[f64],
    potential: &[f64],
    mass: f64,
    include_q: bool,
) -> Result<MaskedField> {
    check_potential(&field.grid, potential)?;
    if action_rate.len() != field.grid.n() {
        return Err(Error::Config("dS/dt has the wrong length".into()));
    }
    let mut spectral = Spectral::new(&field.grid);
    let (classical, q) = hamilton_jacobi_terms(&mut spectral, field, potential, mass);
    let values = (0..classical.len())
        .map(|j| {
            if !field.support[j] {
                return 0.0;
            }
            let r = action_rate[j] + classical[j];
            if include_q {
                r + q.values[j]
            } else {
                r
            }
        })
        .collect();
    Ok(MaskedField {
        values,
        mask: field.support.clone(),
    })
}

/// d/dz (R^2 S_z / m).
fn flux_divergence(spectral: &mut Spectral, field: &MadelungField, mass: f64) -> Vec<f64> {
    let flux: Vec<f64> = field
        .amplitude
        .iter()
        .zip(field.action_gradient())
        .map(|(&r, sz)| r * r * sz / mass)
        .collect();
    spectral.derivative_real(&flux)
}

/// Pointwise `d(R^2)/dt + d/dz(R^2 S_z / m)` at the pair midpoint.
pub fn continuity_residual(pair: FieldPair<'_>, mass: f64) -> Result<MaskedField> {
    pair.check()?;
    let mut spectral = Spectral::new(&pair.earlier.grid);
    let d1 = flux_divergence(&mut spectral, pair.earlier, mass);
    let d2 = flux_divergence(&mut spectral, pair.later, mass);
    let mask = pair.mask();
    let values = (0..d1.len())
        .map(|j| {
            if !mask[j] {
                return 0.0;
            }
            let r1 = pair.earlier.amplitude[j];
            let r2 = pair.later.amplitude[j];
            (r2 * r2 - r1 * r1) / pair.dt + 0.5 * (d1[j] + d2[j])
        })
        .collect();
    Ok(MaskedField { values, mask })
}

/// As [`continuity_residual`] with an analytic `d(R^2)/dt`.
pub fn continuity_residual_with_rate(field: &MadelungField, density_rate: &[f64], mass: f64) -> Result<MaskedField> {
    if density_rate.len() != field.grid.n() {
        return Err(Error::Config("d(R^2)/dt has the wrong length".into()));
    }
    let mut spectral = Spectral::new(&field.grid);
    let div = flux_divergence(&mut spectral, field, mass);
    let values = (0..div.len())
        .map(|j| if field.support[j] { density_rate[j] + div[j] } else { 0.0 })
        .collect();
    Ok(MaskedField {
        values,
        mask: field.support.clone(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SolitonAmplitude {
    /// `c h / (4 (m0 c^2 + V))` in metres.
    pub si: f64,
    /// The same amplitude in units of the guide width `h / (2 m0 c)`.
    pub in_guide_widths: f64,
}

/// Soliton amplitude `r = c h / (4 (m0 c^2 + V))` for potential energy `V` (J).
pub fn soliton_amplitude(potential: f64, constants: &PhysicalConstants) -> Result<SolitonAmplitude> {
    let total = constants.rest_energy() + potential;
    if !(total > 0.0) || !total.is_finite() {
        return Err(Error::Domain(format!(
            "m0 c^2 + V must be positive, got {total} J"
        )));
    }
    let si = constants.c * constants.h / (4.0 * total);
    let w = guide_width(constants.m0, constants)?;
    Ok(SolitonAmplitude {
        si,
        in_guide_widths: si / w,
    })
}
