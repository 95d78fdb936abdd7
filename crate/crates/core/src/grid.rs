//! Periodic 1-D grid, complex fields, initial packets and observables.

use crate::error::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::io::{self, Write};

/// Localized packets must fall below this fraction of their peak at the domain edge.
pub const BOUNDARY_THRESHOLD: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid1D {
    n: usize,
    z_min: f64,
    z_max: f64,
}

impl Grid1D {
    pub fn new(n: usize, z_min: f64, z_max: f64) -> Result<Self> {
        if n < 16 || !n.is_power_of_two() {
            return Err(Error::Config(format!(
                "grid size must be a power of two >= 16, got {n}"
            )));
        }
        if !(z_min.is_finite() && z_max.is_finite() && z_max > z_min) {
            return Err(Error::Config(format!(
                "grid bounds must satisfy z_min < z_max, got [{z_min}, {z_max}]"
            )));
        }
        Ok(Grid1D { n, z_min, z_max })
    }

    /// Grid of `n` points centred on zero with spacing `dz`.
    pub fn centered(n: usize, dz: f64) -> Result<Self> {
        let half = 0.5 * n as f64 * dz;
        Self::new(n, -half, half)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn z_min(&self) -> f64 {
        self.z_min
    }

    pub fn z_max(&self) -> f64 {
        self.z_max
    }

    pub fn length(&self) -> f64 {
        self.z_max - self.z_min
    }

    pub fn dz(&self) -> f64 {
        self.length() / self.n as f64
    }

    pub fn z(&self, j: usize) -> f64 {
        self.z_min + j as f64 * self.dz()
    }

    pub fn points(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        (0..self.n).map(move |j| self.z(j))
    }

    /// Maps `z` onto the periodic image closest to `center`.
    pub fn nearest_image(&self, z: f64, center: f64) -> f64 {
        let l = self.length();
        z - l * ((z - center) / l).round()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComplexField {
    grid: Grid1D,
    values: Vec<Complex64>,
}

impl ComplexField {
    pub fn new(grid: Grid1D, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.n() {
            return Err(Error::Config(format!(
                "field has {} samples but the grid has {}",
                values.len(),
                grid.n()
            )));
        }
        if let Some(j) = values.iter().position(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "non-finite field value at index {j}"
            )));
        }
        Ok(ComplexField { grid, values })
    }

    pub fn from_fn<F: Fn(f64) -> Complex64>(grid: Grid1D, f: F) -> Result<Self> {
        let values = grid.points().map(f).collect();
        Self::new(grid, values)
    }

    pub fn zeros(grid: Grid1D) -> Self {
        ComplexField {
            grid,
            values: vec![Complex64::new(0.0, 0.0); grid.n()],
        }
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub(crate) fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn scaled(&self, factor: Complex64) -> ComplexField {
        ComplexField {
            grid: self.grid,
            values: self.values.iter().map(|v| v * factor).collect(),
        }
    }

    pub fn density(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.norm_sqr()).collect()
    }

    /// Rectangle-rule integral of |psi|^2.
    pub fn norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum::<f64>() * self.grid.dz()
    }

    pub fn peak_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Continuous L2 distance to `other` on the same grid.
    pub fn l2_distance(&self, other: &ComplexField) -> f64 {
        let s: f64 = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum();
        (s * self.grid.dz()).sqrt()
    }

    pub fn max_abs_difference(&self, other: &ComplexField) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest edge amplitude relative to the peak.
    pub fn boundary_ratio(&self) -> f64 {
        let peak = self.peak_abs();
        if peak == 0.0 {
            return 0.0;
        }
        let n = self.values.len();
        self.values[0].norm().max(self.values[n - 1].norm()) / peak
    }

    pub fn write_csv<W: Write>(&self, out: W, time: f64) -> io::Result<()> {
        write_snapshot_csv(out, self, time, &[])
    }
}

/// Initial-condition recipe.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum PacketSpec {
    /// `a exp(i v z / 2) sech(a (z - z0))`, the moving breather at t = 0.
    SechBreather {
        amplitude: f64,
        center: f64,
        velocity: f64,
    },
    /// `A exp(-(z - z0)^2 / (2 sigma^2)) exp(i k0 z)`; density has rms width sigma/sqrt(2).
    Gaussian {
        amplitude: f64,
        center: f64,
        sigma: f64,
        k0: f64,
    },
    PlaneWave {
        amplitude: f64,
        k0: f64,
    },
}

impl PacketSpec {
    pub fn breather(amplitude: f64, velocity: f64, center: f64) -> Self {
        PacketSpec::SechBreather {
            amplitude,
            center,
            velocity,
        }
    }

    pub fn gaussian(sigma: f64, k0: f64, center: f64) -> Self {
        PacketSpec::Gaussian {
            amplitude: 1.0,
            center,
            sigma,
            k0,
        }
    }

    pub fn is_localized(&self) -> bool {
        !matches!(self, PacketSpec::PlaneWave { .. })
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            PacketSpec::SechBreather {
                amplitude,
                center,
                velocity,
            } => {
                if !(amplitude > 0.0) || !amplitude.is_finite() {
                    return Err(Error::Config(format!(
                        "packet.amplitude must be > 0 for a sech breather, got {amplitude}"
                    )));
                }
                finite("packet.center", center)?;
                finite("packet.velocity", velocity)
            }
            PacketSpec::Gaussian {
                amplitude,
                center,
                sigma,
                k0,
            } => {
                if !(sigma > 0.0) || !sigma.is_finite() {
                    return Err(Error::Config(format!(
                        "packet.sigma must be > 0 for a Gaussian, got {sigma}"
                    )));
                }
                finite("packet.amplitude", amplitude)?;
                finite("packet.center", center)?;
                finite("packet.k0", k0)
            }
            PacketSpec::PlaneWave { amplitude, k0 } => {
                finite("packet.amplitude", amplitude)?;
                finite("packet.k0", k0)
            }
        }
    }

    pub fn sample(&self, z: f64) -> Complex64 {
        match *self {
            PacketSpec::SechBreather {
                amplitude,
                center,
                velocity,
            } => {
                let phase = Complex64::from_polar(1.0, velocity * z / 2.0);
                phase * (amplitude * sech(amplitude * (z - center)))
            }
            PacketSpec::Gaussian {
                amplitude,
                center,
                sigma,
                k0,
            } => {
                let x = (z - center) / sigma;
                Complex64::from_polar(amplitude * (-0.5 * x * x).exp(), k0 * z)
            }
            PacketSpec::PlaneWave { amplitude, k0 } => Complex64::from_polar(amplitude, k0 * z),
        }
    }
}

fn finite(name: &str, x: f64) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(Error::Config(format!("{name} must be finite, got {x}")))
    }
}

pub fn sech(x: f64) -> f64 {
    // 2 / (e^x + e^-x) without overflow for large |x|
    let e = (-x.abs()).exp();
    2.0 * e / (1.0 + e * e)
}

pub fn build_packet(spec: &PacketSpec, grid: &Grid1D) -> Result<ComplexField> {
    spec.validate()?;
    let field = ComplexField::from_fn(*grid, |z| spec.sample(z))?;
    if spec.is_localized() {
        let ratio = field.boundary_ratio();
        if ratio >= BOUNDARY_THRESHOLD {
            return Err(Error::Config(format!(
                "packet touches the periodic boundary: edge amplitude is {ratio:.3e} of the peak (limit {BOUNDARY_THRESHOLD:e})"
            )));
        }
    }
    Ok(field)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Observables {
    pub norm: f64,
    pub centroid: f64,
    pub rms_width: f64,
    pub peak_position: f64,
}

pub fn observables(field: &ComplexField) -> Result<Observables> {
    observables_of_density(field.grid(), &field.density())
}

/// Moments of a non-negative density sampled on the grid.
pub fn observables_of_density(grid: &Grid1D, density: &[f64]) -> Result<Observables> {
    let dz = grid.dz();
    let total: f64 = density.iter().sum();
    let norm = total * dz;
    if !(norm > 0.0) || !norm.is_finite() {
        return Err(Error::DegenerateField(format!(
            "norm must be positive, got {norm}"
        )));
    }
    let centroid = grid.points().zip(density).map(|(z, p)| z * p).sum::<f64>() / total;
    let second = grid
        .points()
        .zip(density)
        .map(|(z, p)| (z - centroid).powi(2) * p)
        .sum::<f64>()
        / total;

    let n = density.len();
    let (jmax, _) = density
        .iter()
        .enumerate()
        .fold((0, f64::MIN), |acc, (j, &p)| if p > acc.1 { (j, p) } else { acc });
    let amp = |j: usize| density[j].sqrt();
    let (ym, y0, yp) = (amp((jmax + n - 1) % n), amp(jmax), amp((jmax + 1) % n));
    let curvature = ym - 2.0 * y0 + yp;
    let offset = if curvature < 0.0 {
        (0.5 * (ym - yp) / curvature).clamp(-0.5, 0.5)
    } else {
        0.0
    };

    Ok(Observables {
        norm,
        centroid,
        rms_width: second.sqrt(),
        peak_position: grid.z(jmax) + offset * dz,
    })
}

/// CSV snapshot: comment header with time and grid metadata, then
/// `z,re,im,abs2` plus any extra named columns.
pub fn write_snapshot_csv<W: Write>(
    mut out: W,
    field: &ComplexField,
    time: f64,
    extra: &[(&str, &[f64])],
) -> io::Result<()> {
    let g = field.grid();
    writeln!(out, "# t={time:e}")?;
    writeln!(out, "# n={} z_min={:e} z_max={:e} dz={:e}", g.n(), g.z_min(), g.z_max(), g.dz())?;
    write!(out, "z,re,im,abs2")?;
    for (name, _) in extra {
        write!(out, ",{name}")?;
    }
    writeln!(out)?;
    for (j, (z, v)) in g.points().zip(field.values()).enumerate() {
        write!(out, "{z:e},{:e},{:e},{:e}", v.re, v.im, v.norm_sqr())?;
        for (_, col) in extra {
            write!(out, ",{:e}", col[j])?;
        }
        writeln!(out)?;
    }
    Ok(())
}
