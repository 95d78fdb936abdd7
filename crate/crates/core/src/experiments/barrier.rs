//! Hidden-phase barrier Monte Carlo and the linear-equation comparators.
//!
//! Model: inside the barrier the cutoff rises to `f0' = f0 + V0/h`, which
//! narrows the guide to `w' = c / (2 f0')`. Each trial draws a uniform zigzag
//! phase; its triangle-wave image is the transverse position at the
//! interface. Landing inside the gap (width `w'`) transmits, anything else
//! reflects. Below the shifted cutoff a gap hit only survives with the
//! evanescent probability `exp(-2 kappa L)`.

use crate::constants::PhysicalConstants;
use crate::dispersion::evanescent_kappa;
use crate::error::{Error, Result};
use crate::grid::{build_packet, Grid1D, PacketSpec};
use crate::solvers::{evolve_linear_schrodinger, Scheme, SolverConfig};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BarrierSpec {
    /// Barrier height V0 (J).
    pub v0: f64,
    /// Barrier length L (m).
    pub length: f64,
    /// Kinetic energy E of the incoming electron (J).
    pub energy: f64,
    pub trials: u64,
    pub seed: u64,
    /// Gap centre offset from the guide centre, as a fraction of w.
    #[serde(default)]
    pub gap_offset: f64,
}

impl BarrierSpec {
    pub fn diagnostics(&self, constants: &PhysicalConstants) -> Vec<String> {
        let mut out = Vec::new();
        for (name, x) in [("barrier.v0", self.v0), ("barrier.length", self.length), ("barrier.energy", self.energy)] {
            if !(x > 0.0) || !x.is_finite() {
                out.push(format!("{name} must be > 0, got {x}"));
            }
        }
        if self.trials == 0 {
            out.push("barrier.trials must be >= 1".to_string());
        }
        if out.is_empty() {
            let limit = 0.5 * (1.0 - gap_fraction(self.v0, constants));
            if !(self.gap_offset.abs() <= limit) {
                out.push(format!(
                    "barrier.gap_offset = {} moves the gap outside the guide (|offset| <= {limit:.6})",
                    self.gap_offset
                ));
            }
        }
        out
    }

    pub fn validate(&self, constants: &PhysicalConstants) -> Result<()> {
        match self.diagnostics(constants).into_iter().next() {
            Some(msg) => Err(Error::Config(msg)),
            None => Ok(()),
        }
    }
}

/// `w'/w = f0 / (f0 + V0/h)`.
pub fn gap_fraction(v0: f64, constants: &PhysicalConstants) -> f64 {
    let f0 = constants.rest_frequency();
    f0 / (f0 + v0 / constants.h)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BarrierModel {
    pub f0: f64,
    /// `f0 + E/h`.
    pub f_wave: f64,
    /// `f0 + V0/h`.
    pub f0_barrier: f64,
    pub guide_width: f64,
    /// `c / (2 f0')`.
    pub gap_width: f64,
    pub gap_start: f64,
    pub above_cutoff: bool,
    /// `exp(-2 kappa L)` below the shifted cutoff, 1 above it.
    pub tunnel_probability: f64,
    pub assumptions: Vec<&'static str>,
}

pub fn barrier_model(spec: &BarrierSpec, constants: &PhysicalConstants) -> Result<BarrierModel> {
    spec.validate(constants)?;
    let f0 = constants.rest_frequency();
    let f_wave = f0 + spec.energy / constants.h;
    let f0_barrier = f0 + spec.v0 / constants.h;
    let guide_width = constants.c / (2.0 * f0);
    let gap_width = constants.c / (2.0 * f0_barrier);
    let gap_start = 0.5 * (guide_width - gap_width) + spec.gap_offset * guide_width;
    let above_cutoff = f_wave >= f0_barrier;
    let tunnel_probability = if above_cutoff {
        1.0
    } else {
        let kappa = evanescent_kappa(f_wave, f0_barrier, constants.c)?;
        (-2.0 * kappa * spec.length).exp()
    };
    Ok(BarrierModel {
        f0,
        f_wave,
        f0_barrier,
        guide_width,
        gap_width,
        gap_start,
        above_cutoff,
        tunnel_probability,
        assumptions: vec![
            "zigzag phase at the interface is uniform on [0, 1)",
            "transverse position is the triangle-wave image of the phase across [0, w]",
            "barrier cutoff f0' = f0 + V0/h, gap width w' = c / (2 f0')",
            "below the shifted cutoff a gap hit tunnels with probability exp(-2 kappa L)",
        ],
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonteCarloReport {
    pub spec: BarrierSpec,
    pub model: BarrierModel,
    pub transmitted: u64,
    pub reflected: u64,
    pub tunneled: u64,
    /// `(transmitted + tunneled) / K`.
    pub transmission_fraction: f64,
    /// Binomial standard error `sqrt(p (1 - p) / K)` of the fraction.
    pub standard_error: f64,
    /// `w'/w`.
    pub geometric_gap_fraction: f64,
    /// What the fraction converges to: gap fraction times tunnelling probability.
    pub expected_fraction: f64,
    pub linear_t: f64,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Outcome {
    Transmitted,
    Reflected,
    Tunneled,
}

/// One trial on its own ChaCha8 stream, so the result does not depend on
/// which thread runs it or in which order.
fn trial(seed: u64, index: u64, model: &BarrierModel) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let phase: f64 = rng.random();
    let x = model.guide_width * (1.0 - (2.0 * phase - 1.0).abs());
    let in_gap = x >= model.gap_start && x < model.gap_start + model.gap_width;
    if !in_gap {
        Outcome::Reflected
    } else if model.above_cutoff {
        Outcome::Transmitted
    } else if rng.random::<f64>() < model.tunnel_probability {
        Outcome::Tunneled
    } else {
        Outcome::Reflected
    }
}

#[derive(Default, Clone, Copy)]
struct Counts([u64; 3]);

impl Counts {
    fn add(mut self, o: Outcome) -> Self {
        self.0[o as usize] += 1;
        self
    }

    fn merge(mut self, other: Counts) -> Self {
        for i in 0..3 {
            self.0[i] += other.0[i];
        }
        self
    }
}

/// Runs the barrier Monte Carlo on `threads` workers (`None`: rayon's
/// default). Counts are integers, so the report is bit-identical for any
/// thread count.
pub fn run_barrier_monte_carlo(
    spec: &BarrierSpec,
    constants: &PhysicalConstants,
    threads: Option<usize>,
) -> Result<MonteCarloReport> {
    let model = barrier_model(spec, constants)?;
    let linear_t = linear_barrier_transmission(spec, constants)?;
    let count = || {
        (0..spec.trials)
            .into_par_iter()
            .fold(Counts::default, |c, i| c.add(trial(spec.seed, i, &model)))
            .reduce(Counts::default, Counts::merge)
    };
    let counts = match threads {
        Some(n) => {
            if n == 0 {
                return Err(Error::Config("parallel trials must be >= 1".into()));
            }
            rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::Config(format!("cannot start {n} worker threads: {e}")))?
                .install(count)
        }
        None => count(),
    };
    let [transmitted, reflected, tunneled] = counts.0;
    let k = spec.trials as f64;
    let p = (transmitted + tunneled) as f64 / k;
    let geometric = model.gap_width / model.guide_width;
    Ok(MonteCarloReport {
        spec: *spec,
        transmitted,
        reflected,
        tunneled,
        transmission_fraction: p,
        standard_error: (p * (1.0 - p) / k).sqrt(),
        geometric_gap_fraction: geometric,
        expected_fraction: geometric * model.tunnel_probability,
        linear_t,
        seed: spec.seed,
        model,
    })
}

/// Transmission coefficient of the rectangular barrier for the
/// linear Schrödinger equation with mass `m0`.
pub fn linear_barrier_transmission(spec: &BarrierSpec, constants: &PhysicalConstants) -> Result<f64> {
    spec.validate(constants)?;
    rectangular_barrier_transmission(spec.energy, spec.v0, spec.length, constants.m0, constants.hbar)
}

/// Transmission through `V = v0` on `[0, length]` (zero elsewhere) at energy
/// `energy > 0`, by 2x2 transfer matrices. Any consistent unit system.
pub fn rectangular_barrier_transmission(energy: f64, v0: f64, length: f64, mass: f64, hbar: f64) -> Result<f64> {
    if !(energy > 0.0) || !(length >= 0.0) || !(mass > 0.0) || !(hbar > 0.0) || !v0.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "barrier transmission needs E > 0, L >= 0, m > 0, hbar > 0; got E = {energy}, L = {length}, m = {mass}, hbar = {hbar}"
        )));
    }
    piecewise_transmission(energy, &[(v0, length)], mass, hbar)
}

/// Basis matrix of region `V` at `x`: columns are the two independent
/// solutions, rows are value and derivative.
fn basis(q: Complex64, x: f64) -> [[Complex64; 2]; 2] {
    let i = Complex64::i();
    if q == Complex64::new(0.0, 0.0) {
        let one = Complex64::new(1.0, 0.0);
        [[one, Complex64::new(x, 0.0)], [Complex64::new(0.0, 0.0), one]]
    } else {
        let e = (i * q * x).exp();
        let f = (-i * q * x).exp();
        [[e, f], [i * q * e, -i * q * f]]
    }
}

fn mul(a: [[Complex64; 2]; 2], b: [[Complex64; 2]; 2]) -> [[Complex64; 2]; 2] {
    let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
    for r in 0..2 {
        for c in 0..2 {
            out[r][c] = a[r][0] * b[0][c] + a[r][1] * b[1][c];
        }
    }
    out
}

fn inv(a: [[Complex64; 2]; 2]) -> [[Complex64; 2]; 2] {
    let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    [[a[1][1] / det, -a[0][1] / det], [-a[1][0] / det, a[0][0] / det]]
}

/// Transmission through consecutive constant segments `(V, width)` starting
/// at x = 0, with V = 0 on both sides.
pub fn piecewise_transmission(energy: f64, segments: &[(f64, f64)], mass: f64, hbar: f64) -> Result<f64> {
    let wavenumber = |v: f64| (Complex64::new(2.0 * mass * (energy - v), 0.0)).sqrt() / hbar;
    let k = wavenumber(0.0);
    // coefficients on the left = total * coefficients on the right
    let mut total = [[Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)], [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)]];
    let mut x = 0.0;
    let mut q_prev = k;
    for &(v, width) in segments {
        let q = wavenumber(v);
        total = mul(total, mul(inv(basis(q_prev, x)), basis(q, x)));
        x += width;
        q_prev = q;
    }
    total = mul(total, mul(inv(basis(q_prev, x)), basis(k, x)));
    let t = 1.0 / total[0][0].norm_sqr();
    if !t.is_finite() {
        return Err(Error::Domain("transfer matrix is singular at this energy".into()));
    }
    Ok(t)
}

/// Wavepacket-splitting measurement of a rectangular barrier in normalized
/// units (hbar = m = 1): a Gaussian with mean energy `energy` starts left of
/// the barrier `V = v0` on `[0, length]`, and the transmitted norm fraction
/// right of the barrier is read off once the pieces have separated.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WavepacketBarrier {
    pub energy: f64,
    pub v0: f64,
    pub length: f64,
    /// Gaussian width parameter of the packet.
    pub sigma: f64,
    /// Initial packet centre (must be left of the barrier).
    pub z0: f64,
    pub n: usize,
    pub dz: f64,
    pub dt: f64,
    pub t_final: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WavepacketTransmission {
    pub setup: WavepacketBarrier,
    /// Norm fraction beyond the barrier at `t_final`.
    pub transmitted_fraction: f64,
    /// Norm fraction still overlapping the barrier region at `t_final`.
    pub residual_in_barrier: f64,
    /// Transfer-matrix T at the mean energy.
    pub linear_t: f64,
    /// T averaged over the packet's momentum distribution.
    pub linear_t_packet: f64,
}

pub fn barrier_potential(grid: &Grid1D, v0: f64, length: f64) -> Vec<f64> {
    grid.points().map(|z| if (0.0..length).contains(&z) { v0 } else { 0.0 }).collect()
}

pub fn wavepacket_transmission(setup: &WavepacketBarrier) -> Result<WavepacketTransmission> {
    let grid = Grid1D::centered(setup.n, setup.dz)?;
    if !(setup.z0 + 4.0 * setup.sigma < 0.0) {
        return Err(Error::Config("wavepacket must start clear of the barrier".into()));
    }
    let k0 = (2.0 * setup.energy).sqrt();
    let psi0 = build_packet(&PacketSpec::gaussian(setup.sigma, k0, setup.z0), &grid)?;
    let potential = barrier_potential(&grid, setup.v0, setup.length);
    let config = SolverConfig::new(Scheme::LinearSchrodinger, setup.dt, setup.t_final, usize::MAX, potential)?
        .without_snapshots();
    let report = evolve_linear_schrodinger(&psi0, &config)?;
    let density = report.final_field.density();
    let total: f64 = density.iter().sum();
    let beyond: f64 = grid.points().zip(&density).filter(|(z, _)| *z >= setup.length).map(|(_, d)| d).sum();
    let inside: f64 = grid
        .points()
        .zip(&density)
        .filter(|(z, _)| (-setup.sigma..setup.length + setup.sigma).contains(z))
        .map(|(_, d)| d)
        .sum();

    let linear_t = rectangular_barrier_transmission(setup.energy, setup.v0, setup.length, 1.0, 1.0)?;
    // |psi(k)|^2 ~ exp(-(k - k0)^2 sigma^2); midpoint rule over +-6 standard deviations
    let sd = 1.0 / (std::f64::consts::SQRT_2 * setup.sigma);
    let m = 2001;
    let (mut num, mut den) = (0.0, 0.0);
    for i in 0..m {
        let k = k0 + sd * (-6.0 + 12.0 * (i as f64 + 0.5) / m as f64);
        if k <= 0.0 {
            continue;
        }
        let w = (-(k - k0).powi(2) / (2.0 * sd * sd)).exp();
        num += w * rectangular_barrier_transmission(0.5 * k * k, setup.v0, setup.length, 1.0, 1.0)?;
        den += w;
    }
    Ok(WavepacketTransmission {
        setup: *setup,
        transmitted_fraction: beyond / total,
        residual_in_barrier: inside / total,
        linear_t,
        linear_t_packet: num / den,
    })
}
