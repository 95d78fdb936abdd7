//! The nonlinear evolution in which `-Q` is added to the Schrödinger
//! equation, integrated in Madelung variables. With `Q` cancelled the system
//! is classical transport:
//!
//! ```text
//! rho_t + (rho u)_z = 0          rho = R^2
//! u_t + u u_z = -V_z / m         u = S_z / m
//! S_t = -(m u^2 / 2 + V)
//! ```
//!
//! RK4 in time; the flux divergence is spectral (so the discrete `sum rho dz`
//! is conserved), `u_z` and `V_z` use the fourth-order non-periodic stencil
//! because `u` and `V` need not be periodic.

use super::{quantum_potential, MadelungField, DEFAULT_NODE_THRESHOLD};
use crate::error::{Error, Result};
use crate::grid::{sech, ComplexField, Grid1D, BOUNDARY_THRESHOLD};
use crate::solvers::report::{NormTracker, Recorder, RunReport};
use crate::solvers::step_plan;
use crate::spectral::{gradient4, Spectral};
use num_complex::Complex64;

pub const EKHOLDT_CONVENTION: &str =
    "S_t + S_z^2/2m + V = 0, (R^2)_t + (R^2 S_z/m)_z = 0 (quantum potential cancelled)";

/// Advective guard: `dt <= EKHOLDT_CFL * dz / max|S_z / m|`.
pub const EKHOLDT_CFL: f64 = 0.5;

#[derive(Debug, Clone, PartialEq)]
pub struct EkholdtConfig {
    /// Envelope amplitude r.
    pub r: f64,
    /// Inverse envelope width a.
    pub a: f64,
    pub v_e: f64,
    /// Initial envelope centre.
    pub z0: f64,
    pub mass: f64,
    pub hbar: f64,
    pub potential: Vec<f64>,
    pub dt: f64,
    pub t_final: f64,
    pub snapshot_every: usize,
    pub keep_snapshots: bool,
}

impl EkholdtConfig {
    /// Free evolution of `r sech(a (z - z0))` moving at `v_e`, with hbar = m = 1.
    #[allow(clippy::too_many_arguments)]
    pub fn free(grid: &Grid1D, r: f64, a: f64, v_e: f64, z0: f64, dt: f64, t_final: f64, snapshot_every: usize) -> Self {
        EkholdtConfig {
            r,
            a,
            v_e,
            z0,
            mass: 1.0,
            hbar: 1.0,
            potential: vec![0.0; grid.n()],
            dt,
            t_final,
            snapshot_every,
            keep_snapshots: true,
        }
    }

    pub fn with_potential(mut self, potential: Vec<f64>) -> Self {
        self.potential = potential;
        self
    }

    pub fn diagnostics(&self, grid: &Grid1D) -> Vec<String> {
        let mut out = Vec::new();
        if !(self.r > 0.0) || !(self.a > 0.0) {
            out.push(format!("ekholdt needs r > 0 and a > 0, got r = {}, a = {}", self.r, self.a));
        }
        if !(self.mass > 0.0) || !(self.hbar > 0.0) {
            out.push(format!("ekholdt needs mass > 0 and hbar > 0, got {} and {}", self.mass, self.hbar));
        }
        if !(self.dt > 0.0) || !self.dt.is_finite() {
            out.push(format!("solver.dt must be > 0, got {}", self.dt));
        }
        if !(self.t_final >= self.dt) || !self.t_final.is_finite() {
            out.push(format!(
                "solver.t_final must be >= dt, got t_final = {} with dt = {}",
                self.t_final, self.dt
            ));
        }
        if self.snapshot_every == 0 {
            out.push("solver.snapshot_every must be >= 1".to_string());
        }
        if self.potential.len() != grid.n() {
            out.push(format!(
                "potential has {} samples but the grid has {}",
                self.potential.len(),
                grid.n()
            ));
        } else if self.potential.iter().any(|v| !v.is_finite()) {
            out.push("potential contains non-finite values".to_string());
        }
        out
    }

    /// `R = r sech(a (z - z0))`, `S = m v_e z`.
    pub fn initial_field(&self, grid: &Grid1D) -> Result<MadelungField> {
        if let Some(msg) = self.diagnostics(grid).into_iter().next() {
            return Err(Error::Config(msg));
        }
        let amplitude: Vec<f64> = grid.points().map(|z| self.r * sech(self.a * (z - self.z0))).collect();
        let edge = amplitude[0].max(amplitude[grid.n() - 1]);
        if edge > BOUNDARY_THRESHOLD * self.r {
            return Err(Error::Config(format!(
                "envelope is not contained in the domain: |R| at the boundary is {:.3e} of the peak (limit {BOUNDARY_THRESHOLD:e})",
                edge / self.r
            )));
        }
        let action = grid.points().map(|z| self.mass * self.v_e * z).collect();
        MadelungField::from_parts(*grid, amplitude, action, self.hbar, DEFAULT_NODE_THRESHOLD)
    }
}

#[derive(Clone)]
struct State {
    rho: Vec<f64>,
    u: Vec<f64>,
    s: Vec<f64>,
}

impl State {
    fn axpy(&self, h: f64, k: &State) -> State {
        let f = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x + h * y).collect();
        State {
            rho: f(&self.rho, &k.rho),
            u: f(&self.u, &k.u),
            s: f(&self.s, &k.s),
        }
    }
}

struct Rhs<'a> {
    spectral: Spectral,
    dz: f64,
    mass: f64,
    potential: &'a [f64],
    force: Vec<f64>,
}

impl Rhs<'_> {
    fn eval(&mut self, y: &State) -> State {
        let flux: Vec<f64> = y.rho.iter().zip(&y.u).map(|(r, u)| r * u).collect();
        let rho = self.spectral.derivative_real(&flux).into_iter().map(|d| -d).collect();
        let u_z = gradient4(&y.u, self.dz);
        let u = (0..y.u.len()).map(|j| -y.u[j] * u_z[j] + self.force[j]).collect();
        let s = y
            .u
            .iter()
            .zip(self.potential)
            .map(|(u, v)| -(0.5 * self.mass * u * u + v))
            .collect();
        State { rho, u, s }
    }
}

fn max_speed(u: &[f64]) -> f64 {
    u.iter().fold(0.0f64, |m, v| m.max(v.abs()))
}

fn to_field(grid: &Grid1D, y: &State, hbar: f64) -> (Vec<f64>, ComplexField) {
    let r: Vec<f64> = y.rho.iter().map(|p| p.max(0.0).sqrt()).collect();
    let values = r.iter().zip(&y.s).map(|(&r, &s)| Complex64::from_polar(r, s / hbar)).collect();
    (r, ComplexField::new(*grid, values).expect("finite state"))
}

fn columns(grid: &Grid1D, r: &[f64], s: &[f64], hbar: f64, mass: f64) -> Vec<(String, Vec<f64>)> {
    let q = MadelungField::from_parts(*grid, r.to_vec(), s.to_vec(), hbar, DEFAULT_NODE_THRESHOLD)
        .map(|f| quantum_potential(&f, mass).values)
        .unwrap_or_else(|_| vec![f64::NAN; r.len()]);
    vec![
        ("R".to_string(), r.to_vec()),
        ("S".to_string(), s.to_vec()),
        ("Q".to_string(), q),
    ]
}

pub fn evolve_ekholdt(initial: &MadelungField, config: &EkholdtConfig) -> Result<RunReport> {
    let grid = *initial.grid();
    if let Some(msg) = config.diagnostics(&grid).into_iter().next() {
        return Err(Error::Config(msg));
    }
    if initial.hbar() != config.hbar {
        return Err(Error::Config(format!(
            "initial field uses hbar = {} but the config says {}",
            initial.hbar(),
            config.hbar
        )));
    }
    let (steps, dt) = step_plan(config.dt, config.t_final);
    let dz = grid.dz();
    let mass = config.mass;
    let hbar = config.hbar;

    let mut y = State {
        rho: initial.amplitude().iter().map(|r| r * r).collect(),
        u: initial.action_gradient().into_iter().map(|p| p / mass).collect(),
        s: initial.action().to_vec(),
    };
    let bound = EKHOLDT_CFL * dz / max_speed(&y.u);
    if dt > bound {
        return Err(Error::Config(format!(
            "Ekholdt CFL guard violated: dt = {dt} exceeds {EKHOLDT_CFL} dz / max|S_z/m| = {bound:.6e}"
        )));
    }

    let mut rhs = Rhs {
        spectral: Spectral::new(&grid),
        dz,
        mass,
        potential: &config.potential,
        force: gradient4(&config.potential, dz).into_iter().map(|f| -f / mass).collect(),
    };
    let mass_of = |rho: &[f64]| rho.iter().sum::<f64>() * dz;
    let mut norms = NormTracker::new(mass_of(&y.rho));
    let mut recorder = Recorder::new(config.snapshot_every, config.keep_snapshots);

    let (r, field) = to_field(&grid, &y, hbar);
    recorder.record_with(0.0, &field, || columns(&grid, &r, &y.s, hbar, mass))?;
    let mut field = field;
    for step in 1..=steps {
        let k1 = rhs.eval(&y);
        let k2 = rhs.eval(&y.axpy(0.5 * dt, &k1));
        let k3 = rhs.eval(&y.axpy(0.5 * dt, &k2));
        let k4 = rhs.eval(&y.axpy(dt, &k3));
        for j in 0..grid.n() {
            y.rho[j] += dt / 6.0 * (k1.rho[j] + 2.0 * k2.rho[j] + 2.0 * k3.rho[j] + k4.rho[j]);
            y.u[j] += dt / 6.0 * (k1.u[j] + 2.0 * k2.u[j] + 2.0 * k3.u[j] + k4.u[j]);
            y.s[j] += dt / 6.0 * (k1.s[j] + 2.0 * k2.s[j] + 2.0 * k3.s[j] + k4.s[j]);
        }
        let t = step as f64 * dt;
        let speed = max_speed(&y.u);
        let bound = EKHOLDT_CFL * dz / speed;
        if !(dt <= bound) || y.rho.iter().any(|p| !p.is_finite()) {
            return Err(Error::Cfl { time: t, dt, bound });
        }
        norms.update(mass_of(&y.rho));
        if recorder.due(step, steps) {
            let (r, f) = to_field(&grid, &y, hbar);
            recorder.record_with(t, &f, || columns(&grid, &r, &y.s, hbar, mass))?;
            field = f;
        }
    }

    Ok(RunReport {
        scheme: "Ekholdt".to_string(),
        convention: EKHOLDT_CONVENTION.to_string(),
        grid,
        requested_dt: config.dt,
        effective_dt: dt,
        steps,
        t_final: steps as f64 * dt,
        samples: recorder.samples,
        conservation: norms.finish(None),
        probe: Vec::new(),
        snapshots: recorder.snapshots,
        final_field: field,
    })
}
