//! Numerical laboratory for the envelope-soliton electron model.
//!
//! * [`kinematics`] — closed-form relativistic waveguide kinematics.
//! * [`dispersion`] — relativistic and parabolic dispersion relations.
//! * [`grid`] — periodic grid, complex fields, packets and observables.
//! * [`solvers`] — split-step Schrödinger/NLS and leapfrog Klein–Gordon.
//! * [`madelung`] — polar decomposition, quantum potential, residuals and the
//!   dispersion-cancelling evolution.
//! * [`experiments`] — dispersion-vs-soliton comparison, hidden-phase barrier
//!   Monte Carlo, Bohr orbits and photon relations.

#![allow(clippy::neg_cmp_op_on_partial_ord)] // `!(x > 0.0)` also rejects NaN

pub mod analysis;
pub mod constants;
pub mod dispersion;
pub mod error;
pub mod experiments;
pub mod grid;
pub mod kinematics;
pub mod madelung;
pub mod solvers;
pub mod spectral;

pub use error::{Error, Result};
