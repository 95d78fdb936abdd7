//! The model's narrative claims as reproducible numerical experiments.

pub mod barrier;
pub mod bohr;
pub mod dichotomy;
pub mod photon;

pub use barrier::{
    gap_fraction, linear_barrier_transmission, rectangular_barrier_transmission, run_barrier_monte_carlo,
    wavepacket_transmission, BarrierSpec, MonteCarloReport, WavepacketBarrier, WavepacketTransmission,
};
pub use bohr::{bohr_orbit, bohr_phase_accordance, phase_accordance_error, BohrOrbit, PhaseAccordance};
pub use dichotomy::{run_dispersion_vs_soliton, DichotomyReport, DichotomySettings, Verdict};
pub use photon::{photon_relations, PhotonRelations};
