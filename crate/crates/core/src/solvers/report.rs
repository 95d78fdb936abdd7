use crate::grid::{observables, ComplexField, Grid1D, Observables};
use crate::error::Result;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Sample {
    pub t: f64,
    pub norm: f64,
    pub centroid: f64,
    pub rms_width: f64,
    pub peak_position: f64,
}

impl Sample {
    pub fn new(t: f64, obs: Observables) -> Self {
        Sample {
            t,
            norm: obs.norm,
            centroid: obs.centroid,
            rms_width: obs.rms_width,
            peak_position: obs.peak_position,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProbeSample {
    pub t: f64,
    pub re: f64,
    pub im: f64,
}

/// Field snapshot with optional extra per-point columns (e.g. R, S, Q).
#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub t: f64,
    pub field: ComplexField,
    pub columns: Vec<(String, Vec<f64>)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Conservation {
    pub initial_norm: f64,
    pub final_norm: f64,
    /// max over the run of |N(t) - N(0)| / N(0)
    pub max_norm_drift: f64,
    /// max over steps of |N(t + dt) - N(t)| / N(t)
    pub max_step_norm_drift: f64,
    /// Conserved discrete energy, when the scheme has one.
    pub initial_energy: Option<f64>,
    pub max_energy_drift: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub scheme: String,
    pub convention: String,
    pub grid: Grid1D,
    pub requested_dt: f64,
    pub effective_dt: f64,
    pub steps: usize,
    pub t_final: f64,
    pub samples: Vec<Sample>,
    pub conservation: Conservation,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub probe: Vec<ProbeSample>,
    #[serde(skip)]
    pub snapshots: Vec<Snapshot>,
    #[serde(skip)]
    pub final_field: ComplexField,
}

impl RunReport {
    pub fn final_sample(&self) -> &Sample {
        self.samples.last().expect("a report always holds the initial sample")
    }

    pub fn initial_sample(&self) -> &Sample {
        &self.samples[0]
    }

    /// rms width at the end divided by rms width at the start.
    pub fn width_ratio(&self) -> f64 {
        self.final_sample().rms_width / self.initial_sample().rms_width
    }
}

/// Norm bookkeeping shared by the steppers; no allocation per step.
pub(crate) struct NormTracker {
    initial: f64,
    previous: f64,
    max_drift: f64,
    max_step_drift: f64,
}

impl NormTracker {
    pub fn new(initial: f64) -> Self {
        NormTracker {
            initial,
            previous: initial,
            max_drift: 0.0,
            max_step_drift: 0.0,
        }
    }

    pub fn update(&mut self, norm: f64) {
        self.max_step_drift = self
            .max_step_drift
            .max((norm - self.previous).abs() / self.previous);
        self.max_drift = self.max_drift.max((norm - self.initial).abs() / self.initial);
        self.previous = norm;
    }

    pub fn finish(&self, energy: Option<(f64, f64)>) -> Conservation {
        Conservation {
            initial_norm: self.initial,
            final_norm: self.previous,
            max_norm_drift: self.max_drift,
            max_step_norm_drift: self.max_step_drift,
            initial_energy: energy.map(|e| e.0),
            max_energy_drift: energy.map(|e| e.1),
        }
    }
}

/// Collects samples and snapshots at the configured cadence.
pub(crate) struct Recorder {
    every: usize,
    keep_snapshots: bool,
    pub samples: Vec<Sample>,
    pub snapshots: Vec<Snapshot>,
}

impl Recorder {
    pub fn new(every: usize, keep_snapshots: bool) -> Self {
        Recorder {
            every,
            keep_snapshots,
            samples: Vec::new(),
            snapshots: Vec::new(),
        }
    }

    pub fn due(&self, step: usize, last: usize) -> bool {
        step.is_multiple_of(self.every) || step == last
    }

    pub fn record(&mut self, t: f64, field: &ComplexField) -> Result<()> {
        self.record_with(t, field, Vec::new)
    }

    /// As `record`; `columns` is only evaluated when a snapshot is kept.
    pub fn record_with<F>(&mut self, t: f64, field: &ComplexField, columns: F) -> Result<()>
    where
        F: FnOnce() -> Vec<(String, Vec<f64>)>,
    {
        self.samples.push(Sample::new(t, observables(field)?));
        if self.keep_snapshots {
            self.snapshots.push(Snapshot {
                t,
                field: field.clone(),
                columns: columns(),
            });
        }
        Ok(())
    }
}
