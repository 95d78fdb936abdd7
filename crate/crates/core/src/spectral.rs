//! FFT workspace and derivative operators on the periodic grid.

use crate::grid::Grid1D;
use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use std::f64::consts::PI;
use std::sync::Arc;

/// Per-run FFT plans, wavenumber ladder and scratch space.
pub struct Spectral {
    n: usize,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
    scratch: Vec<Complex64>,
    wavenumbers: Vec<f64>,
}

impl Spectral {
    pub fn new(grid: &Grid1D) -> Self {
        let n = grid.n();
        let mut planner = FftPlanner::new();
        let forward = planner.plan_fft_forward(n);
        let inverse = planner.plan_fft_inverse(n);
        let scratch_len = forward
            .get_inplace_scratch_len()
            .max(inverse.get_inplace_scratch_len());
        Spectral {
            n,
            forward,
            inverse,
            scratch: vec![Complex64::new(0.0, 0.0); scratch_len],
            wavenumbers: wavenumbers(n, grid.length()),
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Angular wavenumbers in FFT order; index n/2 is the Nyquist mode.
    pub fn wavenumbers(&self) -> &[f64] {
        &self.wavenumbers
    }

    pub fn forward(&mut self, data: &mut [Complex64]) {
        self.forward.process_with_scratch(data, &mut self.scratch);
    }

    /// Inverse transform including the 1/n normalization.
    pub fn inverse(&mut self, data: &mut [Complex64]) {
        self.inverse.process_with_scratch(data, &mut self.scratch);
        let scale = 1.0 / self.n as f64;
        for x in data.iter_mut() {
            *x *= scale;
        }
    }

    /// Multiply each Fourier mode by `symbol(k)` in place.
    pub fn apply_symbol<F>(&mut self, data: &mut [Complex64], symbol: F)
    where
        F: Fn(f64) -> Complex64,
    {
        self.forward(data);
        for (x, &k) in data.iter_mut().zip(&self.wavenumbers) {
            *x *= symbol(k);
        }
        self.inverse(data);
    }

    /// First derivative; the Nyquist mode is zeroed.
    pub fn derivative_in_place(&mut self, data: &mut [Complex64]) {
        let nyquist = self.n / 2;
        self.forward(data);
        for (j, (x, &k)) in data.iter_mut().zip(&self.wavenumbers).enumerate() {
            *x *= if j == nyquist {
                Complex64::new(0.0, 0.0)
            } else {
                Complex64::new(0.0, k)
            };
        }
        self.inverse(data);
    }

    pub fn second_derivative_in_place(&mut self, data: &mut [Complex64]) {
        self.apply_symbol(data, |k| Complex64::new(-k * k, 0.0));
    }

    pub fn derivative(&mut self, data: &[Complex64]) -> Vec<Complex64> {
        let mut out = data.to_vec();
        self.derivative_in_place(&mut out);
        out
    }

    pub fn second_derivative(&mut self, data: &[Complex64]) -> Vec<Complex64> {
        let mut out = data.to_vec();
        self.second_derivative_in_place(&mut out);
        out
    }

    pub fn derivative_real(&mut self, data: &[f64]) -> Vec<f64> {
        let mut buf: Vec<Complex64> = data.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        self.derivative_in_place(&mut buf);
        buf.into_iter().map(|z| z.re).collect()
    }

    pub fn second_derivative_real(&mut self, data: &[f64]) -> Vec<f64> {
        let mut buf: Vec<Complex64> = data.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        self.second_derivative_in_place(&mut buf);
        buf.into_iter().map(|z| z.re).collect()
    }
}

/// Angular wavenumber ladder `2 pi m / L` in FFT order.
pub fn wavenumbers(n: usize, length: f64) -> Vec<f64> {
    let dk = 2.0 * PI / length;
    (0..n)
        .map(|j| {
            let m = if j <= n / 2 { j as f64 } else { j as f64 - n as f64 };
            m * dk
        })
        .collect()
}

/// Fourth-order finite-difference gradient without periodic wrap.
///
/// Central stencil in the interior, one-sided fourth-order stencils on the two
/// outermost points at each end. Exact for polynomials up to degree four.
pub fn gradient4(values: &[f64], dz: f64) -> Vec<f64> {
    let n = values.len();
    assert!(n >= 5, "gradient4 needs at least five samples");
    let f = values;
    let mut out = vec![0.0; n];
    for i in 2..n - 2 {
        out[i] = (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) / (12.0 * dz);
    }
    out[0] = (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) / (12.0 * dz);
    out[1] = (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) / (12.0 * dz);
    let m = n - 1;
    out[m] = (25.0 * f[m] - 48.0 * f[m - 1] + 36.0 * f[m - 2] - 16.0 * f[m - 3] + 3.0 * f[m - 4])
        / (12.0 * dz);
    out[m - 1] = (3.0 * f[m] + 10.0 * f[m - 1] - 18.0 * f[m - 2] + 6.0 * f[m - 3] - f[m - 4])
        / (12.0 * dz);
    out
}
