//! Small fitting helpers used to turn time series into measured rates.

use crate::solvers::ProbeSample;
use std::f64::consts::PI;

/// Least-squares line through `(x, y)`; returns `(slope, intercept)`.
pub fn linear_fit(x: &[f64], y: &[f64]) -> (f64, f64) {
    assert_eq!(x.len(), y.len());
    assert!(x.len() >= 2, "need at least two points");
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}

/// Unwraps a sequence of angles so consecutive differences lie in (-pi, pi].
pub fn unwrap_phases(raw: &[f64]) -> Vec<f64> {
    let mut out: Vec<f64> = Vec::with_capacity(raw.len());
    let mut offset = 0.0f64;
    for (i, &p) in raw.iter().enumerate() {
        if i > 0 {
            let d = p + offset - out[i - 1];
            offset -= 2.0 * PI * ((d - PI) / (2.0 * PI)).ceil();
        }
        out.push(p + offset);
    }
    out
}

/// Wraps an angle into (-pi, pi].
pub fn wrap_angle(x: f64) -> f64 {
    x - 2.0 * PI * ((x - PI) / (2.0 * PI)).ceil()
}

/// Angular frequency of a probe time series `psi(t) ~ exp(-i omega t)`,
/// from a regression of the unwrapped phase.
pub fn phase_regression_frequency(probe: &[ProbeSample]) -> f64 {
    let t: Vec<f64> = probe.iter().map(|p| p.t).collect();
    let raw: Vec<f64> = probe.iter().map(|p| p.im.atan2(p.re)).collect();
    let (slope, _) = linear_fit(&t, &unwrap_phases(&raw));
    -slope
}

/// Observed order `log2(e_coarse / e_fine)` for a step halving.
pub fn halving_order(e_coarse: f64, e_fine: f64) -> f64 {
    (e_coarse / e_fine).log2()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fit_recovers_line() {
        let x: Vec<f64> = (0..10).map(|i| i as f64).collect();
        let y: Vec<f64> = x.iter().map(|v| 3.0 * v - 2.0).collect();
        let (m, b) = linear_fit(&x, &y);
        assert!((m - 3.0).abs() < 1e-12 && (b + 2.0).abs() < 1e-12);
    }

    #[test]
    fn unwrap_ramp() {
        let truth: Vec<f64> = (0..100).map(|i| -0.9 * i as f64).collect();
        let raw: Vec<f64> = truth.iter().map(|&p| wrap_angle(p)).collect();
        let un = unwrap_phases(&raw);
        for (a, b) in un.iter().zip(&truth) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn wrap_range() {
        assert!((wrap_angle(3.0 * PI) - PI).abs() < 1e-12);
        assert!((wrap_angle(-PI) - PI).abs() < 1e-12);
        assert!((wrap_angle(0.5) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn probe_frequency() {
        let probe: Vec<ProbeSample> = (0..500)
            .map(|i| {
                let t = i as f64 * 0.05;
                ProbeSample { t, re: (2.3 * t).cos(), im: -(2.3 * t).sin() }
            })
            .collect();
        assert!((phase_regression_frequency(&probe) - 2.3).abs() < 1e-12);
    }
}
