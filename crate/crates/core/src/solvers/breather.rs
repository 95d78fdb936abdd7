use crate::grid::{sech, ComplexField, Grid1D};
use num_complex::Complex64;

/// Moving breather of the cubic NLS,
/// `a exp(i v z / 2 + i (a^2 - v^2/4) t) sech(a (z - v t - z0))`.
pub fn nls_breather_exact(z: f64, t: f64, a: f64, v: f64, z0: f64) -> Complex64 {
    let phase = v * z / 2.0 + (a * a - v * v / 4.0) * t;
    Complex64::from_polar(a * sech(a * (z - v * t - z0)), phase)
}

/// The breather sampled on `grid`, with the envelope placed on the periodic
/// image nearest the grid centre so that a packet that has crossed the
/// boundary is compared against the right copy.
pub fn breather_field(grid: &Grid1D, t: f64, a: f64, v: f64, z0: f64) -> ComplexField {
    let mid = 0.5 * (grid.z_min() + grid.z_max());
    let values = grid
        .points()
        .map(|z| {
            let center = grid.nearest_image(z0 + v * t, mid);
            let phase = v * z / 2.0 + (a * a - v * v / 4.0) * t;
            let dist = grid.nearest_image(z - center, 0.0);
            Complex64::from_polar(a * sech(a * dist), phase)
        })
        .collect();
    ComplexField::new(*grid, values).expect("breather samples are finite")
}
