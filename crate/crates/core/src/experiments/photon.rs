use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhotonRelations {
    pub f: f64,
    pub f0: f64,
    /// `f0^2 / f` (Hz).
    pub f_zigzag: f64,
    /// `h f0^2 / f` (J).
    pub e_zigzag: f64,
}

pub fn photon_relations(f: f64, f0: f64, constants: &PhysicalConstants) -> Result<PhotonRelations> {
    if !(f > 0.0) || !(f0 > 0.0) || !f.is_finite() || !f0.is_finite() {
        return Err(Error::Domain(format!(
            "photon frequencies must be positive, got f = {f}, f0 = {f0}"
        )));
    }
    let f_zigzag = f0 * f0 / f;
    Ok(PhotonRelations {
        f,
        f0,
        f_zigzag,
        e_zigzag: constants.h * f_zigzag,
    })
}
