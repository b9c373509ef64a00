//! Analytic energies and forces for axial body polarization (`ẑẑ`).
//!
//! Reduced ring energy (scale `ħcα1σ/(64π a⁶)`):
//!
//! ```text
//! Ê = −[(26 + 3ĥ² + 40ĥ⁴) + (26 − 123ĥ² + 40ĥ⁴) cos 2θ] / (1 + ĥ²)^{11/2}
//! ```
//!
//! Reduced annulus energy (scale `ħcα1λ/(64π a⁵)`), `Ê = [G(b̂) − G(1)] / 5` with
//!
//! ```text
//! G(ρ) = [(26ρ⁴ + 17ĥ²ρ² + 26ĥ⁴) + (26ρ⁴ − 73ĥ²ρ² + 6ĥ⁴) cos 2θ] / (ρ² + ĥ²)^{9/2}
//! ```
//!
//! `G(∞) = 0` gives the apertured plate. `G′(ρ)/5` is exactly the ring energy
//! density at radius ρ, so the disc is a superposition of rings.
//!
//! Forces are `F̂ = −∂Ê/∂ĥ`; positive means away from the body plane for `ĥ > 0`.

use crate::error::{Error, Result};
use crate::geometry::{AtomConfiguration, BodyGeometry, BodyShape, EnergyDecomposition, Polarization};

/// Ring energy split into its θ-independent and `cos 2θ` parts.
pub fn ring_decomposition(h_hat: f64) -> EnergyDecomposition {
    let h2 = h_hat * h_hat;
    let h4 = h2 * h2;
    let denom = (1.0 + h2).powf(5.5);
    EnergyDecomposition {
        e_iso: -(26.0 + 3.0 * h2 + 40.0 * h4) / denom,
        e_aniso: -(26.0 - 123.0 * h2 + 40.0 * h4) / denom,
    }
}

pub fn ring_energy(cfg: &AtomConfiguration) -> f64 {
    ring_decomposition(cfg.h_hat).at(cfg.theta)
}

/// `−∂/∂ĥ` of [`ring_decomposition`], part by part.
pub fn ring_force_decomposition(h_hat: f64) -> EnergyDecomposition {
    let h2 = h_hat * h_hat;
    let h4 = h2 * h2;
    let denom = (1.0 + h2).powf(6.5);
    EnergyDecomposition {
        e_iso: h_hat * (-280.0 + 133.0 * h2 - 280.0 * h4) / denom,
        e_aniso: h_hat * (-532.0 + 1267.0 * h2 - 280.0 * h4) / denom,
    }
}

pub fn ring_force(cfg: &AtomConfiguration) -> f64 {
    ring_force_decomposition(cfg.h_hat).at(cfg.theta)
}

/// `G(ρ)/5` split into parts; zero at `ρ = ∞`.
fn disc_primitive(rho: f64, h_hat: f64) -> EnergyDecomposition {
    if rho.is_infinite() {
        return EnergyDecomposition {
            e_iso: 0.0,
            e_aniso: 0.0,
        };
    }
    let r2 = rho * rho;
    let r4 = r2 * r2;
    let h2 = h_hat * h_hat;
    let h4 = h2 * h2;
    let denom = 5.0 * (r2 + h2).powf(4.5);
    EnergyDecomposition {
        e_iso: (26.0 * r4 + 17.0 * h2 * r2 + 26.0 * h4) / denom,
        e_aniso: (26.0 * r4 - 73.0 * h2 * r2 + 6.0 * h4) / denom,
    }
}

/// `−∂/∂ĥ [G(ρ)/5]` split into parts; zero at `ρ = ∞`.
fn disc_force_primitive(rho: f64, h_hat: f64) -> EnergyDecomposition {
    if rho.is_infinite() {
        return EnergyDecomposition {
            e_iso: 0.0,
            e_aniso: 0.0,
        };
    }
    let r2 = rho * rho;
    let r4 = r2 * r2;
    let h2 = h_hat * h_hat;
    let h4 = h2 * h2;
    let denom = (r2 + h2).powf(5.5);
    EnergyDecomposition {
        e_iso: h_hat * (40.0 * r4 + 3.0 * h2 * r2 + 26.0 * h4) / denom,
        e_aniso: h_hat * (76.0 * r4 - 107.0 * h2 * r2 + 6.0 * h4) / denom,
    }
}

fn difference(outer: EnergyDecomposition, inner: EnergyDecomposition) -> EnergyDecomposition {
    EnergyDecomposition {
        e_iso: outer.e_iso - inner.e_iso,
        e_aniso: outer.e_aniso - inner.e_aniso,
    }
}

fn check_outer_radius(b_hat: f64) -> Result<()> {
    if b_hat.is_nan() || b_hat < 1.0 {
        return Err(Error::Domain(format!(
            "outer radius must satisfy b_hat >= 1, got {b_hat}"
        )));
    }
    Ok(())
}

/// Annulus energy parts for outer radius `b_hat` (may be infinite).
pub fn annulus_decomposition(h_hat: f64, b_hat: f64) -> Result<EnergyDecomposition> {
    check_outer_radius(b_hat)?;
    Ok(difference(
        disc_primitive(b_hat, h_hat),
        disc_primitive(1.0, h_hat),
    ))
}

pub fn annulus_energy(cfg: &AtomConfiguration, b_hat: f64) -> Result<f64> {
    Ok(annulus_decomposition(cfg.h_hat, b_hat)?.at(cfg.theta))
}

pub fn annulus_force_decomposition(h_hat: f64, b_hat: f64) -> Result<EnergyDecomposition> {
    check_outer_radius(b_hat)?;
    Ok(difference(
        disc_force_primitive(b_hat, h_hat),
        disc_force_primitive(1.0, h_hat),
    ))
}

pub fn annulus_force(cfg: &AtomConfiguration, b_hat: f64) -> Result<f64> {
    Ok(annulus_force_decomposition(cfg.h_hat, b_hat)?.at(cfg.theta))
}

pub fn plate_decomposition(h_hat: f64) -> EnergyDecomposition {
    difference(
        disc_primitive(f64::INFINITY, h_hat),
        disc_primitive(1.0, h_hat),
    )
}

pub fn plate_energy(cfg: &AtomConfiguration) -> f64 {
    plate_decomposition(cfg.h_hat).at(cfg.theta)
}

pub fn plate_force(cfg: &AtomConfiguration) -> f64 {
    difference(
        disc_force_primitive(f64::INFINITY, cfg.h_hat),
        disc_force_primitive(1.0, cfg.h_hat),
    )
    .at(cfg.theta)
}

/// Ring energy density per unit outer radius, `∂Ê_annulus/∂b̂` at `b̂ = rho`.
///
/// This is the ring energy of radius `rho` with the per-length scale
/// `σ = λ dρ` substituted.
pub fn ring_density_at_radius(rho: f64, cfg: &AtomConfiguration) -> f64 {
    let r2 = rho * rho;
    let r4 = r2 * r2;
    let h2 = cfg.h_hat * cfg.h_hat;
    let h4 = h2 * h2;
    -rho
        * ((26.0 * r4 + 3.0 * h2 * r2 + 40.0 * h4)
            + (26.0 * r4 - 123.0 * h2 * r2 + 40.0 * h4) * cfg.cos_2theta())
        / (r2 + h2).powf(5.5)
}

/// Closed-form energy parts at height `h_hat`.
pub fn decompose(geometry: &BodyGeometry, h_hat: f64) -> Result<EnergyDecomposition> {
    if geometry.polarization != Polarization::Axial {
        return Err(Error::UnsupportedVariant(format!(
            "{} polarization",
            geometry.polarization
        )));
    }
    match geometry.shape {
        BodyShape::Ring => Ok(ring_decomposition(h_hat)),
        BodyShape::Annulus { b_hat } => annulus_decomposition(h_hat, b_hat),
        BodyShape::Plate => Ok(plate_decomposition(h_hat)),
    }
}

/// Closed-form force parts at height `h_hat`.
pub fn decompose_force(geometry: &BodyGeometry, h_hat: f64) -> Result<EnergyDecomposition> {
    if geometry.polarization != Polarization::Axial {
        return Err(Error::UnsupportedVariant(format!(
            "{} polarization",
            geometry.polarization
        )));
    }
    match geometry.shape {
        BodyShape::Ring => Ok(ring_force_decomposition(h_hat)),
        BodyShape::Annulus { b_hat } => annulus_force_decomposition(h_hat, b_hat),
        BodyShape::Plate => annulus_force_decomposition(h_hat, f64::INFINITY),
    }
}
