//! Uniform evaluation of any body: closed form when one exists, quadrature otherwise.

use std::f64::consts::FRAC_PI_2;

use crate::closed_form;
use crate::error::Result;
use crate::geometry::{AtomConfiguration, BodyGeometry, BodyShape, EnergyDecomposition};
use crate::oracle;
use crate::quad::Tolerance;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    ClosedForm,
    Quadrature,
}

impl Method {
    pub fn name(&self) -> &'static str {
        match self {
            Method::ClosedForm => "closed-form",
            Method::Quadrature => "quadrature",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    /// Zero for closed forms.
    pub error_estimate: f64,
    pub method: Method,
}

impl Estimate {
    fn exact(value: f64) -> Self {
        Self {
            value,
            error_estimate: 0.0,
            method: Method::ClosedForm,
        }
    }
}

/// Reduced energy of the atom at `cfg` in the field of `geometry`.
pub fn energy(geometry: &BodyGeometry, cfg: &AtomConfiguration, tol: Tolerance) -> Result<Estimate> {
    if geometry.has_closed_form() {
        return Ok(Estimate::exact(closed_form::decompose(geometry, cfg.h_hat)?.at(cfg.theta)));
    }
    let q = match geometry.shape {
        BodyShape::Ring => oracle::ring_energy_quadrature(cfg, &geometry.polarization, tol)?,
        BodyShape::Annulus { b_hat } => {
            oracle::annulus_energy_quadrature(cfg, &geometry.polarization, b_hat, tol)?
        }
        BodyShape::Plate => {
            oracle::annulus_energy_quadrature(cfg, &geometry.polarization, f64::INFINITY, tol)?
        }
    };
    Ok(Estimate {
        value: q.value,
        error_estimate: q.error_estimate,
        method: Method::Quadrature,
    })
}

/// Reduced axial force `−∂Ê/∂ĥ`.
pub fn force(geometry: &BodyGeometry, cfg: &AtomConfiguration, tol: Tolerance) -> Result<Estimate> {
    if geometry.has_closed_form() {
        return Ok(Estimate::exact(
            closed_form::decompose_force(geometry, cfg.h_hat)?.at(cfg.theta),
        ));
    }
    let q = match geometry.shape {
        BodyShape::Ring => oracle::ring_force_quadrature(cfg, &geometry.polarization, tol)?,
        BodyShape::Annulus { b_hat } => {
            oracle::annulus_force_quadrature(cfg, &geometry.polarization, b_hat, tol)?
        }
        BodyShape::Plate => {
            oracle::annulus_force_quadrature(cfg, &geometry.polarization, f64::INFINITY, tol)?
        }
    };
    Ok(Estimate {
        value: q.value,
        error_estimate: q.error_estimate,
        method: Method::Quadrature,
    })
}

/// Energy parts at `h_hat`; for quadrature bodies they come from θ = 0 and θ = π/2.
///
/// The returned error bound applies to each part.
pub fn decomposition(
    geometry: &BodyGeometry,
    h_hat: f64,
    tol: Tolerance,
) -> Result<(EnergyDecomposition, f64, Method)> {
    if geometry.has_closed_form() {
        return Ok((closed_form::decompose(geometry, h_hat)?, 0.0, Method::ClosedForm));
    }
    let parallel = energy(geometry, &AtomConfiguration::new(h_hat, 0.0)?, tol)?;
    let perpendicular = energy(geometry, &AtomConfiguration::new(h_hat, FRAC_PI_2)?, tol)?;
    Ok((
        EnergyDecomposition::from_axis_energies(parallel.value, perpendicular.value),
        0.5 * (parallel.error_estimate + perpendicular.error_estimate),
        Method::Quadrature,
    ))
}

/// Force parts at `h_hat`, same conventions as [`decomposition`].
pub fn force_decomposition(
    geometry: &BodyGeometry,
    h_hat: f64,
    tol: Tolerance,
) -> Result<(EnergyDecomposition, f64, Method)> {
    if geometry.has_closed_form() {
        return Ok((
            closed_form::decompose_force(geometry, h_hat)?,
            0.0,
            Method::ClosedForm,
        ));
    }
    let parallel = force(geometry, &AtomConfiguration::new(h_hat, 0.0)?, tol)?;
    let perpendicular = force(geometry, &AtomConfiguration::new(h_hat, FRAC_PI_2)?, tol)?;
    Ok((
        EnergyDecomposition::from_axis_energies(parallel.value, perpendicular.value),
        0.5 * (parallel.error_estimate + perpendicular.error_estimate),
        Method::Quadrature,
    ))
}
