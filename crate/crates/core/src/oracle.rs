//! Body energies by direct integration of the point–point kernel.
//!
//! The ring is a line source on `ρ = 1, z = 0`; the annulus a sheet on
//! `1 ≤ ρ ≤ b̂`. Results are in the same reduced units as the closed forms,
//! so for axial polarization the two routes must agree. Radial, azimuthal and
//! constant-tensor patterns have no closed form and are only available here.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geometry::{AtomConfiguration, Polarization};
use crate::kernel::{cp_point_kernel, cp_point_kernel_gradient};
use crate::quad::{adaptive_quad, periodic_trapezoid, QuadratureResult, Tolerance};
use crate::tensor::{PolarizabilityTensor, Vec3};

/// Converts `∫ K` into reduced energy units (`64π`, the inverse of the closed-form prefactor).
const REDUCED_SCALE: f64 = 64.0 * PI;

const AZIMUTH_START_NODES: usize = 8;

/// Which quantity the azimuthal integral evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Observable {
    Energy,
    Force,
}

fn source_point(rho: f64, phi: f64) -> Vec3 {
    let (s, c) = phi.sin_cos();
    Vec3::new(rho * c, rho * s, 0.0)
}

fn ring_at_radius(
    atom: &PolarizabilityTensor,
    h_hat: f64,
    rho: f64,
    pattern: &Polarization,
    observable: Observable,
    tol: Tolerance,
) -> Result<QuadratureResult> {
    let position = Vec3::new(0.0, 0.0, h_hat);
    let mut failure = None;
    let integrand = |phi: f64| {
        let local = pattern.local_tensor(phi);
        let r_vec = position - source_point(rho, phi);
        let v = match observable {
            Observable::Energy => cp_point_kernel(atom, &local, r_vec),
            // Force on the atom along +z is −∂E/∂z_atom.
            Observable::Force => cp_point_kernel_gradient(atom, &local, r_vec).map(|g| -g.z),
        };
        v.unwrap_or_else(|e| {
            failure.get_or_insert(e);
            0.0
        })
    };
    let res = periodic_trapezoid(integrand, 2.0 * PI, AZIMUTH_START_NODES, tol)?;
    if let Some(e) = failure {
        return Err(e);
    }
    // Arc length element ρ dφ.
    Ok(res.scaled(REDUCED_SCALE * rho))
}

fn check_tolerance(rel_tol: f64) -> Result<()> {
    if !(rel_tol > 0.0) {
        return Err(Error::Domain(format!(
            "relative tolerance must be positive, got {rel_tol}"
        )));
    }
    Ok(())
}

/// Ring energy by azimuthal quadrature of the kernel.
pub fn ring_energy_quadrature(
    cfg: &AtomConfiguration,
    pattern: &Polarization,
    tol: Tolerance,
) -> Result<QuadratureResult> {
    check_tolerance(tol.rel)?;
    pattern.validate()?;
    ring_at_radius(&cfg.atom_tensor(), cfg.h_hat, 1.0, pattern, Observable::Energy, tol)
}

/// Ring force `−∂Ê/∂ĥ` by azimuthal quadrature of the kernel gradient.
pub fn ring_force_quadrature(
    cfg: &AtomConfiguration,
    pattern: &Polarization,
    tol: Tolerance,
) -> Result<QuadratureResult> {
    check_tolerance(tol.rel)?;
    pattern.validate()?;
    ring_at_radius(&cfg.atom_tensor(), cfg.h_hat, 1.0, pattern, Observable::Force, tol)
}

/// Ring with an arbitrary atom tensor and radius.
pub fn ring_energy_with_atom(
    atom: &PolarizabilityTensor,
    h_hat: f64,
    radius: f64,
    pattern: &Polarization,
    tol: Tolerance,
) -> Result<QuadratureResult> {
    check_tolerance(tol.rel)?;
    pattern.validate()?;
    atom.warn_if_unphysical("atom");
    ring_at_radius(atom, h_hat, radius, pattern, Observable::Energy, tol)
}

fn annulus_observable(
    atom: &PolarizabilityTensor,
    h_hat: f64,
    pattern: &Polarization,
    b_hat: f64,
    observable: Observable,
    tol: Tolerance,
) -> Result<QuadratureResult> {
    check_tolerance(tol.rel)?;
    pattern.validate()?;
    if b_hat.is_nan() || b_hat < 1.0 {
        return Err(Error::Domain(format!(
            "outer radius must satisfy b_hat >= 1, got {b_hat}"
        )));
    }
    if b_hat == 1.0 {
        return Ok(QuadratureResult {
            value: 0.0,
            error_estimate: 0.0,
            evaluations: 0,
        });
    }
    let inner_tol = Tolerance {
        rel: tol.rel * 0.1,
        abs: 0.0,
        ..tol
    };
    let mut inner_evals = 0usize;
    let mut inner_rel_err = 0.0f64;
    let mut failure = None;
    let outer = adaptive_quad(
        |rho| match ring_at_radius(atom, h_hat, rho, pattern, observable, inner_tol) {
            Ok(r) => {
                inner_evals += r.evaluations;
                if r.value != 0.0 {
                    inner_rel_err = inner_rel_err.max(r.error_estimate / r.value.abs());
                }
                r.value
            }
            Err(e) => {
                failure.get_or_insert(e);
                0.0
            }
        },
        1.0,
        b_hat,
        tol,
    )?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(QuadratureResult {
        value: outer.value,
        error_estimate: outer.error_estimate + inner_rel_err * (outer.value.abs() + outer.error_estimate),
        evaluations: inner_evals,
    })
}

/// Annulus energy by nested radial × azimuthal quadrature. `b_hat` may be
/// infinite (apertured plate).
pub fn annulus_energy_quadrature(
    cfg: &AtomConfiguration,
    pattern: &Polarization,
    b_hat: f64,
    tol: Tolerance,
) -> Result<QuadratureResult> {
    annulus_observable(&cfg.atom_tensor(), cfg.h_hat, pattern, b_hat, Observable::Energy, tol)
}

/// Annulus force `−∂Ê/∂ĥ` by nested quadrature of the kernel gradient.
pub fn annulus_force_quadrature(
    cfg: &AtomConfiguration,
    pattern: &Polarization,
    b_hat: f64,
    tol: Tolerance,
) -> Result<QuadratureResult> {
    annulus_observable(&cfg.atom_tensor(), cfg.h_hat, pattern, b_hat, Observable::Force, tol)
}

/// Annulus energy with an arbitrary atom tensor.
pub fn annulus_energy_with_atom(
    atom: &PolarizabilityTensor,
    h_hat: f64,
    pattern: &Polarization,
    b_hat: f64,
    tol: Tolerance,
) -> Result<QuadratureResult> {
    atom.warn_if_unphysical("atom");
    annulus_observable(atom, h_hat, pattern, b_hat, Observable::Energy, tol)
}
