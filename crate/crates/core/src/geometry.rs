//! Atom placement and body descriptions. All lengths are in units of the inner
//! radius `a`.

use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};
use crate::tensor::{orientation_vector, PolarizabilityTensor, Vec3};

/// Atom on the symmetry axis: reduced height `h/a` (signed) and the angle of
/// its polarizable axis from `ẑ`, in radians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AtomConfiguration {
    pub h_hat: f64,
    pub theta: f64,
}

impl AtomConfiguration {
    /// The angle is reduced into `[0, π)`; the energy has period π in θ.
    pub fn new(h_hat: f64, theta: f64) -> Result<Self> {
        if !h_hat.is_finite() || !theta.is_finite() {
            return Err(Error::Domain(format!(
                "height and angle must be finite (h_hat {h_hat}, theta {theta})"
            )));
        }
        Ok(Self {
            h_hat,
            theta: theta.rem_euclid(PI),
        })
    }

    pub fn from_degrees(h_hat: f64, theta_deg: f64) -> Result<Self> {
        Self::new(h_hat, theta_deg.to_radians())
    }

    pub fn cos_2theta(&self) -> f64 {
        (2.0 * self.theta).cos()
    }

    /// Single-axis atom tensor `ê1 ê1`.
    pub fn atom_tensor(&self) -> PolarizabilityTensor {
        PolarizabilityTensor::uniaxial(orientation_vector(self.theta))
    }

    pub fn position(&self) -> Vec3 {
        Vec3::new(0.0, 0.0, self.h_hat)
    }
}

/// Local polarizability pattern of the body.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Polarization {
    /// `ẑẑ`
    Axial,
    /// `ρ̂ρ̂`, rotating with the source point.
    Radial,
    /// `φ̂φ̂`, rotating with the source point.
    Azimuthal,
    /// Fixed Cartesian tensor; must be transversely isotropic about `ẑ`.
    Tensor(PolarizabilityTensor),
}

impl Polarization {
    /// Transversely isotropic tensor `t (x̂x̂ + ŷŷ) + l ẑẑ`.
    pub fn transverse_tensor(transverse: f64, longitudinal: f64) -> Self {
        Polarization::Tensor(PolarizabilityTensor::new(
            transverse,
            transverse,
            longitudinal,
            0.0,
            0.0,
            0.0,
        ))
    }

    /// Rejects fixed tensors that would break the axial symmetry of the body.
    pub fn validate(&self) -> Result<()> {
        if let Polarization::Tensor(t) = self {
            let scale = t.trace().abs().max(1.0);
            let asym = (t.xx - t.yy).abs() + t.xy.abs() + t.xz.abs() + t.yz.abs();
            if !t.is_finite() || asym > 1e-12 * scale {
                return Err(Error::Domain(format!(
                    "body tensor must be finite and transversely isotropic about the axis, got {t:?}"
                )));
            }
            t.warn_if_unphysical("body");
        }
        Ok(())
    }

    /// Body tensor at azimuth `phi` of the source point.
    pub fn local_tensor(&self, phi: f64) -> PolarizabilityTensor {
        let (s, c) = phi.sin_cos();
        match self {
            Polarization::Axial => PolarizabilityTensor::uniaxial(Vec3::Z),
            Polarization::Radial => PolarizabilityTensor::uniaxial(Vec3::new(c, s, 0.0)),
            Polarization::Azimuthal => PolarizabilityTensor::uniaxial(Vec3::new(-s, c, 0.0)),
            Polarization::Tensor(t) => *t,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Polarization::Axial => "axial",
            Polarization::Radial => "radial",
            Polarization::Azimuthal => "azimuthal",
            Polarization::Tensor(_) => "tensor",
        }
    }
}

impl fmt::Display for Polarization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Polarization::Tensor(t) => write!(f, "tensor(xx={},zz={})", t.xx, t.zz),
            other => f.write_str(other.name()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BodyShape {
    /// Thin ring of unit radius, polarizability per unit length.
    Ring,
    /// Annular disc `1 ≤ ρ ≤ b_hat`, polarizability per unit area.
    Annulus { b_hat: f64 },
    /// Infinite plate with a unit-radius circular aperture (`b_hat → ∞`).
    Plate,
}

impl BodyShape {
    pub fn annulus(b_hat: f64) -> Result<Self> {
        if b_hat.is_nan() || b_hat < 1.0 {
            return Err(Error::Domain(format!(
                "outer radius must satisfy b_hat >= 1, got {b_hat}"
            )));
        }
        Ok(BodyShape::Annulus { b_hat })
    }

    /// Outer radius; `None` for the ring, infinity for the plate.
    pub fn outer_radius(&self) -> Option<f64> {
        match self {
            BodyShape::Ring => None,
            BodyShape::Annulus { b_hat } => Some(*b_hat),
            BodyShape::Plate => Some(f64::INFINITY),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            BodyShape::Ring => "ring",
            BodyShape::Annulus { .. } => "annulus",
            BodyShape::Plate => "plate",
        }
    }

    /// Symbolic physical energy per unit reduced energy.
    pub fn energy_scale(&self) -> &'static str {
        match self {
            BodyShape::Ring => RING_ENERGY_SCALE,
            _ => DISC_ENERGY_SCALE,
        }
    }
}

/// Physical energy of one reduced unit for the ring.
pub const RING_ENERGY_SCALE: &str = "hbar*c*alpha_1*sigma/(64*pi*a^6)";
/// Physical energy of one reduced unit for the annulus and plate.
pub const DISC_ENERGY_SCALE: &str = "hbar*c*alpha_1*lambda/(64*pi*a^5)";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BodyGeometry {
    pub shape: BodyShape,
    pub polarization: Polarization,
}

impl BodyGeometry {
    pub fn new(shape: BodyShape, polarization: Polarization) -> Result<Self> {
        if let BodyShape::Annulus { b_hat } = shape {
            BodyShape::annulus(b_hat)?;
        }
        polarization.validate()?;
        Ok(Self {
            shape,
            polarization,
        })
    }

    pub fn ring(polarization: Polarization) -> Self {
        Self {
            shape: BodyShape::Ring,
            polarization,
        }
    }

    pub fn plate(polarization: Polarization) -> Self {
        Self {
            shape: BodyShape::Plate,
            polarization,
        }
    }

    pub fn annulus(b_hat: f64, polarization: Polarization) -> Result<Self> {
        Self::new(BodyShape::annulus(b_hat)?, polarization)
    }

    /// Closed forms exist only for axial polarization.
    pub fn has_closed_form(&self) -> bool {
        self.polarization == Polarization::Axial
    }
}

/// `E(θ) = e_iso + e_aniso cos 2θ` at fixed geometry and height.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyDecomposition {
    pub e_iso: f64,
    pub e_aniso: f64,
}

impl EnergyDecomposition {
    pub fn at(&self, theta: f64) -> f64 {
        self.e_iso + self.e_aniso * (2.0 * theta).cos()
    }

    /// From energies at θ = 0 and θ = π/2.
    pub fn from_axis_energies(e_parallel: f64, e_perpendicular: f64) -> Self {
        Self {
            e_iso: 0.5 * (e_parallel + e_perpendicular),
            e_aniso: 0.5 * (e_parallel - e_perpendicular),
        }
    }

    /// `E(0) − E(π/2)`
    pub fn delta_e(&self) -> f64 {
        2.0 * self.e_aniso
    }

    /// Angle in `{0, π/2}` minimizing the energy; `None` at a torsion-free height.
    pub fn preferred_orientation(&self) -> Option<f64> {
        if self.e_aniso < 0.0 {
            Some(0.0)
        } else if self.e_aniso > 0.0 {
            Some(PI / 2.0)
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn angle_reduced_mod_pi() {
        let c = AtomConfiguration::new(0.5, 3.0 * PI / 2.0).unwrap();
        assert!((c.theta - PI / 2.0).abs() < 1e-15);
        let c = AtomConfiguration::new(0.5, -PI / 4.0).unwrap();
        assert!((c.theta - 3.0 * PI / 4.0).abs() < 1e-15);
        assert!(AtomConfiguration::new(f64::NAN, 0.0).is_err());
        assert!(AtomConfiguration::new(0.0, f64::INFINITY).is_err());
    }

    #[test]
    fn annulus_requires_outer_radius_beyond_inner() {
        assert!(BodyShape::annulus(0.99).is_err());
        assert!(BodyShape::annulus(f64::NAN).is_err());
        assert!(BodyShape::annulus(1.0).is_ok());
    }

    #[test]
    fn non_axisymmetric_tensor_rejected() {
        let bad = Polarization::Tensor(PolarizabilityTensor::new(1.0, 2.0, 1.0, 0.0, 0.0, 0.0));
        assert!(BodyGeometry::new(BodyShape::Ring, bad).is_err());
        let bad = Polarization::Tensor(PolarizabilityTensor::new(1.0, 1.0, 1.0, 0.0, 0.3, 0.0));
        assert!(bad.validate().is_err());
        assert!(Polarization::transverse_tensor(1.0, 2.0).validate().is_ok());
    }

    #[test]
    fn local_patterns_sum_to_identity() {
        for k in 0..16 {
            let phi = 0.4 * k as f64;
            let sum = Polarization::Axial.local_tensor(phi)
                + Polarization::Radial.local_tensor(phi)
                + Polarization::Azimuthal.local_tensor(phi);
            let id = PolarizabilityTensor::identity();
            assert!((sum.xx - id.xx).abs() < 1e-15);
            assert!((sum.yy - id.yy).abs() < 1e-15);
            assert!((sum.zz - id.zz).abs() < 1e-15);
            assert!(sum.xy.abs() < 1e-15);
        }
    }
}
