//! Retarded Casimir-Polder interaction of an anisotropically polarizable atom
//! on the symmetry axis of a ring, an annular disc or an apertured plate.
//!
//! Everything is in reduced units: `ħ = c = 1`, lengths in units of the inner
//! radius `a`, and energies in units of the body's scale
//! ([`geometry::RING_ENERGY_SCALE`], [`geometry::DISC_ENERGY_SCALE`]).
//! Orientation angles are radians.

pub mod analysis;
pub mod body;
pub mod closed_form;
pub mod error;
pub mod geometry;
pub mod kernel;
pub mod oracle;
pub mod quad;
pub mod roots;
pub mod tensor;

pub use error::{Error, Result};
pub use geometry::{AtomConfiguration, BodyGeometry, BodyShape, EnergyDecomposition, Polarization};
pub use quad::{QuadratureResult, Tolerance};
pub use tensor::{orientation_vector, PolarizabilityTensor, Vec3};
