//! Published reference values with the number of decimals they were quoted to.
//! A computed value conflicts with one of these when it differs by more than
//! half a unit in the last quoted digit.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Quoted {
    pub value: f64,
    pub decimals: u32,
}

impl Quoted {
    pub const fn new(value: f64, decimals: u32) -> Self {
        Self { value, decimals }
    }

    pub fn half_unit(&self) -> f64 {
        0.5 * 10f64.powi(-(self.decimals as i32))
    }

    /// True when `computed` is inconsistent with this quotation. The 1e-12
    /// slack absorbs the binary representation of the quoted decimal.
    pub fn conflicts_with(&self, computed: f64) -> bool {
        (computed - self.value).abs() > self.half_unit() + 1e-12
    }
}

/// Torsion-free heights (h1, h2) quoted for each body; `None` for a height
/// quoted as divergent.
pub fn torsion_free(body: &str, polarization: &str) -> Option<(Quoted, Option<Quoted>)> {
    let q = Quoted::new;
    match (body, polarization) {
        ("ring", "axial") => Some((q(0.48, 2), Some(q(1.69, 2)))),
        ("plate", "axial") => Some((q(0.60, 2), Some(q(3.44, 2)))),
        ("ring", "radial") => Some((q(0.36, 2), Some(q(3.45, 2)))),
        ("plate", "radial") => Some((q(0.44, 2), None)),
        _ => None,
    }
}

/// Short-range repulsion bound for the ring at θ = 90°: `|ĥ| < 0.47`.
pub const RING_SHORT_RANGE_EDGE: Quoted = Quoted::new(0.47, 2);

/// Intermediate repulsion range for the ring at θ = 0, as stated in the text.
pub const RING_INTERMEDIATE_WINDOW_TEXT: (Quoted, Quoted) =
    (Quoted::new(1.24, 2), Quoted::new(1.41, 2));

/// Critical angles in degrees: short-range bounds and the intermediate bound.
pub const CRITICAL_ANGLE_LO: Quoted = Quoted::new(60.88, 2);
pub const CRITICAL_ANGLE_HI: Quoted = Quoted::new(119.12, 2);
pub const CRITICAL_ANGLE_INTERMEDIATE: Quoted = Quoted::new(13.27, 2);

/// Critical outer radius of the annulus per orientation in degrees.
pub const CRITICAL_RADII: [(f64, Quoted); 4] = [
    (0.0, Quoted::new(1.6505, 4)),
    (6.0, Quoted::new(1.559, 3)),
    (9.0, Quoted::new(1.4379, 4)),
    (12.0, Quoted::new(1.2323, 4)),
];

pub fn critical_radius(theta_deg: f64) -> Option<Quoted> {
    CRITICAL_RADII
        .iter()
        .find(|(t, _)| (t - theta_deg.abs()).abs() < 1e-12)
        .map(|(_, q)| *q)
}

/// Machine-cycle energy at the first torsion-free height of the ring.
pub const CYCLE_TORSION_FREE_ENERGY: f64 = -9.2832;
