//! Small fixed-size vector and symmetric tensor algebra.

use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const X: Vec3 = Vec3::new(1.0, 0.0, 0.0);
    pub const Y: Vec3 = Vec3::new(0.0, 1.0, 0.0);
    pub const Z: Vec3 = Vec3::new(0.0, 0.0, 1.0);

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn dot(self, other: Vec3) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// Unit vector along `self`; `None` for the zero vector.
    pub fn normalized(self) -> Option<Vec3> {
        let n = self.norm();
        (n > 0.0 && n.is_finite()).then(|| self * (1.0 / n))
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, k: f64) -> Vec3 {
        Vec3::new(self.x * k, self.y * k, self.z * k)
    }
}

/// Symmetric 3x3 static polarizability in reduced units.
///
/// Used for the atom (`α`), the ring per unit length (`σ`) and the disc per
/// unit area (`λ`). Only the six independent components are stored.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PolarizabilityTensor {
    pub xx: f64,
    pub yy: f64,
    pub zz: f64,
    pub xy: f64,
    pub xz: f64,
    pub yz: f64,
}

impl PolarizabilityTensor {
    pub const fn new(xx: f64, yy: f64, zz: f64, xy: f64, xz: f64, yz: f64) -> Self {
        Self {
            xx,
            yy,
            zz,
            xy,
            xz,
            yz,
        }
    }

    pub const fn zero() -> Self {
        Self::new(0.0, 0.0, 0.0, 0.0, 0.0, 0.0)
    }

    pub const fn identity() -> Self {
        Self::new(1.0, 1.0, 1.0, 0.0, 0.0, 0.0)
    }

    /// Rank-one tensor `d d` (single polarizable axis).
    pub fn uniaxial(d: Vec3) -> Self {
        Self::new(
            d.x * d.x,
            d.y * d.y,
            d.z * d.z,
            d.x * d.y,
            d.x * d.z,
            d.y * d.z,
        )
    }

    pub fn trace(&self) -> f64 {
        self.xx + self.yy + self.zz
    }

    pub fn apply(&self, v: Vec3) -> Vec3 {
        Vec3::new(
            self.xx * v.x + self.xy * v.y + self.xz * v.z,
            self.xy * v.x + self.yy * v.y + self.yz * v.z,
            self.xz * v.x + self.yz * v.y + self.zz * v.z,
        )
    }

    /// `v · T · v`
    pub fn quadratic_form(&self, v: Vec3) -> f64 {
        v.dot(self.apply(v))
    }

    /// `tr(A·B)`, i.e. the Frobenius inner product for symmetric tensors.
    pub fn contract(&self, other: &Self) -> f64 {
        self.xx * other.xx
            + self.yy * other.yy
            + self.zz * other.zz
            + 2.0 * (self.xy * other.xy + self.xz * other.xz + self.yz * other.yz)
    }

    /// `v · (A·B + B·A) · v = 2 (A v)·(B v)` for symmetric `A`, `B`.
    pub fn anticommutator_form(&self, other: &Self, v: Vec3) -> f64 {
        2.0 * self.apply(v).dot(other.apply(v))
    }

    pub fn scale(&self, k: f64) -> Self {
        Self::new(
            self.xx * k,
            self.yy * k,
            self.zz * k,
            self.xy * k,
            self.xz * k,
            self.yz * k,
        )
    }

    pub fn is_finite(&self) -> bool {
        [self.xx, self.yy, self.zz, self.xy, self.xz, self.yz]
            .iter()
            .all(|c| c.is_finite())
    }

    /// All principal minors non-negative (up to a relative slack).
    pub fn is_positive_semidefinite(&self) -> bool {
        let scale = [self.xx, self.yy, self.zz, self.xy, self.xz, self.yz]
            .iter()
            .fold(0.0f64, |m, c| m.max(c.abs()));
        let eps = 1e-12 * scale.max(f64::MIN_POSITIVE);
        let det = self.xx * (self.yy * self.zz - self.yz * self.yz)
            - self.xy * (self.xy * self.zz - self.yz * self.xz)
            + self.xz * (self.xy * self.yz - self.yy * self.xz);
        self.xx >= -eps
            && self.yy >= -eps
            && self.zz >= -eps
            && self.xx * self.yy - self.xy * self.xy >= -eps * scale
            && self.xx * self.zz - self.xz * self.xz >= -eps * scale
            && self.yy * self.zz - self.yz * self.yz >= -eps * scale
            && det >= -eps * scale * scale
    }

    /// Logs a warning when the tensor is not positive semi-definite.
    pub fn warn_if_unphysical(&self, label: &str) {
        if !self.is_positive_semidefinite() {
            log::warn!("{label} tensor is not positive semi-definite: {self:?}");
        }
    }
}

impl Add for PolarizabilityTensor {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(
            self.xx + o.xx,
            self.yy + o.yy,
            self.zz + o.zz,
            self.xy + o.xy,
            self.xz + o.xz,
            self.yz + o.yz,
        )
    }
}

/// Atom orientation `ê1 = sin θ x̂ + cos θ ẑ`, with θ measured from the symmetry axis.
///
/// The azimuthal plane is fixed to x–z; every body treated here is axially
/// symmetric so nothing depends on that choice.
pub fn orientation_vector(theta: f64) -> Vec3 {
    let (s, c) = theta.sin_cos();
    Vec3::new(s, 0.0, c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    #[test]
    fn orientation_examples() {
        let e = orientation_vector(0.0);
        assert_eq!(e, Vec3::Z);
        let e = orientation_vector(FRAC_PI_2);
        assert_abs_diff_eq!(e.x, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(e.z, 0.0, epsilon = 1e-15);
        let e = orientation_vector(FRAC_PI_4);
        assert_abs_diff_eq!(e.x, 0.5f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(e.z, 0.5f64.sqrt(), epsilon = 1e-15);
        for k in 0..50 {
            let t = -7.0 + 0.3 * k as f64;
            assert_abs_diff_eq!(orientation_vector(t).norm_sq(), 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn contractions_match_dense_products() {
        let a = PolarizabilityTensor::new(1.0, 2.0, 3.0, 0.5, -0.25, 0.125);
        let b = PolarizabilityTensor::new(-1.0, 0.5, 2.0, 0.3, 0.7, -0.2);
        let dense = |t: &PolarizabilityTensor| {
            [
                [t.xx, t.xy, t.xz],
                [t.xy, t.yy, t.yz],
                [t.xz, t.yz, t.zz],
            ]
        };
        let (da, db) = (dense(&a), dense(&b));
        let mut ab = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    ab[i][j] += da[i][k] * db[k][j];
                }
            }
        }
        let tr = ab[0][0] + ab[1][1] + ab[2][2];
        assert_abs_diff_eq!(a.contract(&b), tr, epsilon = 1e-14);

        let v = [0.3, -0.4, 0.5];
        let mut form = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                form += v[i] * (ab[i][j] + ab[j][i]) * v[j];
            }
        }
        let vv = Vec3::new(v[0], v[1], v[2]);
        assert_abs_diff_eq!(a.anticommutator_form(&b, vv), form, epsilon = 1e-14);
    }

    #[test]
    fn psd_detection() {
        assert!(PolarizabilityTensor::identity().is_positive_semidefinite());
        assert!(PolarizabilityTensor::uniaxial(orientation_vector(0.3)).is_positive_semidefinite());
        assert!(!PolarizabilityTensor::new(1.0, -1.0, 1.0, 0.0, 0.0, 0.0).is_positive_semidefinite());
        assert!(!PolarizabilityTensor::new(1.0, 1.0, 1.0, 2.0, 0.0, 0.0).is_positive_semidefinite());
    }
}
