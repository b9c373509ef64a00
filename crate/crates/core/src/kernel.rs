//! Retarded point–point Casimir-Polder kernel.
//!
//! Two dipoles with static polarizabilities `α1`, `α2` separated by `r n`
//! interact with energy (ħ = c = 1)
//!
//! ```text
//! E = −[13 tr(α1·α2) − 28 n·(α1·α2 + α2·α1)·n + 63 (n·α1·n)(n·α2·n)] / (32π² r⁷)
//! ```
//!
//! The integer coefficients are `4·I_uu`, `4·I_uv`, `4·I_vv`, the frequency
//! integrals of the free Green dyadic's scalar functions. The prefactor is
//! normalized so that integrating the kernel over a ring of unit radius
//! reproduces the ring energy with scale `α1 σ_z / (64π)`. The literal
//! frequency integral ([`cp_point_kernel_zeta`]) is smaller by the constant
//! [`ZETA_TO_CLOSED_RATIO`].

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::quad::{adaptive_quad, Tolerance};
use crate::tensor::{PolarizabilityTensor, Vec3};

/// `1 / (32π²)`
pub const KERNEL_PREFACTOR: f64 = 1.0 / (32.0 * PI * PI);

/// Ratio of the literal frequency-integrated energy to [`cp_point_kernel`]: `1/(4π)`.
pub const ZETA_TO_CLOSED_RATIO: f64 = 1.0 / (4.0 * PI);

/// Scalar functions of the free Green dyadic, `u(x) = 1 + x + x²`, `v(x) = 3 + 3x + x²`.
pub fn green_dyadic_scalars(x: f64) -> (f64, f64) {
    (1.0 + x + x * x, 3.0 + 3.0 * x + x * x)
}

/// `∫₀^∞ e^{−2x} u²`, `∫₀^∞ e^{−2x} u v`, `∫₀^∞ e^{−2x} v²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RetardationCoefficients {
    pub uu: f64,
    pub uv: f64,
    pub vv: f64,
}

impl RetardationCoefficients {
    pub const EXACT: RetardationCoefficients = RetardationCoefficients {
        uu: 13.0 / 4.0,
        uv: 7.0,
        vv: 63.0 / 4.0,
    };

    /// Integer kernel coefficients `(13, 28, 63)` as `4·(I_uu, I_uv, I_vv)`.
    pub fn kernel_coefficients(&self) -> (f64, f64, f64) {
        (4.0 * self.uu, 4.0 * self.uv, 4.0 * self.vv)
    }
}

/// Integrates the three retardation integrals numerically and checks them
/// against the exact rationals `13/4`, `7`, `63/4`.
pub fn retardation_integrals(tol: f64) -> Result<RetardationCoefficients> {
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
    }
    let qt = Tolerance::new(tol * 0.1, tol * 0.1);
    let integrate = |g: fn(f64, f64) -> f64, exact: f64| -> Result<f64> {
        let r = adaptive_quad(
            |x| {
                let (u, v) = green_dyadic_scalars(x);
                (-2.0 * x).exp() * g(u, v)
            },
            0.0,
            f64::INFINITY,
            qt,
        )?;
        let miss = (r.value - exact).abs();
        if miss > tol {
            return Err(Error::QuadratureNonConvergence {
                value: r.value,
                error_estimate: miss.max(r.error_estimate),
                evaluations: r.evaluations,
            });
        }
        Ok(r.value)
    };
    let exact = RetardationCoefficients::EXACT;
    Ok(RetardationCoefficients {
        uu: integrate(|u, _| u * u, exact.uu)?,
        uv: integrate(|u, v| u * v, exact.uv)?,
        vv: integrate(|_, v| v * v, exact.vv)?,
    })
}

fn separation(r_vec: Vec3) -> Result<(f64, Vec3)> {
    let r = r_vec.norm();
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::Domain(format!(
            "point separation must be finite and non-zero, got {r_vec:?}"
        )));
    }
    Ok((r, r_vec * (1.0 / r)))
}

/// Angular bracket `13 tr(α1α2) − 28 n·{α1,α2}·n + 63 (nα1n)(nα2n)` for unit `n`.
pub fn angular_bracket(a1: &PolarizabilityTensor, a2: &PolarizabilityTensor, n: Vec3) -> f64 {
    13.0 * a1.contract(a2) - 28.0 * a1.anticommutator_form(a2, n)
        + 63.0 * a1.quadratic_form(n) * a2.quadratic_form(n)
}

/// Retarded point–point energy for separation vector `r_vec` (either sign).
pub fn cp_point_kernel(
    a1: &PolarizabilityTensor,
    a2: &PolarizabilityTensor,
    r_vec: Vec3,
) -> Result<f64> {
    let (r, n) = separation(r_vec)?;
    Ok(-KERNEL_PREFACTOR * angular_bracket(a1, a2, n) / r.powi(7))
}

/// Gradient of [`cp_point_kernel`] with respect to `r_vec`.
pub fn cp_point_kernel_gradient(
    a1: &PolarizabilityTensor,
    a2: &PolarizabilityTensor,
    r_vec: Vec3,
) -> Result<Vec3> {
    let (r, _) = separation(r_vec)?;
    // E = −K [13 T r⁻⁷ − 28 (r·S·r) r⁻⁹ + 63 (r·A·r)(r·B·r) r⁻¹¹] with unnormalized r.
    let r2 = r * r;
    let t = a1.contract(a2);
    let ar = a1.apply(r_vec);
    let br = a2.apply(r_vec);
    let s_r = a1.apply(br) + a2.apply(ar);
    let rsr = r_vec.dot(s_r);
    let rar = r_vec.dot(ar);
    let rbr = r_vec.dot(br);
    let r9 = r.powi(9);
    let r11 = r9 * r2;
    let r13 = r11 * r2;

    let g_iso = r_vec * (-7.0 * 13.0 * t / r9);
    let g_mix = (s_r * (2.0 / r9) - r_vec * (9.0 * rsr / r11)) * (-28.0);
    let g_axial = (ar * (2.0 * rbr) + br * (2.0 * rar)) * (63.0 / r11)
        - r_vec * (63.0 * 11.0 * rar * rbr / r13);
    Ok((g_iso + g_mix + g_axial) * (-KERNEL_PREFACTOR))
}

type Dense = [[f64; 3]; 3];

fn dense(t: &PolarizabilityTensor) -> Dense {
    [[t.xx, t.xy, t.xz], [t.xy, t.yy, t.yz], [t.xz, t.yz, t.zz]]
}

fn matmul(a: &Dense, b: &Dense) -> Dense {
    let mut out = [[0.0; 3]; 3];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

/// Free Green dyadic `Γ₀(r; iζ)` as a dense matrix.
fn green_dyadic(r: f64, n: Vec3, zeta: f64) -> Dense {
    let x = zeta.abs() * r;
    let (u, v) = green_dyadic_scalars(x);
    let pre = (-x).exp() / (4.0 * PI * r * r * r);
    let nn = [n.x, n.y, n.z];
    let mut g = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let delta = if i == j { 1.0 } else { 0.0 };
            g[i][j] = pre * (-u * delta + v * nn[i] * nn[j]);
        }
    }
    g
}

/// Oracle path: the energy `−½ ∫ dζ/2π Tr[Γ₀ α1 Γ₀ α2]` by direct numerical
/// frequency quadrature with dense matrices.
///
/// Equals `ZETA_TO_CLOSED_RATIO * cp_point_kernel(..)`.
pub fn cp_point_kernel_zeta(
    a1: &PolarizabilityTensor,
    a2: &PolarizabilityTensor,
    r_vec: Vec3,
    tol: f64,
) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
    }
    let (r, n) = separation(r_vec)?;
    let (d1, d2) = (dense(a1), dense(a2));
    let trace_at = |zeta: f64| {
        let g = green_dyadic(r, n, zeta);
        let m = matmul(&matmul(&matmul(&g, &d1), &g), &d2);
        m[0][0] + m[1][1] + m[2][2]
    };
    // Scale so the dominant ζ ~ 1/r region sits near the origin of the map.
    let res = adaptive_quad(
        |s| trace_at(s / r) / r,
        0.0,
        f64::INFINITY,
        // Below ~1e-13 the request would sit under the rounding floor.
        Tolerance::new((tol * 1e-2).max(1e-13), 0.0),
    )?;
    // The integrand is even in ζ: ∫_{−∞}^{∞} = 2 ∫₀^∞.
    Ok(-0.5 * 2.0 * res.value / (2.0 * PI))
}
