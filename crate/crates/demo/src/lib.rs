//! Browser bindings for the axial Casimir-Polder model. Every export takes a
//! body name, an outer radius (ignored unless the body is an annulus) and a
//! polarization name, and returns plain numbers so the page can draw them.

use casimir_core::analysis::{
    body_repulsion_windows, default_scan_limit, repulsion_windows as ring_windows, torsion_free_heights,
};
use casimir_core::body;
use casimir_core::{AtomConfiguration, BodyGeometry, BodyShape, Polarization, Tolerance};
use wasm_bindgen::prelude::*;

/// Looser than the CLI default; the page redraws on every input change.
fn demo_tol() -> Tolerance {
    Tolerance::new(1e-7, 1e-12)
}

type DemoResult<T> = Result<T, String>;

pub fn geometry(body: &str, b_hat: f64, pol: &str) -> DemoResult<BodyGeometry> {
    let polarization = match pol {
        "axial" => Polarization::Axial,
        "radial" => Polarization::Radial,
        "azimuthal" => Polarization::Azimuthal,
        other => return Err(format!("unknown polarization '{other}'")),
    };
    let shape = match body {
        "ring" => BodyShape::Ring,
        "plate" => BodyShape::Plate,
        "annulus" => BodyShape::annulus(b_hat).map_err(|e| e.to_string())?,
        other => return Err(format!("unknown body '{other}'")),
    };
    BodyGeometry::new(shape, polarization).map_err(|e| e.to_string())
}

/// `count` evenly spaced heights on `[0, h_max]`.
pub fn heights(h_max: f64, count: usize) -> DemoResult<Vec<f64>> {
    if !(h_max > 0.0 && h_max.is_finite()) || count < 2 {
        return Err(format!("need h_max > 0 and at least two points, got {h_max}, {count}"));
    }
    Ok((0..count).map(|k| h_max * k as f64 / (count - 1) as f64).collect())
}

pub fn energies(geometry: &BodyGeometry, theta_deg: f64, grid: &[f64]) -> DemoResult<Vec<f64>> {
    grid.iter()
        .map(|&h| {
            let cfg = AtomConfiguration::from_degrees(h, theta_deg).map_err(|e| e.to_string())?;
            body::energy(geometry, &cfg, demo_tol())
                .map(|e| e.value)
                .map_err(|e| e.to_string())
        })
        .collect()
}

pub fn delta_es(geometry: &BodyGeometry, grid: &[f64]) -> DemoResult<Vec<f64>> {
    grid.iter()
        .map(|&h| {
            body::decomposition(geometry, h, demo_tol())
                .map(|(d, _, _)| d.delta_e())
                .map_err(|e| e.to_string())
        })
        .collect()
}

/// Repulsion windows as `[lo₀, hi₀, lo₁, hi₁, …]`.
pub fn windows(geometry: &BodyGeometry, theta_deg: f64, h_max: f64) -> DemoResult<Vec<f64>> {
    let theta = theta_deg.to_radians();
    let found = if geometry.shape == BodyShape::Ring && geometry.polarization == Polarization::Axial {
        ring_windows(theta)
            .into_iter()
            .filter(|w| w.lo < h_max)
            .collect()
    } else {
        body_repulsion_windows(geometry, theta, h_max, h_max / 500.0, demo_tol()).map_err(|e| e.to_string())?
    };
    Ok(found.iter().flat_map(|w| [w.lo, w.hi]).collect())
}

/// Reduced energy Ê(ĥ) at a fixed orientation, one value per height of
/// `heights(h_max, count)`.
#[wasm_bindgen]
pub fn energy_curve(
    body: &str,
    b_hat: f64,
    pol: &str,
    theta_deg: f64,
    h_max: f64,
    count: usize,
) -> Result<Vec<f64>, JsError> {
    let g = geometry(body, b_hat, pol).map_err(|e| JsError::new(&e))?;
    let grid = heights(h_max, count).map_err(|e| JsError::new(&e))?;
    energies(&g, theta_deg, &grid).map_err(|e| JsError::new(&e))
}

/// ΔE(ĥ) = E(0°) − E(90°) on the same grid as [`energy_curve`].
#[wasm_bindgen]
pub fn delta_e_curve(body: &str, b_hat: f64, pol: &str, h_max: f64, count: usize) -> Result<Vec<f64>, JsError> {
    let g = geometry(body, b_hat, pol).map_err(|e| JsError::new(&e))?;
    let grid = heights(h_max, count).map_err(|e| JsError::new(&e))?;
    delta_es(&g, &grid).map_err(|e| JsError::new(&e))
}

/// Heights at which the energy does not depend on orientation.
#[wasm_bindgen]
pub fn torsion_free(body: &str, b_hat: f64, pol: &str) -> Result<Vec<f64>, JsError> {
    let g = geometry(body, b_hat, pol).map_err(|e| JsError::new(&e))?;
    torsion_free_heights(&g, default_scan_limit(&g), demo_tol()).map_err(|e| JsError::new(&e.to_string()))
}

/// Height intervals with an outward force, flattened as `[lo, hi, …]`.
#[wasm_bindgen]
pub fn repulsion(body: &str, b_hat: f64, pol: &str, theta_deg: f64, h_max: f64) -> Result<Vec<f64>, JsError> {
    let g = geometry(body, b_hat, pol).map_err(|e| JsError::new(&e))?;
    windows(&g, theta_deg, h_max).map_err(|e| JsError::new(&e))
}
