//! Data behind the energy-curve and ΔE figures, and the golden copies they are
//! checked against.

use casimir_core::{BodyGeometry, Polarization, Tolerance};

use crate::args::CurveName;
use crate::commands::{delta_e_rows, grid_rows, Columns};
use crate::error::CliResult;
use crate::output::ResultRecord;

pub const FIG2_ANGLES_DEG: [f64; 4] = [0.0, 30.0, 60.0, 90.0];

/// `ĥ = 0, 0.01, …, 2.5`
pub fn fig2_heights() -> Vec<f64> {
    (0..=250).map(|k| k as f64 / 100.0).collect()
}

/// `ĥ = 0, 0.02, …, 5`
pub fn fig4_heights() -> Vec<f64> {
    (0..=250).map(|k| k as f64 / 50.0).collect()
}

/// Axial ring: energy, force and both parts at every angle and height.
pub fn fig2(tol: Tolerance) -> CliResult<Vec<ResultRecord>> {
    grid_rows(
        &BodyGeometry::ring(Polarization::Axial),
        &FIG2_ANGLES_DEG,
        &fig2_heights(),
        Columns::BOTH,
        tol,
    )
}

pub const FIG4_CURVES: [CurveName; 4] = [
    CurveName::RingAxial,
    CurveName::PlateAxial,
    CurveName::RingRadial,
    CurveName::PlateRadial,
];

pub fn curve_geometry(curve: CurveName) -> BodyGeometry {
    match curve {
        CurveName::RingAxial => BodyGeometry::ring(Polarization::Axial),
        CurveName::PlateAxial => BodyGeometry::plate(Polarization::Axial),
        CurveName::RingRadial => BodyGeometry::ring(Polarization::Radial),
        CurveName::PlateRadial => BodyGeometry::plate(Polarization::Radial),
    }
}

pub fn curve_slug(curve: CurveName) -> &'static str {
    match curve {
        CurveName::RingAxial => "ring_axial",
        CurveName::PlateAxial => "plate_axial",
        CurveName::RingRadial => "ring_radial",
        CurveName::PlateRadial => "plate_radial",
    }
}

/// ΔE curve of one body: `e_iso` and `e_aniso` per height; ΔE = 2·e_aniso.
pub fn fig4(curve: CurveName, tol: Tolerance) -> CliResult<Vec<ResultRecord>> {
    Ok(delta_e_rows(&curve_geometry(curve), &fig4_heights(), tol)?
        .into_iter()
        .map(|r| r.record)
        .collect())
}

/// Every figure file as `(file name, rows)`.
pub fn all(tol: Tolerance) -> CliResult<Vec<(String, Vec<ResultRecord>)>> {
    let mut files = vec![("fig2_ring_axial.csv".to_string(), fig2(tol)?)];
    for curve in FIG4_CURVES {
        files.push((format!("fig4_{}.csv", curve_slug(curve)), fig4(curve, tol)?));
    }
    Ok(files)
}

/// Golden copies shipped with the crate, keyed by file name. Regenerate with
/// `casimir figure all --out-dir crates/cli/golden` and review the diff.
pub const GOLDEN: [(&str, &str); 5] = [
    ("fig2_ring_axial.csv", include_str!("../golden/fig2_ring_axial.csv")),
    ("fig4_ring_axial.csv", include_str!("../golden/fig4_ring_axial.csv")),
    ("fig4_plate_axial.csv", include_str!("../golden/fig4_plate_axial.csv")),
    ("fig4_ring_radial.csv", include_str!("../golden/fig4_ring_radial.csv")),
    ("fig4_plate_radial.csv", include_str!("../golden/fig4_plate_radial.csv")),
];

/// A parsed CSV row: the seven numeric columns (NaN when empty) and the flags.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvRow {
    pub values: [f64; 7],
    pub flags: String,
}

pub fn parse_csv(text: &str) -> Result<Vec<CsvRow>, String> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h == crate::output::CSV_HEADER => {}
        other => return Err(format!("unexpected header {other:?}")),
    }
    lines
        .enumerate()
        .map(|(n, line)| {
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 8 {
                return Err(format!("line {}: {} fields", n + 2, fields.len()));
            }
            let mut values = [f64::NAN; 7];
            for (slot, field) in values.iter_mut().zip(&fields[..7]) {
                if !field.is_empty() {
                    *slot = field
                        .parse()
                        .map_err(|e| format!("line {}: '{field}': {e}", n + 2))?;
                }
            }
            Ok(CsvRow {
                values,
                flags: fields[7].to_string(),
            })
        })
        .collect()
}

/// Outcome of comparing fresh figure data with a golden copy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GoldenComparison {
    /// Largest `|fresh − golden| / |golden|` over nonzero golden fields.
    pub worst_rel: f64,
    /// Fields outside `rel·|golden| + abs`.
    pub failures: usize,
}

/// Field-by-field comparison; `Err` when the files differ in shape, empty
/// fields or flags.
pub fn compare_to_golden(fresh: &str, golden: &str, rel: f64, abs: f64) -> Result<GoldenComparison, String> {
    let (a, b) = (parse_csv(fresh)?, parse_csv(golden)?);
    if a.len() != b.len() {
        return Err(format!("{} rows vs {} golden rows", a.len(), b.len()));
    }
    let mut out = GoldenComparison {
        worst_rel: 0.0,
        failures: 0,
    };
    for (n, (x, y)) in a.iter().zip(&b).enumerate() {
        if x.flags != y.flags {
            return Err(format!("row {}: flags '{}' vs golden '{}'", n + 1, x.flags, y.flags));
        }
        for (u, v) in x.values.iter().zip(&y.values) {
            if u.is_nan() != v.is_nan() {
                return Err(format!("row {}: empty-field mismatch", n + 1));
            }
            if u.is_nan() {
                continue;
            }
            let diff = (u - v).abs();
            if *v != 0.0 {
                out.worst_rel = out.worst_rel.max(diff / v.abs());
            }
            if diff > rel * v.abs() + abs {
                out.failures += 1;
            }
        }
    }
    Ok(out)
}

/// Heights at which `values` changes sign, by linear interpolation between
/// neighbouring grid points.
pub fn sign_changes(heights: &[f64], values: &[f64]) -> Vec<f64> {
    heights
        .windows(2)
        .zip(values.windows(2))
        .filter(|(_, v)| v[0] != 0.0 && v[1] != 0.0 && v[0].signum() != v[1].signum())
        .map(|(h, v)| h[0] + (h[1] - h[0]) * v[0] / (v[0] - v[1]))
        .collect()
}

/// Heights of interior local minima of a sampled curve.
pub fn local_minima(heights: &[f64], values: &[f64]) -> Vec<f64> {
    (1..values.len().saturating_sub(1))
        .filter(|&i| values[i] < values[i - 1] && values[i] <= values[i + 1])
        .map(|i| heights[i])
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_files_parse_with_fixed_header() {
        for (name, text) in GOLDEN {
            let rows = parse_csv(text).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert!(rows.len() > 200, "{name}");
        }
    }

    #[test]
    fn comparison_counts_fields_outside_tolerance() {
        let header = crate::output::CSV_HEADER;
        let a = format!("{header}\n1,,,2,,,,\n");
        let b = format!("{header}\n1,,,2.000000001,,,,\n");
        let c = compare_to_golden(&a, &b, 1e-10, 0.0).unwrap();
        assert_eq!(c.failures, 1);
        assert!((c.worst_rel - 5e-10).abs() < 1e-12);
        assert_eq!(compare_to_golden(&a, &a, 1e-10, 0.0).unwrap().failures, 0);
        let d = format!("{header}\n1,,,,,,,\n");
        assert!(compare_to_golden(&a, &d, 1e-10, 0.0).is_err());
    }

    #[test]
    fn sign_changes_interpolate() {
        let h = [0.0, 1.0, 2.0, 3.0];
        let v = [1.0, -1.0, -3.0, 1.0];
        assert_eq!(sign_changes(&h, &v), vec![0.5, 2.75]);
        assert_eq!(local_minima(&h, &v), vec![2.0]);
    }
}
