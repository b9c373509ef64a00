//! Command implementations. Each returns data; writing is left to the caller.

use std::f64::consts::FRAC_PI_2;

use casimir_core::analysis::{
    body_repulsion_windows, critical_angles, critical_outer_radius, default_scan_limit,
    machine_cycle, plate_torsion_free, ring_repulsion_report, ring_torsion_free,
    torsion_free_heights, RepulsionWindow,
};
use casimir_core::body::{self, Method};
use casimir_core::geometry::{DISC_ENERGY_SCALE, RING_ENERGY_SCALE};
use casimir_core::{BodyGeometry, BodyShape, EnergyDecomposition, Polarization, Tolerance};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::CliResult;
use crate::literature::{self, Quoted};
use crate::output::{Flag, Report, ResultRecord};
use crate::request::{geometry_json, SweepRequest};

/// Which columns a grid sweep fills.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Columns {
    pub energy: bool,
    pub force: bool,
}

impl Columns {
    pub const ENERGY: Columns = Columns {
        energy: true,
        force: false,
    };
    pub const FORCE: Columns = Columns {
        energy: false,
        force: true,
    };
    pub const BOTH: Columns = Columns {
        energy: true,
        force: true,
    };
}

struct HeightParts {
    energy: Option<(EnergyDecomposition, f64, Method)>,
    force: Option<(EnergyDecomposition, f64, Method)>,
}

fn b_hat_of(geometry: &BodyGeometry) -> Option<f64> {
    match geometry.shape {
        BodyShape::Annulus { b_hat } => Some(b_hat),
        _ => None,
    }
}

fn is_torsion_free(d: &EnergyDecomposition) -> bool {
    d.e_aniso.abs() <= 1e-9 * d.e_iso.abs().max(f64::MIN_POSITIVE)
}

/// Rows for every `(θ, ĥ)`, θ-major, in input order. Because every body is
/// axially symmetric, `E(θ) = e_iso + e_aniso cos 2θ`, so each height needs
/// only the two axis evaluations regardless of how many angles are asked for.
pub fn grid_rows(
    geometry: &BodyGeometry,
    theta_deg: &[f64],
    heights: &[f64],
    columns: Columns,
    tol: Tolerance,
) -> CliResult<Vec<ResultRecord>> {
    let parts: Vec<HeightParts> = heights
        .par_iter()
        .map(|&h| -> CliResult<HeightParts> {
            Ok(HeightParts {
                energy: if columns.energy {
                    Some(body::decomposition(geometry, h, tol)?)
                } else {
                    None
                },
                force: if columns.force {
                    Some(body::force_decomposition(geometry, h, tol)?)
                } else {
                    None
                },
            })
        })
        .collect::<CliResult<_>>()?;

    let mut rows = Vec::with_capacity(theta_deg.len() * heights.len());
    for &t in theta_deg {
        let theta = t.to_radians();
        for (&h, p) in heights.iter().zip(&parts) {
            let mut r = ResultRecord::at(h, Some(t), b_hat_of(geometry));
            if let Some((d, err, method)) = p.energy {
                r.energy_reduced = Some(d.at(theta));
                r.e_iso = Some(d.e_iso);
                r.e_aniso = Some(d.e_aniso);
                if method == Method::Quadrature {
                    r.energy_error = Some(2.0 * err);
                    r.flag(Flag::Quadrature);
                }
                if is_torsion_free(&d) {
                    r.flag(Flag::TorsionFree);
                }
            }
            if let Some((d, err, method)) = p.force {
                let f = d.at(theta);
                r.force_reduced = Some(f);
                if method == Method::Quadrature {
                    r.force_error = Some(2.0 * err);
                    r.flag(Flag::Quadrature);
                }
                if h != 0.0 && f * h.signum() > 0.0 {
                    r.flag(Flag::Repulsive);
                }
            }
            r.check_finite()?;
            rows.push(r);
        }
    }
    Ok(rows)
}

pub fn sweep(req: &SweepRequest, columns: Columns) -> CliResult<Vec<ResultRecord>> {
    grid_rows(&req.geometry, &req.theta_deg, &req.heights, columns, req.tol)
}

/// ΔE row: the shared record plus `delta_e = 2·e_aniso`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DeltaERow {
    #[serde(flatten)]
    pub record: ResultRecord,
    pub delta_e: f64,
}

/// One row per height with `e_iso`, `e_aniso` and `ΔE = E(0) − E(π/2)`.
pub fn delta_e_rows(geometry: &BodyGeometry, heights: &[f64], tol: Tolerance) -> CliResult<Vec<DeltaERow>> {
    heights
        .par_iter()
        .map(|&h| {
            let (d, err, method) = body::decomposition(geometry, h, tol)?;
            let mut r = ResultRecord::at(h, None, b_hat_of(geometry));
            r.e_iso = Some(d.e_iso);
            r.e_aniso = Some(d.e_aniso);
            if method == Method::Quadrature {
                r.energy_error = Some(err);
                r.flag(Flag::Quadrature);
            }
            if is_torsion_free(&d) {
                r.flag(Flag::TorsionFree);
            }
            r.check_finite()?;
            Ok(DeltaERow {
                record: r,
                delta_e: d.delta_e(),
            })
        })
        .collect()
}

fn energy_scale(geometry: &BodyGeometry) -> &'static str {
    geometry.shape.energy_scale()
}

fn quoted_json(q: Option<Quoted>) -> Value {
    match q {
        Some(q) => json!({ "value": q.value, "decimals": q.decimals }),
        None => Value::Null,
    }
}

pub fn sweep_report(command: &str, req: &SweepRequest, rows: &[ResultRecord]) -> Report {
    let flags: Vec<Flag> = rows.iter().flat_map(|r| r.flags.iter().copied()).collect();
    Report::new(
        command,
        req.inputs(),
        serde_json::to_value(rows).expect("records serialize"),
        req.tol,
        Some(energy_scale(&req.geometry)),
    )
    .with_flags(flags)
}

pub fn delta_e_report(geometry: &BodyGeometry, heights: &[f64], rows: &[DeltaERow], tol: Tolerance) -> Report {
    let flags: Vec<Flag> = rows.iter().flat_map(|r| r.record.flags.iter().copied()).collect();
    Report::new(
        "delta-e",
        json!({ "body": geometry_json(geometry), "h_hat": heights }),
        serde_json::to_value(rows).expect("records serialize"),
        tol,
        Some(energy_scale(geometry)),
    )
    .with_flags(flags)
}

/// Torsion-free heights with the route used to find them, residuals of the
/// orientation-dependent part, and any literature comparison.
pub fn torsion_free(geometry: &BodyGeometry, scan_max: Option<f64>, tol: Tolerance) -> CliResult<Report> {
    let scan_max = scan_max.unwrap_or_else(|| default_scan_limit(geometry));
    let (heights, method) = match (geometry.shape, geometry.polarization) {
        (BodyShape::Ring, Polarization::Axial) => {
            let s = ring_torsion_free();
            (vec![s.h1, s.h2], "algebraic")
        }
        (BodyShape::Plate, Polarization::Axial) => {
            let s = plate_torsion_free();
            (vec![s.h1, s.h2], "algebraic")
        }
        (_, Polarization::Axial) => (torsion_free_heights(geometry, scan_max, tol)?, "closed-form-scan"),
        _ => (torsion_free_heights(geometry, scan_max, tol)?, "quadrature-scan"),
    };
    let residuals = heights
        .iter()
        .map(|&h| Ok(body::decomposition(geometry, h, tol)?.0.e_aniso))
        .collect::<CliResult<Vec<f64>>>()?;

    let mut flags = Vec::new();
    if method == "quadrature-scan" {
        flags.push(Flag::Quadrature);
    }
    let quoted = literature::torsion_free(geometry.shape.name(), geometry.polarization.name());
    if let Some((q1, q2)) = quoted {
        let h1_conflict = heights.first().is_none_or(|h| q1.conflicts_with(*h));
        let h2_conflict = match (q2, heights.get(1)) {
            (Some(q), Some(h)) => q.conflicts_with(*h),
            (Some(_), None) => true,
            // Quoted as divergent: a finite second height inside the scan conflicts.
            (None, found) => found.is_some(),
        };
        if h1_conflict || h2_conflict {
            flags.push(Flag::LiteratureConflict);
        }
    }
    let results = json!({
        "h1": heights.first(),
        "h2": heights.get(1),
        "heights": heights,
        "e_aniso_at_heights": residuals,
        "method": method,
        "scan_max": scan_max,
        "quoted": quoted.map(|(q1, q2)| json!({
            "h1": quoted_json(Some(q1)),
            "h2": quoted_json(q2),
            "h2_divergent": q2.is_none(),
        })),
    });
    Ok(Report::new(
        "torsion-free",
        json!({ "body": geometry_json(geometry), "scan_max": scan_max }),
        results,
        tol,
        Some(energy_scale(geometry)),
    )
    .with_flags(flags))
}

fn windows_json(ws: &[RepulsionWindow]) -> Value {
    Value::Array(ws.iter().map(|w| json!({ "lo": w.lo, "hi": w.hi })).collect())
}

/// Repulsion windows per angle. The axial ring uses the algebraic condition
/// cross-checked by a force-sign scan; other bodies use the scan alone.
pub fn repulsion(
    geometry: &BodyGeometry,
    theta_deg: &[f64],
    step: f64,
    scan_max: f64,
    tol: Tolerance,
) -> CliResult<Report> {
    let ring_axial = geometry.shape == BodyShape::Ring && geometry.polarization == Polarization::Axial;
    let per_angle: Vec<(Value, Vec<Flag>)> = theta_deg
        .par_iter()
        .map(|&t| -> CliResult<(Value, Vec<Flag>)> {
            let theta = t.to_radians();
            let mut flags = Vec::new();
            if !ring_axial {
                let scanned = body_repulsion_windows(geometry, theta, scan_max, step, tol)?;
                if !geometry.has_closed_form() {
                    flags.push(Flag::Quadrature);
                }
                if !scanned.is_empty() {
                    flags.push(Flag::Repulsive);
                }
                let v = json!({
                    "theta_deg": t,
                    "windows": windows_json(&scanned),
                    "method": "force-sign-scan",
                });
                return Ok((v, flags));
            }
            let report = ring_repulsion_report(theta, step)?;
            if !report.algebraic.is_empty() {
                flags.push(Flag::Repulsive);
            }
            let folded = t.rem_euclid(180.0);
            let mut quoted = Value::Null;
            if folded.abs() < 1e-12 {
                let (lo, hi) = literature::RING_INTERMEDIATE_WINDOW_TEXT;
                let matches = report
                    .algebraic
                    .iter()
                    .any(|w| !lo.conflicts_with(w.lo) && !hi.conflicts_with(w.hi));
                if !matches {
                    flags.push(Flag::LiteratureConflict);
                }
                quoted = json!({ "lo": lo.value, "hi": hi.value, "decimals": lo.decimals });
            } else if (folded - 90.0).abs() < 1e-12 {
                let edge = literature::RING_SHORT_RANGE_EDGE;
                let matches = report.algebraic.iter().any(|w| w.lo == 0.0 && !edge.conflicts_with(w.hi));
                if !matches {
                    flags.push(Flag::LiteratureConflict);
                }
                quoted = json!({ "lo": 0.0, "hi": edge.value, "decimals": edge.decimals });
            }
            let v = json!({
                "theta_deg": t,
                "windows": windows_json(&report.algebraic),
                "scanned_windows": windows_json(&report.scanned),
                "scan_step": report.scan_step,
                "consistent": report.consistent,
                "method": "algebraic",
                "quoted": quoted,
            });
            Ok((v, flags))
        })
        .collect::<CliResult<_>>()?;
    let flags: Vec<Flag> = per_angle.iter().flat_map(|(_, f)| f.iter().copied()).collect();
    let results = Value::Array(per_angle.into_iter().map(|(v, _)| v).collect());
    Ok(Report::new(
        "repulsion",
        json!({
            "body": geometry_json(geometry),
            "theta_deg": theta_deg,
            "scan_step": step,
            "scan_max": scan_max,
        }),
        results,
        tol,
        Some(energy_scale(geometry)),
    )
    .with_flags(flags))
}

pub fn critical_angles_report() -> Report {
    let c = critical_angles();
    let (lo, hi, mid) = (c.lo.to_degrees(), c.hi.to_degrees(), c.intermediate.to_degrees());
    let pairs = [
        (lo, literature::CRITICAL_ANGLE_LO),
        (hi, literature::CRITICAL_ANGLE_HI),
        (mid, literature::CRITICAL_ANGLE_INTERMEDIATE),
    ];
    let conflict = pairs.iter().any(|(v, q)| q.conflicts_with(*v));
    Report::new(
        "critical-angles",
        json!({}),
        json!({
            "theta_lo_deg": lo,
            "theta_hi_deg": hi,
            "theta_intermediate_deg": mid,
            "method": "algebraic",
            "quoted": {
                "theta_lo_deg": quoted_json(Some(literature::CRITICAL_ANGLE_LO)),
                "theta_hi_deg": quoted_json(Some(literature::CRITICAL_ANGLE_HI)),
                "theta_intermediate_deg": quoted_json(Some(literature::CRITICAL_ANGLE_INTERMEDIATE)),
            },
        }),
        Tolerance::default(),
        None,
    )
    .with_flags(conflict.then_some(Flag::LiteratureConflict))
}

pub fn critical_radius(theta_deg: &[f64]) -> CliResult<Report> {
    let rows: Vec<(Value, bool)> = theta_deg
        .par_iter()
        .map(|&t| -> CliResult<(Value, bool)> {
            let r = critical_outer_radius(t.to_radians())?;
            let quoted = literature::critical_radius(t);
            let conflict = quoted.is_some_and(|q| q.conflicts_with(r.b_star));
            Ok((
                json!({
                    "theta_deg": t,
                    "b_star": r.b_star,
                    "h_tangent": r.h_tangent,
                    "method": "golden-section + bisection",
                    "quoted": quoted_json(quoted),
                }),
                conflict,
            ))
        })
        .collect::<CliResult<_>>()?;
    let conflict = rows.iter().any(|(_, c)| *c);
    Ok(Report::new(
        "critical-radius",
        json!({ "theta_deg": theta_deg, "body": { "shape": "annulus", "polarization": "axial" } }),
        Value::Array(rows.into_iter().map(|(v, _)| v).collect()),
        Tolerance::default(),
        Some(DISC_ENERGY_SCALE),
    )
    .with_flags(conflict.then_some(Flag::LiteratureConflict)))
}

pub fn cycle_report() -> Report {
    let c = machine_cycle();
    let points: Vec<Value> = c
        .points
        .iter()
        .map(|p| {
            json!({
                "label": p.label.to_string(),
                "h_hat": p.h_hat,
                "theta_deg": p.theta.to_degrees(),
                "energy_reduced": p.energy,
            })
        })
        .collect();
    let legs: Vec<Value> = c
        .legs
        .iter()
        .map(|l| json!({ "from": l.from.to_string(), "to": l.to.to_string(), "work": l.work }))
        .collect();
    let e_c = c.points[2].energy;
    let quoted = Quoted::new(literature::CYCLE_TORSION_FREE_ENERGY, 4);
    Report::new(
        "cycle",
        json!({ "body": { "shape": "ring", "polarization": "axial" } }),
        json!({
            "points": points,
            "legs": legs,
            "net_work": c.net_work,
            "orientation_free_height": c.points[2].h_hat,
            "rotation_angle_deg": FRAC_PI_2.to_degrees(),
        }),
        Tolerance::default(),
        Some(RING_ENERGY_SCALE),
    )
    .with_flags(quoted.conflicts_with(e_c).then_some(Flag::LiteratureConflict))
}
