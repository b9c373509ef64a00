//! Validated inputs built from the command-line arguments.

use std::ffi::OsString;
use std::path::Path;

use casimir_core::{BodyGeometry, BodyShape, PolarizabilityTensor, Polarization, Tolerance};
use serde_json::{json, Value};

use crate::args::{BodyArgs, BodyKind, GridArgs, OutputFormat, TolArgs};
use crate::error::{CliError, CliResult};

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// `axial`, `radial`, `azimuthal`, `isotropic` or `tensor:T,L`.
pub fn parse_polarization(text: &str) -> CliResult<Polarization> {
    let lower = text.trim().to_ascii_lowercase();
    match lower.as_str() {
        "axial" => return Ok(Polarization::Axial),
        "radial" => return Ok(Polarization::Radial),
        "azimuthal" => return Ok(Polarization::Azimuthal),
        "isotropic" => return Ok(Polarization::Tensor(PolarizabilityTensor::identity())),
        _ => {}
    }
    let Some(components) = lower.strip_prefix("tensor:") else {
        return Err(usage(format!(
            "unknown polarization '{text}' (expected axial, radial, azimuthal, isotropic or tensor:T,L)"
        )));
    };
    let parts: Vec<f64> = components
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| usage(format!("bad tensor components '{components}': {e}")))?;
    match parts.as_slice() {
        [t, l] if t.is_finite() && l.is_finite() => Ok(Polarization::transverse_tensor(*t, *l)),
        _ => Err(usage(format!(
            "tensor polarization needs two finite components T,L, got '{components}'"
        ))),
    }
}

pub fn build_geometry(args: &BodyArgs) -> CliResult<BodyGeometry> {
    let polarization = parse_polarization(&args.pol)?;
    let shape = match (args.body, args.b_hat) {
        (BodyKind::Annulus, Some(b)) => {
            if !(b.is_finite() && b > 1.0) {
                return Err(usage(format!("--b must be a finite number > 1, got {b}")));
            }
            BodyShape::Annulus { b_hat: b }
        }
        (BodyKind::Annulus, None) => return Err(usage("--body annulus requires --b")),
        (BodyKind::Ring, None) => BodyShape::Ring,
        (BodyKind::Plate, None) => BodyShape::Plate,
        (kind, Some(_)) => {
            return Err(usage(format!("--b only applies to the annulus, not {kind:?}")))
        }
    };
    BodyGeometry::new(shape, polarization).map_err(|e| usage(e.to_string()))
}

pub fn build_tolerance(args: &TolArgs) -> CliResult<Tolerance> {
    if !(args.rel_tol > 0.0 && args.rel_tol.is_finite()) || !(args.abs_tol >= 0.0 && args.abs_tol.is_finite()) {
        return Err(usage(format!(
            "tolerances must be finite with rel > 0 and abs >= 0 (got {}, {})",
            args.rel_tol, args.abs_tol
        )));
    }
    Ok(Tolerance::new(args.rel_tol, args.abs_tol))
}

pub fn build_heights(args: &GridArgs) -> CliResult<Vec<f64>> {
    let heights = if !args.h.is_empty() {
        args.h.clone()
    } else {
        let (Some(lo), Some(hi), Some(n)) = (args.h_min, args.h_max, args.h_count) else {
            return Err(usage("give either --h or all of --h-min, --h-max, --h-count"));
        };
        if n < 2 || !(lo < hi) {
            return Err(usage(format!(
                "height range needs --h-count >= 2 and --h-min < --h-max (got {n}, {lo}, {hi})"
            )));
        }
        (0..n)
            .map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64)
            .collect()
    };
    if let Some(bad) = heights.iter().find(|h| !h.is_finite()) {
        return Err(usage(format!("heights must be finite, got {bad}")));
    }
    Ok(heights)
}

pub fn check_angles(theta_deg: &[f64]) -> CliResult<()> {
    if theta_deg.is_empty() {
        return Err(usage("--theta needs at least one angle"));
    }
    match theta_deg.iter().find(|t| !t.is_finite()) {
        Some(bad) => Err(usage(format!("angles must be finite, got {bad}"))),
        None => Ok(()),
    }
}

/// A full (θ, ĥ) grid request for one body.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRequest {
    pub geometry: BodyGeometry,
    pub theta_deg: Vec<f64>,
    pub heights: Vec<f64>,
    pub format: OutputFormat,
    pub tol: Tolerance,
}

impl SweepRequest {
    pub fn b_hat(&self) -> Option<f64> {
        match self.geometry.shape {
            BodyShape::Annulus { b_hat } => Some(b_hat),
            _ => None,
        }
    }

    /// Inputs echoed into the JSON report.
    pub fn inputs(&self) -> Value {
        json!({
            "body": geometry_json(&self.geometry),
            "theta_deg": self.theta_deg,
            "h_hat": self.heights,
        })
    }
}

pub fn geometry_json(g: &BodyGeometry) -> Value {
    let b_hat = match g.shape {
        BodyShape::Annulus { b_hat } => Some(b_hat),
        _ => None,
    };
    let tensor = match g.polarization {
        Polarization::Tensor(t) => Some(json!({ "transverse": t.xx, "longitudinal": t.zz })),
        _ => None,
    };
    json!({
        "shape": g.shape.name(),
        "b_hat": b_hat,
        "polarization": g.polarization.name(),
        "tensor": tensor,
    })
}

/// Parses a flat `key=value` file. Blank lines and lines starting with `#`
/// are skipped.
pub fn parse_config(text: &str) -> CliResult<Vec<(String, String)>> {
    let mut entries = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(usage(format!("config line {}: expected key=value, got '{line}'", n + 1)));
        };
        let key = key.trim().trim_start_matches("--").replace('_', "-");
        if key.is_empty() {
            return Err(usage(format!("config line {}: empty key", n + 1)));
        }
        entries.push((key, value.trim().to_string()));
    }
    Ok(entries)
}

/// Splices the entries of the `--config` file into `argv` right after the
/// subcommand, skipping keys the command line already sets. `key=true`
/// becomes a bare switch and `key=false` is dropped.
pub fn expand_config(argv: Vec<OsString>) -> CliResult<Vec<OsString>> {
    let mut config_path = None;
    let mut subcommand_at = None;
    let mut i = 1;
    while i < argv.len() {
        let arg = argv[i].to_string_lossy();
        if arg == "--config" {
            config_path = argv.get(i + 1).cloned();
            i += 2;
            continue;
        }
        if let Some(p) = arg.strip_prefix("--config=") {
            config_path = Some(OsString::from(p));
        } else if subcommand_at.is_none() && !arg.starts_with('-') {
            subcommand_at = Some(i);
        }
        i += 1;
    }
    let (Some(path), Some(at)) = (config_path, subcommand_at) else {
        return Ok(argv);
    };
    let text = std::fs::read_to_string(Path::new(&path)).map_err(|e| {
        usage(format!("cannot read config file {}: {e}", Path::new(&path).display()))
    })?;
    let given: Vec<String> = argv
        .iter()
        .map(|a| a.to_string_lossy().split('=').next().unwrap_or_default().to_string())
        .collect();
    let mut extra = Vec::new();
    for (key, value) in parse_config(&text)? {
        let flag = format!("--{key}");
        if key == "config" || given.contains(&flag) {
            continue;
        }
        match value.as_str() {
            "true" => extra.push(OsString::from(flag)),
            "false" => {}
            _ => extra.push(OsString::from(format!("{flag}={value}"))),
        }
    }
    let mut out = argv;
    let tail = out.split_off(at + 1);
    out.extend(extra);
    out.extend(tail);
    Ok(out)
}
