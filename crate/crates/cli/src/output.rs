//! Row records, the fixed CSV layout and the JSON report envelope.

use std::io::Write;

use casimir_core::Tolerance;
use serde::Serialize;
use serde_json::Value;

use crate::error::{CliError, CliResult};

/// Column order of every CSV the tool writes.
pub const CSV_HEADER: &str = "h_hat,theta_deg,b_hat,energy_reduced,force_reduced,e_iso,e_aniso,flags";

/// Annotations attached to rows and reports. Serialized in kebab-case; CSV
/// rows join them with `;`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Flag {
    /// The value came from numerical quadrature rather than a closed form.
    Quadrature,
    /// The axial force points away from the body (outward).
    Repulsive,
    /// The orientation-dependent part vanishes to within `1e-9` of the
    /// isotropic part: the height is torsion-free.
    TorsionFree,
    /// A computed value disagrees with the literature value quoted for it by
    /// more than half a unit in the quoted last digit. Both values are reported.
    #[serde(rename = "paper-text-conflict")]
    LiteratureConflict,
    /// Produced with a deliberately corrupted constant (verification canary).
    Canary,
}

impl Flag {
    pub const ALL: [Flag; 5] = [
        Flag::Quadrature,
        Flag::Repulsive,
        Flag::TorsionFree,
        Flag::LiteratureConflict,
        Flag::Canary,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Flag::Quadrature => "quadrature",
            Flag::Repulsive => "repulsive",
            Flag::TorsionFree => "torsion-free",
            Flag::LiteratureConflict => "paper-text-conflict",
            Flag::Canary => "canary",
        }
    }
}

/// One grid point of a sweep. `None` fields are not applicable to the command
/// that produced the row and are written as empty CSV fields / JSON `null`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResultRecord {
    pub h_hat: f64,
    pub theta_deg: Option<f64>,
    /// Outer radius, present for the annulus only.
    pub b_hat: Option<f64>,
    pub energy_reduced: Option<f64>,
    pub force_reduced: Option<f64>,
    pub e_iso: Option<f64>,
    pub e_aniso: Option<f64>,
    /// Absolute error bound of the quadrature behind the energy column.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub energy_error: Option<f64>,
    /// Absolute error bound of the quadrature behind the force column.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub force_error: Option<f64>,
    pub flags: Vec<Flag>,
}

impl ResultRecord {
    pub fn at(h_hat: f64, theta_deg: Option<f64>, b_hat: Option<f64>) -> Self {
        Self {
            h_hat,
            theta_deg,
            b_hat,
            energy_reduced: None,
            force_reduced: None,
            e_iso: None,
            e_aniso: None,
            energy_error: None,
            force_error: None,
            flags: Vec::new(),
        }
    }

    pub fn flag(&mut self, flag: Flag) {
        if !self.flags.contains(&flag) {
            self.flags.push(flag);
            self.flags.sort();
        }
    }

    fn numbers(&self) -> [Option<f64>; 7] {
        [
            Some(self.h_hat),
            self.theta_deg,
            self.b_hat,
            self.energy_reduced,
            self.force_reduced,
            self.e_iso,
            self.e_aniso,
        ]
    }

    /// Rejects non-finite values before anything is written.
    pub fn check_finite(&self) -> CliResult<()> {
        match self.numbers().iter().flatten().find(|x| !x.is_finite()) {
            Some(x) => Err(CliError::Numeric(casimir_core::Error::Domain(format!(
                "non-finite value {x} in row at h_hat = {}",
                self.h_hat
            )))),
            None => Ok(()),
        }
    }

    pub fn csv_row(&self) -> String {
        let mut fields: Vec<String> = self.numbers().iter().map(|x| csv_number(*x)).collect();
        fields.push(
            self.flags
                .iter()
                .map(Flag::as_str)
                .collect::<Vec<_>>()
                .join(";"),
        );
        fields.join(",")
    }
}

/// 17 significant digits, empty when not applicable.
pub fn csv_number(x: Option<f64>) -> String {
    match x {
        Some(v) => format!("{v:.16e}"),
        None => String::new(),
    }
}

pub fn write_csv<W: Write + ?Sized>(out: &mut W, records: &[ResultRecord]) -> CliResult<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in records {
        writeln!(out, "{}", r.csv_row())?;
    }
    Ok(())
}

pub fn csv_string(records: &[ResultRecord]) -> String {
    let mut buf = Vec::new();
    write_csv(&mut buf, records).expect("writing to memory cannot fail");
    String::from_utf8(buf).expect("CSV is ASCII")
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    pub rel_tol: f64,
    pub abs_tol: f64,
}

impl From<Tolerance> for Tolerances {
    fn from(t: Tolerance) -> Self {
        Self {
            rel_tol: t.rel,
            abs_tol: t.abs,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Meta {
    pub version: &'static str,
    pub tolerances: Tolerances,
    /// Physical energy of one reduced unit; `null` for purely geometric reports.
    pub energy_scale: Option<&'static str>,
    pub length_unit: &'static str,
    pub angle_unit: &'static str,
}

/// Top-level JSON object written by every command.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub flags: Vec<Flag>,
    pub meta: Meta,
}

impl Report {
    pub fn new(
        command: &str,
        inputs: Value,
        results: Value,
        tol: Tolerance,
        energy_scale: Option<&'static str>,
    ) -> Self {
        Self {
            command: command.to_string(),
            inputs,
            results,
            flags: Vec::new(),
            meta: Meta {
                version: env!("CARGO_PKG_VERSION"),
                tolerances: tol.into(),
                energy_scale,
                length_unit: "a (inner radius)",
                angle_unit: "degrees",
            },
        }
    }

    pub fn with_flags(mut self, flags: impl IntoIterator<Item = Flag>) -> Self {
        self.flags.extend(flags);
        self.flags.sort();
        self.flags.dedup();
        self
    }

    pub fn write<W: Write + ?Sized>(&self, out: &mut W) -> CliResult<()> {
        serde_json::to_writer_pretty(&mut *out, self).map_err(std::io::Error::from)?;
        writeln!(out)?;
        Ok(())
    }
}
