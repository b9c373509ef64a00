//! Command-line front end for the `casimir-core` library: grid sweeps with
//! CSV or JSON output, observable reports, figure data and the acceptance
//! suite.

pub mod args;
pub mod commands;
pub mod error;
pub mod figures;
pub mod literature;
pub mod output;
pub mod request;
pub mod verify;

use std::io::Write;

use casimir_core::Tolerance;

use crate::args::{Cli, Command, FigureName, OutputFormat, VerifyFormat};
use crate::commands::Columns;
use crate::error::{CliError, CliResult};
use crate::output::{write_csv, Report};
use crate::request::{build_geometry, build_heights, build_tolerance, check_angles, SweepRequest};
use crate::verify::VerifyOptions;

pub use crate::error::{EXIT_NON_CONVERGENCE, EXIT_OK, EXIT_USAGE, EXIT_VERIFY_FAILED};

/// Runs one parsed command, writing its output to `out`.
pub fn run<W: Write + ?Sized>(cli: Cli, out: &mut W) -> CliResult<()> {
    match cli.command {
        Command::Energy(a) => sweep_command("energy", a, Columns::ENERGY, out),
        Command::Force(a) => sweep_command("force", a, Columns::FORCE, out),
        Command::TorsionFree(a) => {
            let geometry = build_geometry(&a.body)?;
            if let Some(m) = a.scan_max {
                if !(m > 0.0 && m.is_finite()) {
                    return Err(CliError::Usage(format!("--scan-max must be positive, got {m}")));
                }
            }
            commands::torsion_free(&geometry, a.scan_max, build_tolerance(&a.tol)?)?.write(out)
        }
        Command::Repulsion(a) => {
            let geometry = build_geometry(&a.body)?;
            check_angles(&a.theta)?;
            if !(a.step > 0.0 && a.scan_max > a.step) {
                return Err(CliError::Usage(format!(
                    "--step must be positive and below --scan-max (got {}, {})",
                    a.step, a.scan_max
                )));
            }
            commands::repulsion(&geometry, &a.theta, a.step, a.scan_max, build_tolerance(&a.tol)?)?
                .write(out)
        }
        Command::CriticalAngles => commands::critical_angles_report().write(out),
        Command::CriticalRadius(a) => {
            check_angles(&a.theta)?;
            commands::critical_radius(&a.theta)?.write(out)
        }
        Command::DeltaE(a) => {
            let geometry = build_geometry(&a.body)?;
            let heights = build_heights(&a.grid)?;
            let tol = build_tolerance(&a.tol)?;
            let rows = commands::delta_e_rows(&geometry, &heights, tol)?;
            match a.format {
                OutputFormat::Csv => {
                    let records: Vec<_> = rows.iter().map(|r| r.record.clone()).collect();
                    write_csv(out, &records)
                }
                OutputFormat::Json => commands::delta_e_report(&geometry, &heights, &rows, tol).write(out),
            }
        }
        Command::Cycle => commands::cycle_report().write(out),
        Command::Figure(a) => {
            let tol = Tolerance::default();
            let files = match a.name {
                FigureName::Fig2 => vec![("fig2_ring_axial.csv".to_string(), figures::fig2(tol)?)],
                FigureName::Fig4 => vec![(
                    format!("fig4_{}.csv", figures::curve_slug(a.curve)),
                    figures::fig4(a.curve, tol)?,
                )],
                FigureName::All => figures::all(tol)?,
            };
            match a.out_dir {
                Some(dir) => {
                    std::fs::create_dir_all(&dir)?;
                    for (name, rows) in &files {
                        let path = dir.join(name);
                        std::fs::write(&path, output::csv_string(rows))?;
                        writeln!(out, "{}", path.display())?;
                    }
                    Ok(())
                }
                None if files.len() == 1 => write_csv(out, &files[0].1),
                None => Err(CliError::Usage("`figure all` needs --out-dir".into())),
            }
        }
        Command::Verify(a) => {
            if !(a.tol_scale > 0.0 && a.tol_scale.is_finite()) {
                return Err(CliError::Usage(format!(
                    "--tol-scale must be positive, got {}",
                    a.tol_scale
                )));
            }
            let opts = VerifyOptions {
                tol_scale: a.tol_scale,
                canary: a.canary,
            };
            let outcomes = verify::run_checks(&opts);
            let failed = outcomes.iter().filter(|o| !o.passed).count();
            match a.format {
                VerifyFormat::Text => {
                    for o in &outcomes {
                        writeln!(out, "{}", o.line())?;
                    }
                    writeln!(out, "{} of {} checks passed", outcomes.len() - failed, outcomes.len())?;
                }
                VerifyFormat::Json => {
                    let flags = opts.canary.then_some(output::Flag::Canary);
                    Report::new(
                        "verify",
                        serde_json::json!({ "tol_scale": opts.tol_scale, "canary": opts.canary }),
                        serde_json::to_value(&outcomes).expect("outcomes serialize"),
                        opts.tolerance(),
                        None,
                    )
                    .with_flags(flags)
                    .write(out)?;
                }
            }
            if failed > 0 {
                return Err(CliError::VerifyFailed {
                    failed,
                    total: outcomes.len(),
                });
            }
            Ok(())
        }
    }
}

fn sweep_command<W: Write + ?Sized>(
    name: &str,
    a: args::SweepArgs,
    columns: Columns,
    out: &mut W,
) -> CliResult<()> {
    check_angles(&a.theta)?;
    let req = SweepRequest {
        geometry: build_geometry(&a.body)?,
        theta_deg: a.theta,
        heights: build_heights(&a.grid)?,
        format: a.format,
        tol: build_tolerance(&a.tol)?,
    };
    let rows = commands::sweep(&req, columns)?;
    match req.format {
        OutputFormat::Csv => write_csv(out, &rows),
        OutputFormat::Json => commands::sweep_report(name, &req, &rows).write(out),
    }
}
