//! The acceptance suite: eleven checks, each printed as one pass/fail line
//! with the measured values. Used by `casimir verify` and the `acceptance`
//! test target.

use std::f64::consts::{FRAC_PI_2, PI};
use std::time::Instant;

use casimir_core::analysis::{
    annulus_torsion_free, critical_angles, critical_outer_radius, machine_cycle,
    plate_torsion_free, repulsion_windows, ring_torsion_free, scan_repulsion_windows,
    torsion_free_heights, RepulsionWindow,
};
use casimir_core::closed_form::{
    annulus_energy, plate_decomposition, ring_decomposition, ring_density_at_radius, ring_energy,
    ring_force,
};
use casimir_core::kernel::{
    cp_point_kernel, cp_point_kernel_zeta, retardation_integrals, RetardationCoefficients,
    ZETA_TO_CLOSED_RATIO,
};
use casimir_core::oracle::{annulus_energy_quadrature, ring_energy_quadrature};
use casimir_core::{
    AtomConfiguration, BodyGeometry, PolarizabilityTensor, Polarization, Tolerance, Vec3,
};
use serde::Serialize;

use crate::args::CurveName;
use crate::commands;
use crate::error::CliError;
use crate::figures::{self, compare_to_golden, parse_csv, sign_changes};
use crate::literature;
use crate::output::{csv_string, Flag};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    /// Factor applied to every numerical tolerance; thresholds stay fixed.
    pub tol_scale: f64,
    /// Corrupt the retardation-integral reference constants.
    pub canary: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            tol_scale: 1.0,
            canary: false,
        }
    }
}

impl VerifyOptions {
    pub fn tolerance(&self) -> Tolerance {
        Tolerance::default().scaled(self.tol_scale)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

impl CheckOutcome {
    pub fn line(&self) -> String {
        format!(
            "[{}] {:>2}. {} ({:.2} s) :: {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.seconds,
            self.detail
        )
    }
}

type Check = fn(&VerifyOptions) -> Result<(bool, String), CliError>;

pub const CHECKS: [(u8, &str, Check); 11] = [
    (1, "ring torsion-free heights", ring_heights),
    (2, "short-range repulsion edge at 90 deg", short_range_edge),
    (3, "critical angles", angles),
    (4, "plate-limit torsion-free heights", plate_limit),
    (5, "radial polarization via quadrature", radial_quadrature),
    (6, "critical outer radii", critical_radii),
    (7, "oracle equivalence and nesting identity", oracle_equivalence),
    (8, "intermediate window at 0 deg", intermediate_window),
    (9, "machine cycle", cycle),
    (10, "kernel certification", kernel),
    (11, "figure data regeneration", figure_data),
];

pub fn run_check(id: u8, opts: &VerifyOptions) -> Option<CheckOutcome> {
    let (id, title, check) = CHECKS.iter().find(|c| c.0 == id).copied()?;
    let start = Instant::now();
    let (passed, detail) = match check(opts) {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e}")),
    };
    Some(CheckOutcome {
        id,
        title,
        passed,
        detail,
        seconds: start.elapsed().as_secs_f64(),
    })
}

pub fn run_checks(opts: &VerifyOptions) -> Vec<CheckOutcome> {
    CHECKS
        .iter()
        .filter_map(|(id, _, _)| run_check(*id, opts))
        .collect()
}

fn within(x: f64, target: f64, tol: f64) -> bool {
    (x - target).abs() <= tol
}

fn rounds_to(x: f64, quoted: f64, decimals: i32) -> bool {
    let k = 10f64.powi(decimals);
    ((x * k).round() - quoted * k).abs() < 1e-9
}

fn cfg(h: f64, theta: f64) -> Result<AtomConfiguration, CliError> {
    Ok(AtomConfiguration::new(h, theta)?)
}

fn verdict(parts: &[(bool, String)]) -> (bool, String) {
    let passed = parts.iter().all(|(ok, _)| *ok);
    let detail = parts
        .iter()
        .map(|(ok, s)| if *ok { s.clone() } else { format!("{s} [FAILED]") })
        .collect::<Vec<_>>()
        .join("; ");
    (passed, detail)
}

fn ring_heights(_: &VerifyOptions) -> Result<(bool, String), CliError> {
    let s = ring_torsion_free();
    let residual = [s.h1, s.h2]
        .iter()
        .map(|&h| ring_decomposition(h).e_aniso.abs())
        .fold(0.0, f64::max);
    Ok(verdict(&[
        (
            within(s.h1, 0.477847, 5e-7) && within(s.h2, 1.687206, 5e-7),
            format!("h1 = {:.6}, h2 = {:.6}", s.h1, s.h2),
        ),
        (
            rounds_to(s.h1, 0.48, 2) && rounds_to(s.h2, 1.69, 2),
            "round to quoted 0.48, 1.69".into(),
        ),
        (residual <= 1e-9, format!("max |e_aniso(h_i)| = {residual:.1e}")),
    ]))
}

fn short_range_edge(_: &VerifyOptions) -> Result<(bool, String), CliError> {
    let edge = (2.0f64 / 9.0).sqrt();
    let ws = repulsion_windows(FRAC_PI_2);
    let Some(w) = ws.first().copied().filter(|w| ws.len() == 1 && w.lo == 0.0) else {
        return Ok((false, format!("expected one window from 0, got {ws:?}")));
    };
    let inside = ring_force(&cfg(w.hi - 1e-9, FRAC_PI_2)?);
    let outside = ring_force(&cfg(w.hi + 1e-9, FRAC_PI_2)?);
    let scanned = scan_repulsion_windows(|h| Ok(ring_force(&AtomConfiguration::new(h, FRAC_PI_2)?)), 1.0, 1e-3)?;
    let scan_hi = scanned.first().map_or(f64::NAN, |s| s.hi);
    Ok(verdict(&[
        (within(w.hi, edge, 1e-9), format!("edge = {:.9} (sqrt(2/9) = {edge:.9})", w.hi)),
        (
            inside > 0.0 && outside < 0.0,
            format!("F(edge-1e-9) = {inside:.2e}, F(edge+1e-9) = {outside:.2e}"),
        ),
        (
            scanned.len() == 1 && within(scan_hi, edge, 1e-9),
            format!("sign scan edge = {scan_hi:.9}"),
        ),
        (rounds_to(w.hi, 0.47, 2), "rounds to quoted 0.47".into()),
    ]))
}

fn angles(_: &VerifyOptions) -> Result<(bool, String), CliError> {
    let c = critical_angles();
    let (lo, hi, mid) = (c.lo.to_degrees(), c.hi.to_degrees(), c.intermediate.to_degrees());
    Ok(verdict(&[
        (within(lo, 60.88, 0.01), format!("theta_lo = {lo:.4} (quoted 60.88)")),
        (within(hi, 119.12, 0.01), format!("theta_hi = {hi:.4} (quoted 119.12)")),
        (
            within(mid, 13.27, 0.01),
            format!("theta_intermediate = {mid:.4} (quoted 13.27)"),
        ),
    ]))
}

fn plate_limit(_: &VerifyOptions) -> Result<(bool, String), CliError> {
    let p = plate_torsion_free();
    let residual = [p.h1, p.h2]
        .iter()
        .map(|&h| plate_decomposition(h).e_aniso.abs())
        .fold(0.0, f64::max);
    let near_ring = annulus_torsion_free(1.0 + 1e-6)?;
    // Smaller root of 6s² − 73s + 26 = 0 in s = ĥ².
    let exact_h1 = ((73.0 - 4705f64.sqrt()) / 12.0).sqrt();
    Ok(verdict(&[
        (
            within(p.h1, exact_h1, 1e-12) && within(p.h2, 3.43503, 5e-6) && residual <= 1e-12,
            format!("plate roots h1 = {:.6}, h2 = {:.6}", p.h1, p.h2),
        ),
        (
            within(p.h1, 0.60, 0.005),
            format!("|h1 - 0.60| = {:.5} (limit 0.005)", (p.h1 - 0.60).abs()),
        ),
        (
            within(p.h2, 3.44, 0.005),
            format!("|h2 - 3.44| = {:.5} (limit 0.005)", (p.h2 - 3.44).abs()),
        ),
        (
            within(near_ring.h1, 0.4778, 1e-3) && within(near_ring.h2, 1.6872, 1e-3),
            format!(
                "annulus at b = 1+1e-6: ({:.4}, {:.4})",
                near_ring.h1, near_ring.h2
            ),
        ),
    ]))
}

fn radial_quadrature(opts: &VerifyOptions) -> Result<(bool, String), CliError> {
    let tol = opts.tolerance();
    let ring = torsion_free_heights(&BodyGeometry::ring(Polarization::Radial), 10.0, tol)?;
    let plate = torsion_free_heights(&BodyGeometry::plate(Polarization::Radial), 50.0, tol)?;
    let mut outer = Vec::new();
    for b in [10.0, 100.0, 1000.0] {
        let annulus = BodyGeometry::annulus(b, Polarization::Radial)?;
        let heights = torsion_free_heights(&annulus, 10.0 * b, Tolerance::new(tol.rel, 0.0))?;
        outer.push(heights.get(1).copied().unwrap_or(f64::NAN));
    }
    let ring_ok = ring.len() == 2 && within(ring[0], 0.36, 0.01) && within(ring[1], 3.45, 0.01);
    let plate_ok = plate.len() == 1 && within(plate[0], 0.44, 0.01);
    let growing = outer.iter().all(|h| h.is_finite()) && outer[0] < outer[1] && outer[1] < outer[2];
    Ok(verdict(&[
        (ring_ok, format!("ring heights {ring:.5?} (quoted 0.36, 3.45)")),
        (plate_ok, format!("plate heights up to 50: {plate:.5?} (quoted 0.44, none)")),
        (growing, format!("annulus h2 at b = 10, 100, 1000: {outer:.3?}")),
    ]))
}

fn critical_radii(_: &VerifyOptions) -> Result<(bool, String), CliError> {
    let start = Instant::now();
    let mut parts = Vec::new();
    for (deg, quoted) in literature::CRITICAL_RADII {
        let r = critical_outer_radius(deg.to_radians())?;
        parts.push((
            within(r.b_star, quoted.value, 1e-3),
            format!("b*({deg}) = {:.5} (quoted {})", r.b_star, quoted.value),
        ));
    }
    let elapsed = start.elapsed().as_secs_f64();
    parts.push((elapsed <= 10.0, format!("all four in {elapsed:.2} s")));
    Ok(verdict(&parts))
}

fn linspace(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |k| lo + (hi - lo) * k as f64 / (n - 1) as f64)
}

fn oracle_equivalence(opts: &VerifyOptions) -> Result<(bool, String), CliError> {
    let tol = opts.tolerance();
    let rel_dev = |q: f64, exact: f64| {
        if exact == 0.0 {
            if q.abs() < 1e-14 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            (q - exact).abs() / exact.abs()
        }
    };
    let mut ring_worst = 0.0f64;
    let mut annulus_worst = 0.0f64;
    for h in linspace(-3.0, 3.0, 10) {
        for j in 0..10 {
            let c = cfg(h, PI * j as f64 / 10.0)?;
            let q = ring_energy_quadrature(&c, &Polarization::Axial, tol)?;
            ring_worst = ring_worst.max(rel_dev(q.value, ring_energy(&c)));
            for b in [1.2, 1.6505, 2.0, 5.0] {
                let q = annulus_energy_quadrature(&c, &Polarization::Axial, b, tol)?;
                annulus_worst = annulus_worst.max(rel_dev(q.value, annulus_energy(&c, b)?));
            }
        }
    }
    let mut nesting_worst = 0.0f64;
    for rho in linspace(1.05, 4.9, 12) {
        for h in linspace(-3.0, 2.5, 12) {
            for k in 0..6 {
                let c = cfg(h, k as f64 * PI / 6.0)?;
                let step = 1e-4 * rho;
                let e = |b: f64| annulus_energy(&c, b);
                let d = (-e(rho + 2.0 * step)? + 8.0 * e(rho + step)? - 8.0 * e(rho - step)?
                    + e(rho - 2.0 * step)?)
                    / (12.0 * step);
                let expected = ring_density_at_radius(rho, &c);
                nesting_worst = nesting_worst.max((d - expected).abs() / expected.abs().max(1.0));
            }
        }
    }
    Ok(verdict(&[
        (ring_worst <= 1e-8, format!("ring 10x10 grid max rel dev {ring_worst:.1e}")),
        (
            annulus_worst <= 1e-8,
            format!("annulus grid (b = 1.2, 1.6505, 2, 5) max rel dev {annulus_worst:.1e}"),
        ),
        (
            nesting_worst <= 1e-10,
            format!("dE/db vs ring density max dev {nesting_worst:.1e}"),
        ),
    ]))
}

fn intermediate_window(opts: &VerifyOptions) -> Result<(bool, String), CliError> {
    let algebraic = repulsion_windows(0.0);
    let scanned = scan_repulsion_windows(|h| Ok(ring_force(&AtomConfiguration::new(h, 0.0)?)), 2.0, 1e-4)?;
    let matches = |a: &[RepulsionWindow], b: &[RepulsionWindow]| {
        a.len() == 1
            && b.len() == 1
            && within(a[0].lo, b[0].lo, 1e-9)
            && within(a[0].hi, b[0].hi, 1e-9)
    };
    let w = algebraic.first().copied().unwrap_or(RepulsionWindow {
        lo: f64::NAN,
        hi: f64::NAN,
    });
    let report = commands::repulsion(
        &BodyGeometry::ring(Polarization::Axial),
        &[0.0],
        1e-3,
        5.0,
        opts.tolerance(),
    )?;
    let (text_lo, text_hi) = literature::RING_INTERMEDIATE_WINDOW_TEXT;
    let text_matched = !text_lo.conflicts_with(w.lo) && !text_hi.conflicts_with(w.hi);
    Ok(verdict(&[
        (
            within(w.lo, 0.956342, 1e-6) && within(w.hi, 1.259131, 1e-6),
            format!("algebraic window ({:.6}, {:.6})", w.lo, w.hi),
        ),
        (
            matches(&algebraic, &scanned),
            format!("step-1e-4 sign scan {:.6?} agrees to 1e-9", scanned),
        ),
        (
            report.flags.contains(&Flag::LiteratureConflict) && !text_matched,
            "text range 1.24-1.41 reported as paper-text-conflict".into(),
        ),
    ]))
}

fn cycle(_: &VerifyOptions) -> Result<(bool, String), CliError> {
    let c = machine_cycle();
    let [a, b, cc, d] = c.points;
    Ok(verdict(&[
        (within(a.energy, -52.0, 1e-12), format!("E_A = {}", a.energy)),
        (within(b.energy, 0.0, 1e-12), format!("E_B = {}", b.energy)),
        (
            within(cc.energy, literature::CYCLE_TORSION_FREE_ENERGY, 1e-4)
                && within(d.energy, cc.energy, 1e-12),
            format!("E_C = {:.6}, E_D = {:.6}", cc.energy, d.energy),
        ),
        (c.net_work.abs() <= 1e-12, format!("net work = {:.1e}", c.net_work)),
    ]))
}

/// Reference constants; the canary perturbs them by one part in 10⁹.
fn reference_coefficients(opts: &VerifyOptions) -> RetardationCoefficients {
    let exact = RetardationCoefficients::EXACT;
    if opts.canary {
        RetardationCoefficients {
            uu: exact.uu * (1.0 + 1e-9),
            ..exact
        }
    } else {
        exact
    }
}

fn kernel(opts: &VerifyOptions) -> Result<(bool, String), CliError> {
    let reference = reference_coefficients(opts);
    let c = retardation_integrals(1e-12)?;
    let worst = (c.uu - reference.uu)
        .abs()
        .max((c.uv - reference.uv).abs())
        .max((c.vv - reference.vv).abs());
    let (c13, c28, c63) = reference.kernel_coefficients();
    let bracket = 3.0 * c13 - 2.0 * c28 + c63;

    let mut state = 0x2545_f491_4f6c_dd1d_u64;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0
    };
    let mut ratios = Vec::new();
    while ratios.len() < 24 {
        let mut tensor = || {
            PolarizabilityTensor::new(
                next() + 1.5,
                next() + 1.5,
                next() + 1.5,
                next() * 0.3,
                next() * 0.3,
                next() * 0.3,
            )
        };
        let (a, b) = (tensor(), tensor());
        let r = Vec3::new(next() * 2.0, next() * 2.0, next() * 2.0);
        if r.norm() < 0.3 {
            continue;
        }
        let closed = cp_point_kernel(&a, &b, r)?;
        if closed.abs() < 1e-8 * r.norm().powi(-7) {
            continue;
        }
        let zeta_tol = (1e-11 * opts.tol_scale).max(1e-12);
        ratios.push(cp_point_kernel_zeta(&a, &b, r, zeta_tol)? / closed);
    }
    let spread = ratios
        .iter()
        .map(|x| (x - ratios[0]).abs() / ratios[0].abs())
        .fold(0.0, f64::max);
    let against_constant = (ratios[0] - ZETA_TO_CLOSED_RATIO).abs() / ZETA_TO_CLOSED_RATIO;
    Ok(verdict(&[
        (
            worst <= 1e-12,
            format!(
                "integrals ({:.13}, {:.13}, {:.13}), max dev {worst:.1e}",
                c.uu, c.uv, c.vv
            ),
        ),
        (bracket == 46.0, format!("isotropic bracket = {bracket}")),
        (
            spread <= 1e-8 && against_constant <= 1e-8,
            format!(
                "zeta/closed ratio over {} inputs = {:.12e} (spread {spread:.1e}, 1/(4pi) dev {against_constant:.1e})",
                ratios.len(),
                ratios[0]
            ),
        ),
    ]))
}

fn column(rows: &[figures::CsvRow], col: usize) -> Vec<f64> {
    rows.iter().map(|r| r.values[col]).collect()
}

const H: usize = 0;
const THETA: usize = 1;
const ENERGY: usize = 3;
const FORCE: usize = 4;
const E_ANISO: usize = 6;

fn crossings_match(found: &[f64], expected: &[f64], tol: f64) -> bool {
    found.len() == expected.len() && found.iter().zip(expected).all(|(f, e)| within(*f, *e, tol))
}

fn figure_data(_: &VerifyOptions) -> Result<(bool, String), CliError> {
    // Golden copies pin the default tolerances they were produced with.
    let files = figures::all(Tolerance::default())?;
    let mut parts = Vec::new();
    let mut worst = 0.0f64;
    let mut golden_ok = true;
    for (name, rows) in &files {
        let golden = figures::GOLDEN.iter().find(|(n, _)| n == name).map(|(_, t)| *t);
        let fresh = csv_string(rows);
        match golden.map(|g| compare_to_golden(&fresh, g, 1e-10, 1e-15)) {
            Some(Ok(c)) => {
                worst = worst.max(c.worst_rel);
                golden_ok &= c.failures == 0;
            }
            Some(Err(e)) => {
                golden_ok = false;
                parts.push((false, format!("{name}: {e}")));
            }
            None => {
                golden_ok = false;
                parts.push((false, format!("{name}: no golden copy")));
            }
        }
    }
    parts.push((golden_ok, format!("5 files vs golden, worst rel dev {worst:.1e}")));

    let parsed = |name: &str| -> Result<Vec<figures::CsvRow>, CliError> {
        let rows = &files.iter().find(|(n, _)| n == name).expect("generated above").1;
        parse_csv(&csv_string(rows)).map_err(CliError::Usage)
    };

    // Energy curves: minima and force sign changes per angle.
    let fig2 = parsed("fig2_ring_axial.csv")?;
    let mut fig2_ok = true;
    let mut fig2_notes = Vec::new();
    let edge = (2.0f64 / 9.0).sqrt();
    for deg in figures::FIG2_ANGLES_DEG {
        let rows: Vec<_> = fig2.iter().filter(|r| r.values[THETA] == deg).cloned().collect();
        let (h, e, f) = (column(&rows, H), column(&rows, ENERGY), column(&rows, FORCE));
        let argmin = h[e
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .map(|(i, _)| i)
            .unwrap_or(0)];
        let force_zeros = sign_changes(&h, &f);
        let (ok, expected_zeros): (bool, Vec<f64>) = match deg as i32 {
            0 => (argmin == 0.0, vec![0.956342, 1.259131]),
            90 => (within(argmin, edge, 0.01), vec![edge]),
            _ => (argmin == 0.0, vec![]),
        };
        let zeros_ok = crossings_match(&force_zeros, &expected_zeros, 1e-3);
        fig2_ok &= ok && zeros_ok;
        fig2_notes.push(format!("{deg}: min at {argmin}, F zeros {force_zeros:.4?}"));
    }
    let theta0: Vec<_> = fig2.iter().filter(|r| r.values[THETA] == 0.0).cloned().collect();
    let ring = ring_torsion_free();
    let de_zeros = sign_changes(&column(&theta0, H), &column(&theta0, E_ANISO));
    fig2_ok &= crossings_match(&de_zeros, &[ring.h1, ring.h2], 1e-3);
    parts.push((
        fig2_ok,
        format!("energy curves {}; dE zeros {de_zeros:.4?}", fig2_notes.join(", ")),
    ));

    // ΔE curves: zero crossings at the torsion-free heights of criteria 1-5.
    let plate = plate_torsion_free();
    let ring_radial: Vec<f64> = [-1.0, 1.0]
        .iter()
        .map(|s| ((78.0 + s * 5824f64.sqrt()) / 13.0).sqrt())
        .collect();
    let plate_radial = torsion_free_heights(
        &BodyGeometry::plate(Polarization::Radial),
        5.0,
        Tolerance::default(),
    )?;
    let expected = [
        (CurveName::RingAxial, vec![ring.h1, ring.h2]),
        (CurveName::PlateAxial, vec![plate.h1, plate.h2]),
        (CurveName::RingRadial, ring_radial),
        (CurveName::PlateRadial, plate_radial),
    ];
    let mut fig4_ok = true;
    let mut fig4_notes = Vec::new();
    for (curve, heights) in expected {
        let rows = parsed(&format!("fig4_{}.csv", figures::curve_slug(curve)))?;
        let zeros = sign_changes(&column(&rows, H), &column(&rows, E_ANISO));
        fig4_ok &= crossings_match(&zeros, &heights, 1e-3);
        fig4_notes.push(format!("{}: {zeros:.4?}", figures::curve_slug(curve)));
    }
    parts.push((fig4_ok, format!("dE zeros {}", fig4_notes.join(", "))));
    Ok(verdict(&parts))
}
