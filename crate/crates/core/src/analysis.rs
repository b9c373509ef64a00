//! Observables derived from the body energies: torsion-free heights, repulsion
//! windows, critical angles, critical outer radii, ΔE sweeps and the machine cycle.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::body::{self, Method};
use crate::closed_form::{annulus_force_decomposition, ring_decomposition, ring_force};
use crate::error::{Error, Result};
use crate::geometry::{AtomConfiguration, BodyGeometry, BodyShape, Polarization};
use crate::quad::Tolerance;
use crate::roots::{bisect, golden_max, quadratic_roots, scan_roots, ScanGrid};

/// Bisection tolerance for every refined root.
pub const ROOT_XTOL: f64 = 1e-12;

/// Orientation-independent heights on the positive side (mirrored below the body).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TorsionFreeSet {
    pub h1: f64,
    pub h2: f64,
}

impl TorsionFreeSet {
    /// The first two positive roots, in order.
    pub fn from_roots(roots: &[f64]) -> Result<Self> {
        let mut positive = roots.iter().copied().filter(|h| *h > 0.0);
        match (positive.next(), positive.next()) {
            (Some(h1), Some(h2)) if h1 < h2 => Ok(Self { h1, h2 }),
            _ => Err(Error::RootNotBracketed(format!(
                "expected two torsion-free heights, found {roots:?}"
            ))),
        }
    }
}

/// Positive roots in `ĥ` of `p ĥ⁴ + q ĥ² + r`, ascending.
fn biquadratic_positive_roots(p: f64, q: f64, r: f64) -> Vec<f64> {
    quadratic_roots(p, q, r)
        .into_iter()
        .filter(|s| *s > 0.0)
        .map(f64::sqrt)
        .collect()
}

/// Ring (axial): roots of `40ĥ⁴ − 123ĥ² + 26 = 0`.
pub fn ring_torsion_free() -> TorsionFreeSet {
    let r = biquadratic_positive_roots(40.0, -123.0, 26.0);
    TorsionFreeSet { h1: r[0], h2: r[1] }
}

/// Apertured plate (axial): roots of `6ĥ⁴ − 73ĥ² + 26 = 0`.
pub fn plate_torsion_free() -> TorsionFreeSet {
    let r = biquadratic_positive_roots(6.0, -73.0, 26.0);
    TorsionFreeSet { h1: r[0], h2: r[1] }
}

/// Annulus (axial) torsion-free heights, bracketed on `[0, 10]` and bisected.
pub fn annulus_torsion_free(b_hat: f64) -> Result<TorsionFreeSet> {
    if !(b_hat > 1.0) {
        return Err(Error::Domain(format!(
            "annulus torsion-free heights need b_hat > 1, got {b_hat}"
        )));
    }
    let roots = scan_roots(
        |h| Ok(annulus_aniso_bracket(h, b_hat)),
        &ScanGrid::heights(10.0),
        ROOT_XTOL,
    )?;
    TorsionFreeSet::from_roots(&roots)
}

// cos 2θ coefficient of the annulus energy without the common 1/5, which
// cannot move the roots.
fn annulus_aniso_bracket(h: f64, b: f64) -> f64 {
    let part = |rho: f64| {
        if rho.is_infinite() {
            return 0.0;
        }
        let (r2, h2) = (rho * rho, h * h);
        (26.0 * r2 * r2 - 73.0 * r2 * h2 + 6.0 * h2 * h2) / (r2 + h2).powf(4.5)
    };
    part(b) - part(1.0)
}

/// All torsion-free heights of any body in `(0, h_max]`, by sign scan of the
/// `cos 2θ` coefficient followed by bisection.
pub fn torsion_free_heights(geometry: &BodyGeometry, h_max: f64, tol: Tolerance) -> Result<Vec<f64>> {
    if !(h_max > 0.0) {
        return Err(Error::Domain(format!("scan limit must be positive, got {h_max}")));
    }
    if geometry.has_closed_form() {
        if let BodyShape::Annulus { b_hat } = geometry.shape {
            return scan_roots(
                |h| Ok(annulus_aniso_bracket(h, b_hat)),
                &ScanGrid::heights(h_max),
                ROOT_XTOL,
            );
        }
    }
    scan_roots(
        |h| Ok(body::decomposition(geometry, h, tol)?.0.e_aniso),
        &ScanGrid::heights(h_max),
        ROOT_XTOL,
    )
}

/// Interval of heights `(lo, hi)` with outward (repulsive) force strictly inside.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RepulsionWindow {
    pub lo: f64,
    pub hi: f64,
}

impl RepulsionWindow {
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, h: f64) -> bool {
        h > self.lo && h < self.hi
    }
}

/// Ring (axial) repulsion windows for `ĥ > 0`, from the sign of
/// `Q(s) = 280(1+c)s² − (133+1267c)s + (280+532c)`, `s = ĥ²`, `c = cos 2θ`.
/// The force is outward exactly where `Q < 0`.
pub fn repulsion_windows(theta: f64) -> Vec<RepulsionWindow> {
    let c = (2.0 * theta).cos();
    let a = 280.0 * (1.0 + c);
    let b = -(133.0 + 1267.0 * c);
    let k = 280.0 + 532.0 * c;
    let q = |s: f64| (a * s + b) * s + k;

    // At c = −1 the quartic term vanishes and `quadratic_roots` drops to the linear case.
    let mut nodes: Vec<f64> = quadratic_roots(a, b, k)
        .into_iter()
        .filter(|s| *s > 0.0)
        .collect();
    nodes.insert(0, 0.0);
    let mut windows = Vec::new();
    for (i, &lo) in nodes.iter().enumerate() {
        let hi = nodes.get(i + 1).copied();
        let probe = match hi {
            Some(hi) => 0.5 * (lo + hi),
            None => lo + 1.0,
        };
        if q(probe) < 0.0 {
            let Some(hi) = hi else {
                // Q is negative at infinity only for a < 0, which cannot occur.
                continue;
            };
            windows.push(RepulsionWindow {
                lo: lo.sqrt(),
                hi: hi.sqrt(),
            });
        }
    }
    windows
}

/// Windows where `force(ĥ) > 0` on `(0, h_max]`, located on a uniform grid of
/// spacing `step` and refined by bisection. A window open at the first grid
/// point is anchored at `ĥ = 0`.
pub fn scan_repulsion_windows<F>(mut force: F, h_max: f64, step: f64) -> Result<Vec<RepulsionWindow>>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(h_max > 0.0 && step > 0.0) {
        return Err(Error::Domain(format!(
            "scan needs positive range and step (h_max {h_max}, step {step})"
        )));
    }
    let n = (h_max / step).round() as usize;
    let mut windows = Vec::new();
    let mut open: Option<f64> = None;
    let mut prev_h = 0.0;
    for k in 1..=n {
        let h = k as f64 * step;
        let f = force(h)?;
        match (open, f > 0.0) {
            (None, true) => {
                open = Some(if k == 1 {
                    0.0
                } else {
                    bisect(&mut force, prev_h, h, ROOT_XTOL)?
                });
            }
            (Some(lo), false) => {
                let hi = bisect(&mut force, prev_h, h, ROOT_XTOL)?;
                windows.push(RepulsionWindow { lo, hi });
                open = None;
            }
            _ => {}
        }
        prev_h = h;
    }
    if let Some(lo) = open {
        windows.push(RepulsionWindow { lo, hi: h_max });
    }
    Ok(windows)
}

/// Ring repulsion windows from the algebraic route together with an
/// independent force-sign scan.
#[derive(Debug, Clone, PartialEq)]
pub struct RepulsionReport {
    pub theta: f64,
    pub algebraic: Vec<RepulsionWindow>,
    pub scanned: Vec<RepulsionWindow>,
    pub scan_step: f64,
    /// Every window wider than the scan step appears in both lists with
    /// boundaries agreeing to 1e−9.
    pub consistent: bool,
}

pub fn ring_repulsion_report(theta: f64, scan_step: f64) -> Result<RepulsionReport> {
    let algebraic = repulsion_windows(theta);
    let cfg = |h: f64| AtomConfiguration::new(h, theta);
    let scanned = scan_repulsion_windows(|h| Ok(ring_force(&cfg(h)?)), 5.0, scan_step)?;
    let wide = |w: &&RepulsionWindow| w.width() > 2.0 * scan_step;
    let close = |a: &RepulsionWindow, b: &RepulsionWindow| {
        (a.lo - b.lo).abs() <= 1e-9 && (a.hi - b.hi).abs() <= 1e-9
    };
    let consistent = algebraic
        .iter()
        .filter(wide)
        .all(|w| scanned.iter().any(|s| close(w, s)))
        && scanned
            .iter()
            .filter(wide)
            .all(|s| algebraic.iter().any(|w| close(w, s)));
    Ok(RepulsionReport {
        theta,
        algebraic,
        scanned,
        scan_step,
        consistent,
    })
}

/// Repulsion windows of any body by force-sign scan on `(0, h_max]`.
pub fn body_repulsion_windows(
    geometry: &BodyGeometry,
    theta: f64,
    h_max: f64,
    step: f64,
    tol: Tolerance,
) -> Result<Vec<RepulsionWindow>> {
    scan_repulsion_windows(
        |h| Ok(body::force(geometry, &AtomConfiguration::new(h, theta)?, tol)?.value),
        h_max,
        step,
    )
}

/// Orientation bounds for ring repulsion, in radians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalAngles {
    /// Short-range repulsion needs `lo < θ < hi`.
    pub lo: f64,
    pub hi: f64,
    /// Intermediate-range repulsion needs `|θ| < intermediate`.
    pub intermediate: f64,
}

/// Short range: `280 + 532c < 0`, i.e. `c < −70/133`. Intermediate range: the
/// discriminant `−6039 − 11682c + 20601c²` of `Q` must be non-negative with
/// both roots positive, i.e. `c ≥ c*`, the positive root of
/// `6867c² − 3894c − 2013 = 0`.
pub fn critical_angles() -> CriticalAngles {
    let lo = 0.5 * (-70.0f64 / 133.0).acos();
    let c_star = quadratic_roots(6867.0, -3894.0, -2013.0)
        .into_iter()
        .fold(f64::NEG_INFINITY, f64::max);
    CriticalAngles {
        lo,
        hi: PI - lo,
        intermediate: 0.5 * c_star.acos(),
    }
}

/// Annulus outer radius at which the intermediate repulsion window closes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalRadius {
    pub theta: f64,
    pub b_star: f64,
    /// Height at which the window collapses (force double root).
    pub h_tangent: f64,
}

const TANGENCY_SCAN: (f64, f64, f64) = (0.3, 5.0, 0.01);

/// Largest axial force of the annulus over the intermediate heights, found by a
/// coarse scan followed by golden-section refinement. Returns `(ĥ, F̂)`.
pub fn max_intermediate_force(theta: f64, b_hat: f64) -> Result<(f64, f64)> {
    let c = (2.0 * theta).cos();
    let force = |h: f64| -> Result<f64> {
        let d = annulus_force_decomposition(h, b_hat)?;
        Ok(d.e_iso + d.e_aniso * c)
    };
    let (lo, hi, step) = TANGENCY_SCAN;
    let n = ((hi - lo) / step).round() as usize;
    let mut best = (0usize, f64::NEG_INFINITY);
    for k in 0..=n {
        let f = force(lo + k as f64 * step)?;
        if f > best.1 {
            best = (k, f);
        }
    }
    let left = lo + best.0.saturating_sub(1) as f64 * step;
    let right = lo + (best.0 + 1).min(n) as f64 * step;
    golden_max(force, left, right, 1e-10)
}

/// Critical outer radius `b̂*(θ)` by bisection on the sign of
/// [`max_intermediate_force`] over `b̂ ∈ (1, 3)`.
pub fn critical_outer_radius(theta: f64) -> Result<CriticalRadius> {
    let reduced = theta.rem_euclid(PI);
    let folded = reduced.min(PI - reduced);
    let limit = critical_angles().intermediate;
    if !(folded < limit) {
        return Err(Error::Domain(format!(
            "no intermediate repulsion for theta = {:.4} deg (needs |theta| < {:.4} deg)",
            theta.to_degrees(),
            limit.to_degrees()
        )));
    }
    let (b_lo, b_hi) = (1.0 + 1e-4, 3.0);
    let sign_at = |b: f64| -> Result<f64> { Ok(max_intermediate_force(folded, b)?.1) };
    if !(sign_at(b_lo)? > 0.0 && sign_at(b_hi)? < 0.0) {
        return Err(Error::RootNotBracketed(format!(
            "tangency not bracketed on b_hat in [{b_lo}, {b_hi}] at theta = {theta}"
        )));
    }
    let b_star = bisect(sign_at, b_lo, b_hi, 1e-9)?;
    let (h_tangent, _) = max_intermediate_force(folded, b_star)?;
    Ok(CriticalRadius {
        theta,
        b_star,
        h_tangent,
    })
}

/// One row of a ΔE sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaEPoint {
    pub h_hat: f64,
    /// `E(θ=0) − E(θ=π/2)`
    pub delta_e: f64,
    pub error_estimate: f64,
    pub method: Method,
}

pub fn delta_e_sweep(geometry: &BodyGeometry, h_grid: &[f64], tol: Tolerance) -> Result<Vec<DeltaEPoint>> {
    if h_grid.is_empty() {
        return Err(Error::Domain("height grid is empty".into()));
    }
    h_grid
        .iter()
        .map(|&h| {
            let (d, err, method) = body::decomposition(geometry, h, tol)?;
            Ok(DeltaEPoint {
                h_hat: h,
                delta_e: d.delta_e(),
                error_estimate: 2.0 * err,
                method,
            })
        })
        .collect()
}

/// Energy-minimizing orientation at height `h_hat`: `Some(0)` or `Some(π/2)`,
/// `None` at a torsion-free height.
pub fn preferred_orientation(geometry: &BodyGeometry, h_hat: f64, tol: Tolerance) -> Result<Option<f64>> {
    Ok(body::decomposition(geometry, h_hat, tol)?.0.preferred_orientation())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CyclePoint {
    pub label: char,
    pub h_hat: f64,
    pub theta: f64,
    pub energy: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CycleLeg {
    pub from: char,
    pub to: char,
    /// Energy change along the leg; positive when work must be supplied.
    pub work: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CycleReport {
    pub points: [CyclePoint; 4],
    pub legs: [CycleLeg; 4],
    pub net_work: f64,
}

/// Ring machine cycle A → B → C → D → A: rotate the atom at the centre,
/// let the ring move out to the first torsion-free height, rotate back there
/// at no cost, and return to the centre.
pub fn machine_cycle() -> CycleReport {
    let h1 = ring_torsion_free().h1;
    let point = |label, h_hat, theta| CyclePoint {
        label,
        h_hat,
        theta,
        energy: ring_decomposition(h_hat).at(theta),
    };
    let points = [
        point('A', 0.0, 0.0),
        point('B', 0.0, FRAC_PI_2),
        point('C', h1, FRAC_PI_2),
        point('D', h1, 0.0),
    ];
    let leg = |i: usize| {
        let (a, b) = (points[i], points[(i + 1) % 4]);
        CycleLeg {
            from: a.label,
            to: b.label,
            work: b.energy - a.energy,
        }
    };
    let legs = [leg(0), leg(1), leg(2), leg(3)];
    let net_work = legs.iter().map(|l| l.work).sum();
    CycleReport {
        points,
        legs,
        net_work,
    }
}

/// Default scan limit used for a body's torsion-free search.
pub fn default_scan_limit(geometry: &BodyGeometry) -> f64 {
    match (geometry.shape, geometry.polarization) {
        (BodyShape::Annulus { b_hat }, Polarization::Radial) => (10.0 * b_hat).max(10.0),
        (BodyShape::Plate, Polarization::Radial) => 50.0,
        _ => 10.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_form::decompose;
    use approx::assert_abs_diff_eq;

    #[test]
    fn ring_torsion_free_roots() {
        let t = ring_torsion_free();
        assert_abs_diff_eq!(t.h1, ((123.0 - 10969f64.sqrt()) / 80.0).sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(t.h1, 0.477847, epsilon = 1e-6);
        assert_abs_diff_eq!(t.h2, 1.687206, epsilon = 1e-6);
        let ring = BodyGeometry::ring(Polarization::Axial);
        assert!(decompose(&ring, t.h1).unwrap().e_aniso.abs() < 1e-12);
        assert!(decompose(&ring, t.h2).unwrap().e_aniso.abs() < 1e-12);
    }

    #[test]
    fn annulus_torsion_free_limits() {
        let near_ring = annulus_torsion_free(1.0 + 1e-6).unwrap();
        assert_abs_diff_eq!(near_ring.h1, 0.4778, epsilon = 1e-3);
        assert_abs_diff_eq!(near_ring.h2, 1.6872, epsilon = 1e-3);
        let plate = plate_torsion_free();
        assert_abs_diff_eq!(plate.h1, 0.60602, epsilon = 1e-5);
        assert_abs_diff_eq!(plate.h2, 3.43503, epsilon = 1e-5);
        let far = annulus_torsion_free(1e6).unwrap();
        assert_abs_diff_eq!(far.h1, plate.h1, epsilon = 1e-9);
        assert_abs_diff_eq!(far.h2, plate.h2, epsilon = 1e-9);
        let mid = annulus_torsion_free(2.0).unwrap();
        assert!(mid.h1 > near_ring.h1 && mid.h1 < plate.h1);
        assert!(mid.h2 > near_ring.h2 && mid.h2 < plate.h2);
        assert!(annulus_torsion_free(1.0).is_err());
    }

    #[test]
    fn repulsion_window_examples() {
        let w = repulsion_windows(FRAC_PI_2);
        assert_eq!(w.len(), 1);
        assert_eq!(w[0].lo, 0.0);
        assert_abs_diff_eq!(w[0].hi, (2.0f64 / 9.0).sqrt(), epsilon = 1e-14);

        let w = repulsion_windows(0.0);
        assert_eq!(w.len(), 1);
        assert_abs_diff_eq!(w[0].lo, 0.956342, epsilon = 1e-6);
        assert_abs_diff_eq!(w[0].hi, 1.259131, epsilon = 1e-6);
        assert_abs_diff_eq!(w[0].lo, ((200.0 - 2880f64.sqrt()) / 160.0).sqrt(), epsilon = 1e-14);

        assert!(repulsion_windows(30f64.to_radians()).is_empty());
    }

    #[test]
    fn repulsion_report_agrees_with_scan() {
        for deg in [0.0, 5.0, 13.0, 30.0, 61.0, 75.0, 90.0, 110.0, 150.0] {
            let r = ring_repulsion_report(f64::to_radians(deg), 1e-3).unwrap();
            assert!(r.consistent, "theta {deg}: {r:?}");
        }
    }

    #[test]
    fn critical_angle_values() {
        let a = critical_angles();
        assert_abs_diff_eq!(a.lo.to_degrees(), 60.878, epsilon = 1e-3);
        assert_abs_diff_eq!(a.hi.to_degrees(), 119.122, epsilon = 1e-3);
        assert_abs_diff_eq!(a.intermediate.to_degrees(), 13.26496, epsilon = 1e-5);
        // Discriminant of Q vanishes at the intermediate bound.
        let c = (2.0 * a.intermediate).cos();
        assert!((-6039.0 - 11682.0 * c + 20601.0 * c * c).abs() < 1e-9);
    }

    #[test]
    fn intermediate_bound_brackets_window_existence() {
        let bound = critical_angles().intermediate.to_degrees();
        assert_eq!(repulsion_windows((bound - 1e-4).to_radians()).len(), 1);
        assert!(repulsion_windows((bound + 1e-4).to_radians()).is_empty());
    }

    #[test]
    fn critical_radius_rejects_large_angles() {
        assert!(matches!(
            critical_outer_radius(20f64.to_radians()),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn cycle_energies() {
        let c = machine_cycle();
        assert_eq!(c.points[0].energy, -52.0);
        assert_abs_diff_eq!(c.points[1].energy, 0.0, epsilon = 1e-13);
        assert_abs_diff_eq!(c.points[2].energy, -9.2832, epsilon = 1e-4);
        assert_abs_diff_eq!(c.points[2].energy, c.points[3].energy, epsilon = 1e-12);
        assert!(c.net_work.abs() <= 1e-12);
        assert_abs_diff_eq!(c.legs[0].work, 52.0, epsilon = 1e-13);
    }
}
