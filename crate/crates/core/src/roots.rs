//! Scalar root finding and 1-D maximization used by the observables.

use crate::error::{Error, Result};

/// Bisection on a sign-changing bracket, refined until the bracket is narrower than `xtol`.
pub fn bisect<F>(mut f: F, mut lo: f64, mut hi: f64, xtol: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut flo = f(lo)?;
    let fhi = f(hi)?;
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(Error::RootNotBracketed(format!(
            "no sign change on [{lo}, {hi}] (f = {flo:e}, {fhi:e})"
        )));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= xtol || mid <= lo || mid >= hi {
            return Ok(mid);
        }
        let fmid = f(mid)?;
        if fmid == 0.0 {
            return Ok(mid);
        }
        if fmid.signum() == flo.signum() {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Coarse grid used to bracket sign changes: uniform steps up to `linear_max`,
/// then geometric steps (ratio `1 + geometric_ratio`) up to `max`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanGrid {
    pub start: f64,
    pub step: f64,
    pub linear_max: f64,
    pub geometric_ratio: f64,
    pub max: f64,
}

impl ScanGrid {
    /// Step 0.01 on `[0, min(max, 10)]`, then 1 % geometric growth.
    pub fn heights(max: f64) -> Self {
        Self {
            start: 0.0,
            step: 0.01,
            linear_max: 10.0_f64.min(max),
            geometric_ratio: 0.01,
            max,
        }
    }

    pub fn linear(start: f64, max: f64, step: f64) -> Self {
        Self {
            start,
            step,
            linear_max: max,
            geometric_ratio: 0.0,
            max,
        }
    }

    pub fn points(&self) -> Vec<f64> {
        let mut pts = Vec::new();
        let n = ((self.linear_max - self.start) / self.step).round().max(0.0) as usize;
        for k in 0..=n {
            pts.push((self.start + k as f64 * self.step).min(self.linear_max));
        }
        if self.geometric_ratio > 0.0 {
            let mut x = self.linear_max;
            while x < self.max {
                x = (x * (1.0 + self.geometric_ratio)).min(self.max);
                pts.push(x);
            }
        }
        pts.dedup();
        pts
    }
}

/// All sign changes of `f` on the grid, each refined by bisection to `xtol`.
///
/// Exact zeros at grid nodes are reported once.
pub fn scan_roots<F>(mut f: F, grid: &ScanGrid, xtol: f64) -> Result<Vec<f64>>
where
    F: FnMut(f64) -> Result<f64>,
{
    let pts = grid.points();
    let vals = pts.iter().map(|&x| f(x)).collect::<Result<Vec<_>>>()?;
    let mut roots = Vec::new();
    for i in 0..pts.len().saturating_sub(1) {
        let (a, b) = (vals[i], vals[i + 1]);
        if a == 0.0 {
            if i == 0 || vals[i - 1] != 0.0 {
                roots.push(pts[i]);
            }
            continue;
        }
        if b != 0.0 && a.signum() != b.signum() {
            roots.push(bisect(&mut f, pts[i], pts[i + 1], xtol)?);
        }
    }
    if let (Some(&last), Some(&x)) = (vals.last(), pts.last()) {
        if last == 0.0 && vals.len() > 1 && vals[vals.len() - 2] != 0.0 {
            roots.push(x);
        }
    }
    Ok(roots)
}

/// Golden-section search for the maximum of a unimodal function on `[lo, hi]`.
/// Returns `(argmax, max)`.
pub fn golden_max<F>(mut f: F, mut lo: f64, mut hi: f64, xtol: f64) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    while hi - lo > xtol {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2)?;
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1)?;
        }
    }
    let x = 0.5 * (lo + hi);
    let fx = f(x)?;
    let best = [(x1, f1), (x2, f2), (x, fx)]
        .into_iter()
        .fold((x, fx), |acc, p| if p.1 > acc.1 { p } else { acc });
    Ok(best)
}

/// Real roots of `a s² + b s + c`, ascending, using the cancellation-free form.
/// A vanishing leading coefficient falls back to the linear equation.
pub fn quadratic_roots(a: f64, b: f64, c: f64) -> Vec<f64> {
    let scale = a.abs().max(b.abs()).max(c.abs());
    if scale == 0.0 {
        return Vec::new();
    }
    if a.abs() <= 1e-14 * scale {
        return if b != 0.0 { vec![-c / b] } else { Vec::new() };
    }
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        return Vec::new();
    }
    let q = -0.5 * (b + b.signum() * disc.sqrt());
    let mut roots = if q == 0.0 {
        vec![0.0, 0.0]
    } else {
        vec![q / a, c / q]
    };
    roots.sort_by(f64::total_cmp);
    roots
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn bisection_finds_sqrt2() {
        let r = bisect(|x| Ok(x * x - 2.0), 0.0, 2.0, 1e-14).unwrap();
        assert_abs_diff_eq!(r, 2f64.sqrt(), epsilon = 1e-13);
        assert!(matches!(
            bisect(|x| Ok(x * x + 1.0), -1.0, 1.0, 1e-12),
            Err(Error::RootNotBracketed(_))
        ));
    }

    #[test]
    fn scan_finds_every_crossing() {
        let grid = ScanGrid::linear(0.0, 10.0, 0.01);
        let roots = scan_roots(|x| Ok((x - 1.234).sin()), &grid, 1e-12).unwrap();
        let expected: Vec<f64> = (0..3).map(|k| 1.234 + k as f64 * std::f64::consts::PI).collect();
        assert_eq!(roots.len(), expected.len());
        for (r, e) in roots.iter().zip(&expected) {
            assert_abs_diff_eq!(*r, *e, epsilon = 1e-11);
        }
    }

    #[test]
    fn height_grid_switches_to_geometric() {
        let pts = ScanGrid::heights(50.0).points();
        assert_eq!(pts[0], 0.0);
        assert_abs_diff_eq!(pts[1], 0.01, epsilon = 1e-15);
        assert_eq!(*pts.last().unwrap(), 50.0);
        assert!(pts.windows(2).all(|w| w[1] > w[0]));
        assert!(pts.len() < 1000 + 200);
    }

    #[test]
    fn golden_section_on_parabola() {
        let (x, fx) = golden_max(|x| Ok(-(x - 0.3) * (x - 0.3) + 2.0), -1.0, 2.0, 1e-10).unwrap();
        // The argmax is only resolvable to ~sqrt(eps) on a flat maximum.
        assert_abs_diff_eq!(x, 0.3, epsilon = 1e-7);
        assert_abs_diff_eq!(fx, 2.0, epsilon = 1e-14);
    }

    #[test]
    fn quadratic_roots_cases() {
        assert_eq!(quadratic_roots(1.0, -3.0, 2.0), vec![1.0, 2.0]);
        assert!(quadratic_roots(1.0, 0.0, 1.0).is_empty());
        assert_eq!(quadratic_roots(0.0, 2.0, -1.0), vec![0.5]);
        // Cancellation-prone small root.
        let r = quadratic_roots(1.0, -1e8, 1.0);
        assert_abs_diff_eq!(r[0], 1e-8, epsilon = 1e-20);
    }
}
