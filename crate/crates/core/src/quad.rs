//! Numerical integration: globally adaptive Gauss–Kronrod (7/15) on finite and
//! semi-infinite intervals, and a doubling trapezoid rule for smooth periodic
//! integrands.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

/// Integration tolerances. Convergence is declared when the accumulated error
/// estimate is at most `max(abs, rel * |value|)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub rel: f64,
    pub abs: f64,
    pub max_subdivisions: usize,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            rel: 1e-9,
            abs: 1e-12,
            max_subdivisions: 2000,
        }
    }
}

impl Tolerance {
    pub fn new(rel: f64, abs: f64) -> Self {
        Self {
            rel,
            abs,
            ..Self::default()
        }
    }

    /// Both tolerances multiplied by `factor`.
    pub fn scaled(self, factor: f64) -> Self {
        Self {
            rel: self.rel * factor,
            abs: self.abs * factor,
            ..self
        }
    }

    fn target(&self, value: f64) -> f64 {
        self.abs.max(self.rel * value.abs())
    }

    fn validate(&self) -> Result<()> {
        if !(self.rel >= 0.0 && self.abs >= 0.0) || (self.rel == 0.0 && self.abs == 0.0) {
            return Err(Error::Domain(format!(
                "tolerances must be non-negative and not both zero (rel {}, abs {})",
                self.rel, self.abs
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    /// Absolute error bound; never negative.
    pub error_estimate: f64,
    /// Number of integrand evaluations.
    pub evaluations: usize,
}

impl QuadratureResult {
    /// Scales value and error estimate by `k` (evaluation count unchanged).
    pub fn scaled(self, k: f64) -> Self {
        Self {
            value: self.value * k,
            error_estimate: self.error_estimate * k.abs(),
            evaluations: self.evaluations,
        }
    }
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];

// Gauss weights for XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone, Copy)]
struct Panel {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    // Largest error first; ties broken by position so refinement order is fully determined.
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.lo.total_cmp(&self.lo))
    }
}

fn kronrod_panel<F: FnMut(f64) -> f64>(f: &mut F, lo: f64, hi: f64) -> Panel {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = f(center);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    let mut abs_sum = WGK[7] * fc.abs();
    for (j, (&x, &w)) in XGK.iter().zip(WGK.iter()).take(7).enumerate() {
        let dx = half * x;
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        kronrod += w * (f1 + f2);
        abs_sum += w * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let value = kronrod * half;
    let raw = ((kronrod - gauss) * half).abs();
    let rounding = 50.0 * f64::EPSILON * abs_sum * half.abs();
    Panel {
        lo,
        hi,
        value,
        error: raw.max(rounding),
    }
}

fn adaptive_finite<F: FnMut(f64) -> f64>(
    mut f: F,
    lo: f64,
    hi: f64,
    tol: Tolerance,
) -> Result<QuadratureResult> {
    let first = kronrod_panel(&mut f, lo, hi);
    let mut evaluations = 15;
    let mut heap = BinaryHeap::new();
    heap.push(first);
    let mut value = first.value;
    let mut error = first.error;
    let mut panels = 1;

    while error > tol.target(value) {
        if panels >= tol.max_subdivisions {
            return Err(Error::QuadratureNonConvergence {
                value,
                error_estimate: error,
                evaluations,
            });
        }
        let worst = heap.pop().expect("heap holds at least one panel");
        let mid = 0.5 * (worst.lo + worst.hi);
        if !(mid > worst.lo && mid < worst.hi) {
            // Interval exhausted at machine resolution.
            return Err(Error::QuadratureNonConvergence {
                value,
                error_estimate: error,
                evaluations,
            });
        }
        let left = kronrod_panel(&mut f, worst.lo, mid);
        let right = kronrod_panel(&mut f, mid, worst.hi);
        evaluations += 30;
        panels += 1;
        heap.push(left);
        heap.push(right);
        // Re-sum rather than update incrementally to avoid drift.
        value = heap.iter().map(|p| p.value).sum();
        error = heap.iter().map(|p| p.error).sum();
    }

    if !value.is_finite() {
        return Err(Error::QuadratureNonConvergence {
            value,
            error_estimate: f64::INFINITY,
            evaluations,
        });
    }
    Ok(QuadratureResult {
        value,
        error_estimate: error,
        evaluations,
    })
}

/// Integrates `f` over `[lo, hi]`; either end may be infinite.
///
/// Infinite ends are mapped onto the unit interval with `x = lo + t/(1-t)`
/// (and its mirror), so no truncation cutoff is involved.
pub fn adaptive_quad<F: FnMut(f64) -> f64>(
    mut f: F,
    lo: f64,
    hi: f64,
    tol: Tolerance,
) -> Result<QuadratureResult> {
    tol.validate()?;
    if lo.is_nan() || hi.is_nan() || lo >= hi {
        return Err(Error::Domain(format!(
            "integration bounds must satisfy lo < hi (got {lo}, {hi})"
        )));
    }
    match (lo.is_finite(), hi.is_finite()) {
        (true, true) => adaptive_finite(f, lo, hi, tol),
        (true, false) => adaptive_finite(
            |t| {
                let s = 1.0 - t;
                f(lo + t / s) / (s * s)
            },
            0.0,
            1.0,
            tol,
        ),
        (false, true) => adaptive_finite(
            |t| {
                let s = 1.0 - t;
                f(hi - t / s) / (s * s)
            },
            0.0,
            1.0,
            tol,
        ),
        (false, false) => {
            // Fold the two half-lines onto one map: x = ±t/(1−t).
            let half = tol.scaled(0.5);
            let left = adaptive_finite(
                |t| {
                    let s = 1.0 - t;
                    f(-t / s) / (s * s)
                },
                0.0,
                1.0,
                half,
            )?;
            let right = adaptive_finite(
                |t| {
                    let s = 1.0 - t;
                    f(t / s) / (s * s)
                },
                0.0,
                1.0,
                half,
            )?;
            Ok(QuadratureResult {
                value: left.value + right.value,
                error_estimate: left.error_estimate + right.error_estimate,
                evaluations: left.evaluations + right.evaluations,
            })
        }
    }
}

/// Trapezoid rule over one period `[0, period)`, doubling the node count from
/// `initial_nodes` until two successive estimates agree.
///
/// Converges spectrally for smooth periodic integrands; the last difference
/// between successive levels is reported as the error estimate.
pub fn periodic_trapezoid<F: FnMut(f64) -> f64>(
    mut f: F,
    period: f64,
    initial_nodes: usize,
    tol: Tolerance,
) -> Result<QuadratureResult> {
    tol.validate()?;
    if !(period > 0.0 && period.is_finite()) {
        return Err(Error::Domain(format!("period must be positive, got {period}")));
    }
    let mut n = initial_nodes.max(2);
    let mut sum: f64 = (0..n).map(|k| f(period * k as f64 / n as f64)).sum();
    let mut evaluations = n;
    let mut value = sum * period / n as f64;
    const MAX_NODES: usize = 1 << 20;

    while n < MAX_NODES {
        // New nodes sit midway between the existing ones.
        let fresh: f64 = (0..n)
            .map(|k| f(period * (2 * k + 1) as f64 / (2 * n) as f64))
            .sum();
        evaluations += n;
        sum += fresh;
        n *= 2;
        let refined = sum * period / n as f64;
        let diff = (refined - value).abs();
        let rounding = 50.0 * f64::EPSILON * refined.abs();
        let error = diff.max(rounding);
        value = refined;
        if error <= tol.target(value) {
            return Ok(QuadratureResult {
                value,
                error_estimate: error,
                evaluations,
            });
        }
    }
    Err(Error::QuadratureNonConvergence {
        value,
        error_estimate: f64::INFINITY,
        evaluations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn polynomial_on_unit_interval() {
        let r = adaptive_quad(|x| x * x, 0.0, 1.0, Tolerance::default()).unwrap();
        assert_relative_eq!(r.value, 1.0 / 3.0, max_relative = 1e-14);
        assert!(r.error_estimate >= 0.0);
        assert_eq!(r.evaluations, 15);
    }

    #[test]
    fn semi_infinite_exponential_polynomial() {
        let r = adaptive_quad(
            |x| {
                let u = 1.0 + x + x * x;
                (-2.0 * x).exp() * u * u
            },
            0.0,
            f64::INFINITY,
            Tolerance::new(1e-13, 1e-15),
        )
        .unwrap();
        assert_relative_eq!(r.value, 13.0 / 4.0, max_relative = 1e-12);
    }

    #[test]
    fn doubly_infinite_gaussian() {
        let r = adaptive_quad(
            |x| (-x * x).exp(),
            f64::NEG_INFINITY,
            f64::INFINITY,
            Tolerance::new(1e-12, 1e-14),
        )
        .unwrap();
        assert_relative_eq!(r.value, PI.sqrt(), max_relative = 1e-11);
    }

    #[test]
    fn normalized_azimuth_is_one() {
        let r = periodic_trapezoid(|_| 1.0 / (2.0 * PI), 2.0 * PI, 4, Tolerance::default()).unwrap();
        assert_relative_eq!(r.value, 1.0, max_relative = 1e-15);
        let r = adaptive_quad(|_| 1.0 / (2.0 * PI), 0.0, 2.0 * PI, Tolerance::default()).unwrap();
        assert_relative_eq!(r.value, 1.0, max_relative = 1e-15);
    }

    #[test]
    fn periodic_rule_is_spectral() {
        // ∫ e^{cos φ} dφ over a period = 2π I0(1)
        let i0_1 = 1.266_065_877_752_008_4;
        let r = periodic_trapezoid(|p| p.cos().exp(), 2.0 * PI, 4, Tolerance::new(1e-13, 0.0)).unwrap();
        assert_relative_eq!(r.value, 2.0 * PI * i0_1, max_relative = 1e-14);
        assert!(r.evaluations <= 64);
    }

    #[test]
    fn rejects_bad_bounds_and_tolerances() {
        assert!(matches!(
            adaptive_quad(|x| x, 1.0, 0.0, Tolerance::default()),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            adaptive_quad(|x| x, 0.0, 1.0, Tolerance::new(0.0, 0.0)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn subdivision_limit_reports_partial_result() {
        let tol = Tolerance {
            rel: 1e-15,
            abs: 0.0,
            max_subdivisions: 5,
        };
        match adaptive_quad(|x: f64| x.sqrt(), 0.0, 1.0, tol) {
            Err(Error::QuadratureNonConvergence {
                error_estimate,
                evaluations,
                ..
            }) => {
                assert!(error_estimate > 0.0);
                assert!(evaluations > 15);
            }
            other => panic!("expected non-convergence, got {other:?}"),
        }
    }

    #[test]
    fn tightening_changes_value_within_prior_estimate() {
        let f = |x: f64| 1.0 / (1.0 + 25.0 * x * x);
        let loose = adaptive_quad(f, -1.0, 1.0, Tolerance::new(1e-6, 0.0)).unwrap();
        let tight = adaptive_quad(f, -1.0, 1.0, Tolerance::new(5e-7, 0.0)).unwrap();
        assert!((tight.value - loose.value).abs() <= loose.error_estimate);
        let exact = 2.0 * 5.0f64.atan() / 5.0;
        assert!((tight.value - exact).abs() <= tight.error_estimate);
    }
}
