use std::f64::consts::{FRAC_PI_2, PI};

use casimir_core::closed_form::{annulus_energy, ring_energy};
use casimir_core::oracle::{
    annulus_energy_quadrature, annulus_energy_with_atom, ring_energy_quadrature,
    ring_energy_with_atom, ring_force_quadrature,
};
use casimir_core::{AtomConfiguration, PolarizabilityTensor, Polarization, Tolerance};

fn cfg(h: f64, t: f64) -> AtomConfiguration {
    AtomConfiguration::new(h, t).unwrap()
}

fn tol() -> Tolerance {
    Tolerance::default()
}

/// Azimuth-averaged angular bracket times `r⁴` at θ = 0 and θ = π/2, for a
/// ring of radius `rho` with local tensor `d d`. Derived symbolically, so it
/// does not share any code path with the quadrature.
fn averaged_bracket(pattern: &Polarization, h: f64, rho: f64) -> (f64, f64) {
    let (h2, r2) = (h * h, rho * rho);
    match pattern {
        Polarization::Axial => (20.0 * h2 * h2 - 30.0 * h2 * r2 + 13.0 * r2 * r2, 31.5 * h2 * r2),
        Polarization::Radial => (63.0 * h2 * r2, 6.5 * h2 * h2 - 15.0 * h2 * r2 + 10.0 * r2 * r2),
        Polarization::Azimuthal => (0.0, 6.5 * (h2 + r2) * (h2 + r2)),
        Polarization::Tensor(_) => unreachable!(),
    }
}

/// Reduced ring energy from the averaged bracket: `Ê = −4ρ P / (ρ² + h²)^{11/2}`.
fn symbolic_ring_energy(pattern: &Polarization, h: f64, theta: f64, rho: f64) -> f64 {
    let (p0, p90) = averaged_bracket(pattern, h, rho);
    let (s, c) = theta.sin_cos();
    let p = p0 * c * c + p90 * s * s;
    -4.0 * rho * p / (rho * rho + h * h).powf(5.5)
}

#[test]
fn axial_ring_quadrature_matches_closed_form_on_grid() {
    for i in 0..10 {
        let h = -3.0 + 6.0 * i as f64 / 9.0;
        for j in 0..10 {
            let t = PI * j as f64 / 10.0;
            let c = cfg(h, t);
            let q = ring_energy_quadrature(&c, &Polarization::Axial, tol()).unwrap();
            let exact = ring_energy(&c);
            assert!(
                (q.value - exact).abs() <= 1e-8 * exact.abs().max(1e-300) || (q.value - exact).abs() < 1e-14,
                "h {h} t {t}: {} vs {exact}",
                q.value
            );
        }
    }
}

#[test]
fn axial_annulus_quadrature_matches_closed_form_on_grid() {
    for b in [1.2, 1.6505, 2.0, 5.0] {
        for i in 0..10 {
            let h = -3.0 + 6.0 * i as f64 / 9.0;
            for j in 0..10 {
                let c = cfg(h, PI * j as f64 / 10.0);
                let q = annulus_energy_quadrature(&c, &Polarization::Axial, b, tol()).unwrap();
                let exact = annulus_energy(&c, b).unwrap();
                assert!(
                    (q.value - exact).abs() <= 1e-8 * exact.abs() || (q.value - exact).abs() < 1e-14,
                    "b {b} h {h}: {} vs {exact}",
                    q.value
                );
            }
        }
    }
}

#[test]
fn non_axial_ring_patterns_match_symbolic_average() {
    for pattern in [Polarization::Radial, Polarization::Azimuthal, Polarization::Axial] {
        for i in 0..9 {
            let h = -2.0 + 0.5 * i as f64;
            for t in [0.0, 0.4, FRAC_PI_2, 2.5] {
                for rho in [1.0, 1.7] {
                    let expected = symbolic_ring_energy(&pattern, h, t, rho);
                    let scale = symbolic_ring_energy(&pattern, h, 0.0, rho)
                        .abs()
                        .max(symbolic_ring_energy(&pattern, h, FRAC_PI_2, rho).abs());
                    let q = ring_energy_with_atom(
                        &cfg(h, t).atom_tensor(),
                        h,
                        rho,
                        &pattern,
                        tol(),
                    )
                    .unwrap();
                    assert!(
                        (q.value - expected).abs() <= 1e-10 * scale,
                        "{pattern} h {h} t {t}: {} vs {expected}",
                        q.value
                    );
                }
            }
        }
    }
}

#[test]
fn radial_ring_delta_e_zeros() {
    // ΔE ∝ −(63h² − (6.5h⁴ − 15h² + 10)): zeros at h² = (78 ∓ √5824)/13.
    let roots: Vec<f64> = [-1.0, 1.0]
        .iter()
        .map(|s| ((78.0 + s * 5824f64.sqrt()) / 13.0).sqrt())
        .collect();
    assert!((roots[0] - 0.36).abs() < 0.01 && (roots[1] - 3.45).abs() < 0.01);
    for &h in &roots {
        let e0 = ring_energy_quadrature(&cfg(h, 0.0), &Polarization::Radial, tol()).unwrap();
        let e90 = ring_energy_quadrature(&cfg(h, FRAC_PI_2), &Polarization::Radial, tol()).unwrap();
        assert!((e0.value - e90.value).abs() <= 1e-9 * e0.value.abs());
    }
}

#[test]
fn annulus_of_radial_rings_matches_radial_integral_of_symbolic_average() {
    // Radial integral of the symbolic ring by composite Simpson on a fine grid.
    let (h, t, b) = (0.7, 0.3, 2.5);
    let n = 4000;
    let step = (b - 1.0) / n as f64;
    let mut s = 0.0;
    for k in 0..=n {
        let w = if k == 0 || k == n { 1.0 } else if k % 2 == 1 { 4.0 } else { 2.0 };
        s += w * symbolic_ring_energy(&Polarization::Radial, h, t, 1.0 + k as f64 * step);
    }
    let simpson = s * step / 3.0;
    let q = annulus_energy_quadrature(&cfg(h, t), &Polarization::Radial, b, tol()).unwrap();
    assert!((q.value - simpson).abs() <= 1e-9 * simpson.abs());
}

#[test]
fn thin_annulus_converges_to_ring_at_first_order() {
    let c = cfg(0.8, 0.2);
    let ring = ring_energy(&c);
    let mut errors = Vec::new();
    for k in 3..7 {
        let delta = 10f64.powi(-k);
        let q = annulus_energy_quadrature(&c, &Polarization::Axial, 1.0 + delta, Tolerance::new(1e-12, 0.0)).unwrap();
        errors.push((q.value / delta - ring).abs());
    }
    for w in errors.windows(2) {
        let ratio = w[0] / w[1];
        assert!((ratio - 10.0).abs() < 1.0, "errors {errors:?}");
    }
}

#[test]
fn pattern_energies_sum_to_isotropic_body() {
    let iso = Polarization::Tensor(PolarizabilityTensor::identity());
    for (h, t) in [(0.0, 0.0), (0.4, 0.9), (-1.3, 2.0), (2.5, FRAC_PI_2)] {
        let c = cfg(h, t);
        let parts: f64 = [Polarization::Axial, Polarization::Radial, Polarization::Azimuthal]
            .iter()
            .map(|p| ring_energy_quadrature(&c, p, tol()).unwrap().value)
            .sum();
        let whole = ring_energy_quadrature(&c, &iso, tol()).unwrap().value;
        assert!((parts - whole).abs() <= 1e-10 * whole.abs());

        let parts: f64 = [Polarization::Axial, Polarization::Radial, Polarization::Azimuthal]
            .iter()
            .map(|p| annulus_energy_quadrature(&c, p, 1.8, tol()).unwrap().value)
            .sum();
        let whole = annulus_energy_quadrature(&c, &iso, 1.8, tol()).unwrap().value;
        assert!((parts - whole).abs() <= 1e-10 * whole.abs());
    }
}

#[test]
fn error_estimates_are_honest() {
    let mut honest = 0;
    let mut total = 0;
    for pattern in [Polarization::Axial, Polarization::Radial] {
        for i in 0..5 {
            let h = 0.2 + 0.6 * i as f64;
            for j in 0..4 {
                let c = cfg(h, PI * j as f64 / 4.0);
                let loose = Tolerance::new(1e-6, 0.0);
                let a = annulus_energy_quadrature(&c, &pattern, 3.0, loose).unwrap();
                let b = annulus_energy_quadrature(&c, &pattern, 3.0, loose.scaled(0.1)).unwrap();
                total += 1;
                if (a.value - b.value).abs() <= a.error_estimate {
                    honest += 1;
                }
            }
        }
    }
    assert!(honest as f64 >= 0.95 * total as f64, "{honest}/{total}");
}

#[test]
fn ring_force_quadrature_consistent_for_radial() {
    // −dE/dh of the symbolic radial ring, central difference.
    for (h, t) in [(0.3, 0.0), (1.1, 0.7), (2.0, FRAC_PI_2)] {
        let s = 1e-5;
        let fd = -(symbolic_ring_energy(&Polarization::Radial, h + s, t, 1.0)
            - symbolic_ring_energy(&Polarization::Radial, h - s, t, 1.0))
            / (2.0 * s);
        let q = ring_force_quadrature(&cfg(h, t), &Polarization::Radial, tol()).unwrap();
        assert!((q.value - fd).abs() <= 1e-7 * fd.abs().max(1e-9), "{} vs {fd}", q.value);
    }
}

#[test]
fn arbitrary_atom_tensor_is_linear_in_orientation_parts() {
    // An isotropic atom is the sum of three orthogonal single-axis atoms.
    let (h, b) = (0.9, 2.0);
    let id = PolarizabilityTensor::identity();
    let whole = annulus_energy_with_atom(&id, h, &Polarization::Radial, b, tol()).unwrap().value;
    let parts: f64 = [
        casimir_core::Vec3::X,
        casimir_core::Vec3::Y,
        casimir_core::Vec3::Z,
    ]
    .iter()
    .map(|d| {
        annulus_energy_with_atom(&PolarizabilityTensor::uniaxial(*d), h, &Polarization::Radial, b, tol())
            .unwrap()
            .value
    })
    .sum();
    assert!((whole - parts).abs() <= 1e-10 * whole.abs());
}
