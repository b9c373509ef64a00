use std::f64::consts::PI;

use casimir_core::closed_form::{
    annulus_energy, annulus_force, plate_energy, plate_force, ring_density_at_radius, ring_energy,
    ring_force,
};
use casimir_core::AtomConfiguration;
use proptest::prelude::*;

fn cfg(h: f64, t: f64) -> AtomConfiguration {
    AtomConfiguration::new(h, t).unwrap()
}

/// Energies of every axial body at a configuration.
fn energies(c: &AtomConfiguration, b: f64) -> [f64; 3] {
    [ring_energy(c), annulus_energy(c, b).unwrap(), plate_energy(c)]
}

/// Richardson-extrapolated central difference of `−dE/dh`.
fn fd_force(e: impl Fn(f64) -> f64, h: f64) -> f64 {
    let step = 1e-5;
    let d = |s: f64| (e(h + s) - e(h - s)) / (2.0 * s);
    -(4.0 * d(step / 2.0) - d(step)) / 3.0
}

proptest! {
    #[test]
    fn energies_even_in_height(h in -4.0f64..4.0, t in 0.0f64..PI, b in 1.0f64..6.0) {
        let up = energies(&cfg(h, t), b);
        let down = energies(&cfg(-h, t), b);
        for (u, d) in up.iter().zip(down.iter()) {
            prop_assert!((u - d).abs() <= 1e-14 * u.abs().max(1e-300));
        }
    }

    #[test]
    fn three_angles_predict_a_fourth(
        h in -3.0f64..3.0, b in 1.01f64..6.0,
        t in prop::array::uniform4(0.0f64..PI),
    ) {
        // Solve E(θ_k) = e_iso + e_aniso cos 2θ_k by least squares on three angles.
        let c: Vec<f64> = t.iter().map(|x| (2.0 * x).cos()).collect();
        let spread = (c[0] - c[1]).abs().max((c[0] - c[2]).abs()).max((c[1] - c[2]).abs());
        prop_assume!(spread > 0.1);
        for body in 0..3 {
            let e: Vec<f64> = t.iter().map(|&x| energies(&cfg(h, x), b)[body]).collect();
            let n = 3.0;
            let (sc, se) = (c[..3].iter().sum::<f64>(), e[..3].iter().sum::<f64>());
            let scc: f64 = c[..3].iter().map(|x| x * x).sum();
            let sce: f64 = c[..3].iter().zip(&e[..3]).map(|(x, y)| x * y).sum();
            let aniso = (n * sce - sc * se) / (n * scc - sc * sc);
            let iso = (se - aniso * sc) / n;
            let scale = e.iter().fold(0.0f64, |m, x| m.max(x.abs())).max(1e-300);
            prop_assert!((iso + aniso * c[3] - e[3]).abs() <= 1e-12 * scale.max(iso.abs() + aniso.abs()));
        }
    }

    #[test]
    fn analytic_forces_match_finite_differences(h in -3.0f64..3.0, t in 0.0f64..PI, b in 1.05f64..5.0) {
        let f = ring_force(&cfg(h, t));
        let fd = fd_force(|x| ring_energy(&cfg(x, t)), h);
        if f.abs() > 1e-6 {
            prop_assert!((f - fd).abs() <= 1e-8 * f.abs(), "ring {f} vs {fd}");
        }
        let f = annulus_force(&cfg(h, t), b).unwrap();
        let fd = fd_force(|x| annulus_energy(&cfg(x, t), b).unwrap(), h);
        if f.abs() > 1e-6 {
            prop_assert!((f - fd).abs() <= 1e-8 * f.abs(), "annulus {f} vs {fd}");
        }
        let f = plate_force(&cfg(h, t));
        let fd = fd_force(|x| plate_energy(&cfg(x, t)), h);
        if f.abs() > 1e-6 {
            prop_assert!((f - fd).abs() <= 1e-8 * f.abs(), "plate {f} vs {fd}");
        }
    }
}

#[test]
fn annulus_force_example_matches_finite_difference() {
    let f = annulus_force(&cfg(1.0, 0.0), 1.5).unwrap();
    let fd = fd_force(|x| annulus_energy(&cfg(x, 0.0), 1.5).unwrap(), 1.0);
    assert!((f - fd).abs() <= 1e-8 * f.abs());
}

#[test]
fn nesting_identity_on_grid() {
    // ∂Ê_annulus/∂b̂ equals the ring energy density at radius b̂.
    for i in 0..12 {
        let rho = 1.05 + 0.35 * i as f64;
        for j in 0..12 {
            let h = -3.0 + 0.5 * j as f64;
            for k in 0..6 {
                let c = cfg(h, k as f64 * PI / 6.0);
                let step = 1e-4 * rho;
                let e = |b: f64| annulus_energy(&c, b).unwrap();
                // Fourth-order central difference in b̂.
                let d = (-e(rho + 2.0 * step) + 8.0 * e(rho + step) - 8.0 * e(rho - step)
                    + e(rho - 2.0 * step))
                    / (12.0 * step);
                let expected = ring_density_at_radius(rho, &c);
                assert!(
                    (d - expected).abs() <= 1e-10 * expected.abs().max(1.0),
                    "rho {rho} h {h}: {d} vs {expected}"
                );
            }
        }
    }
}

#[test]
fn unit_ring_density_is_ring_energy() {
    for j in 0..20 {
        let c = cfg(-2.0 + 0.2 * j as f64, 0.37 * j as f64);
        let a = ring_density_at_radius(1.0, &c);
        assert!((a - ring_energy(&c)).abs() <= 1e-14 * a.abs().max(1e-300));
    }
}
