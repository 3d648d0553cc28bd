mod support;

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use pqovs_core::propagator::{
    bruteforce_amplitude, fourier_planes, kernel, propagate, propagate_bruteforce, propagate_with,
    scan_fidelity, scan_planes, Convention, PropagationParams, PropagatorOptions,
};
use pqovs_core::states::{fidelity, make_bg, make_mbg};
use pqovs_core::{Complex64 as C64, Error};
use proptest::prelude::*;
use support::default_grid;

fn at(k: f64, z: f64) -> PropagationParams {
    PropagationParams::new(k, z).unwrap()
}

#[test]
fn kernel_magnitudes_and_exponent() {
    let p = at(1.0, FRAC_PI_2);
    let u = kernel(0.3, 0.2, 1.1, 2.0, &p, Convention::Unitary).unwrap();
    assert!((u.norm() - 1.0 / TAU).abs() < 1e-15);
    let a = kernel(0.3, 0.2, 1.1, 2.0, &p, Convention::AsPrinted).unwrap();
    assert!((a.norm() - (1.0 / TAU).sqrt()).abs() < 1e-15);
    // rho0 = rho = 1, phi0 = phi: the exponent is +i.
    let k = kernel(1.0, 0.7, 1.0, 0.7, &p, Convention::Unitary).unwrap();
    let expect = C64::new(0.0, 1.0 / TAU) * C64::new(0.0, 1.0).exp();
    assert!((k - expect).norm() < 1e-15);
    assert!(matches!(
        kernel(1.0, 0.0, 1.0, 0.0, &at(1.0, PI), Convention::Unitary),
        Err(Error::SingularPlane { .. })
    ));
}

#[test]
fn fast_path_matches_double_quadrature_oracle() {
    let g = default_grid(1.0, 400);
    let s = make_bg(1, 1.0, g).unwrap();
    let p = at(1.0, FRAC_PI_2);
    let fast = propagate(&s, &p).unwrap();
    let slow = propagate_bruteforce(&s, &p, 256).unwrap();
    let worst = fast
        .samples()
        .iter()
        .zip(slow.samples())
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    assert!(worst <= 1e-4, "pointwise gap {worst}");
}

#[test]
fn oracle_output_carries_the_input_charge() {
    let s = make_bg(2, 1.0, default_grid(1.0, 200)).unwrap();
    let p = at(1.0, 1.1);
    for &rho in &[0.4, 1.3, 2.2] {
        let base = bruteforce_amplitude(&s, &p, 256, rho, 0.0).unwrap();
        for &phi in &[0.5, 1.7, 4.0] {
            let v = bruteforce_amplitude(&s, &p, 256, rho, phi).unwrap();
            let fit = base * C64::new(0.0, 2.0 * phi).exp();
            assert!((v - fit).norm() <= 1e-6);
        }
    }
}

#[test]
fn oracle_conserves_norm_at_its_resolution() {
    let s = make_mbg(1, 1.0, default_grid(1.0, 400)).unwrap();
    for z in [0.4, 1.0, 2.3] {
        let out = propagate_bruteforce(&s, &at(1.0, z), 256).unwrap();
        assert!((out.norm() - 1.0).abs() < 2e-3, "z={z}: {}", out.norm());
    }
}

#[test]
fn oracle_rejects_singular_planes_and_coarse_angles() {
    let s = make_bg(0, 1.0, default_grid(1.0, 64)).unwrap();
    assert!(matches!(
        bruteforce_amplitude(&s, &at(1.0, 0.01), 256, 1.0, 0.0),
        Err(Error::SingularPlane { .. })
    ));
    assert!(bruteforce_amplitude(&s, &at(1.0, 1.0), 64, 1.0, 0.0).is_err());
}

#[test]
fn identity_and_parity_planes() {
    let s = make_bg(3, 1.5, default_grid(1.5, 256)).unwrap();
    let same = propagate(&s, &at(1.0, 0.0)).unwrap();
    assert_eq!(same.samples(), s.samples());
    let par = propagate(&s, &at(1.0, PI)).unwrap();
    for (a, b) in par.samples().iter().zip(s.samples()) {
        assert_eq!(*a, -*b);
    }
    let strict = PropagatorOptions {
        analytic_limits: false,
        ..Default::default()
    };
    assert!(matches!(
        propagate_with(&s, &at(1.0, PI), &strict),
        Err(Error::SingularPlane { .. })
    ));
}

/// Fidelity with the input near the parity plane, extrapolated to `z = pi`
/// from `pi +- 0.01` and `pi +- 0.02`, agrees with the analytic limit.
#[test]
fn parity_plane_limit_is_continuous() {
    let s = make_bg(1, 1.0, default_grid(1.0, 512)).unwrap();
    let f = |d: f64| {
        let up = fidelity(&s, &propagate(&s, &at(1.0, PI + d)).unwrap()).unwrap();
        let dn = fidelity(&s, &propagate(&s, &at(1.0, PI - d)).unwrap()).unwrap();
        0.5 * (up + dn)
    };
    let extrapolated = (4.0 * f(0.01) - f(0.02)) / 3.0;
    assert!((extrapolated - 1.0).abs() < 1e-8, "{extrapolated}");
    let limit = fidelity(&s, &propagate(&s, &at(1.0, PI)).unwrap()).unwrap();
    assert!((limit - 1.0).abs() < 1e-12);
}

#[test]
fn fourier_plane_list() {
    let l = fourier_planes(1.0, 2).unwrap();
    let z: Vec<f64> = l.planes.iter().map(|p| p.z).collect();
    assert_eq!(z, vec![FRAC_PI_2, 3.0 * FRAC_PI_2, 5.0 * FRAC_PI_2]);
    assert_eq!(fourier_planes(2.0, 0).unwrap().planes[0].z, PI / 4.0);
    assert!(fourier_planes(-1.0, 1).is_err());
    let many = fourier_planes(0.7, 50).unwrap();
    for w in many.planes.windows(2) {
        assert!(w[1].z > w[0].z);
    }
    for p in &many.planes {
        let r = (0.7 * p.z).rem_euclid(PI);
        assert!((r - FRAC_PI_2).abs() <= 1e-12);
    }
}

#[test]
fn fidelity_scan_peaks_at_the_fourier_plane() {
    let g = default_grid(1.0, 512);
    let bg = make_bg(1, 1.0, g.clone()).unwrap();
    let mbg = make_mbg(1, 1.0, g).unwrap();
    let scan = scan_fidelity(&bg, &mbg, 1.0, 0.1, 3.1, 60).unwrap();
    let best = scan.best().unwrap();
    let nearest = scan
        .rows
        .iter()
        .min_by(|a, b| (a.z - FRAC_PI_2).abs().total_cmp(&(b.z - FRAC_PI_2).abs()))
        .unwrap();
    assert_eq!(best.z, nearest.z);
    for r in &scan.rows {
        assert!((0.0..=1.0 + 1e-9).contains(&r.fidelity) && r.norm > 0.0);
    }
    let own = scan_fidelity(&bg, &bg, 1.0, 0.0, 0.5, 5).unwrap();
    assert!((own.rows[0].fidelity - 1.0).abs() < 1e-8);
}

#[test]
fn scan_planes_nudge_off_singularities() {
    let z = scan_planes(1.0, 0.0, PI, 3).unwrap();
    assert!(z[0] > 0.0 && (1.0 * z[0]).sin().abs() >= 1e-6);
    assert!((z[2]).sin().abs() >= 1e-6);
    assert!(scan_planes(1.0, 0.0, 1.0, 1).is_err());
}

#[test]
fn as_printed_norm_follows_prefactor_ratio() {
    let s = make_bg(0, 1.0, default_grid(1.0, 512)).unwrap();
    let opts = PropagatorOptions {
        convention: Convention::AsPrinted,
        ..Default::default()
    };
    let out = propagate_with(&s, &at(1.0, FRAC_PI_2), &opts).unwrap();
    // |sqrt(1/2pi)| / |1/2pi| = sqrt(2pi)
    assert!((out.norm() - TAU.sqrt()).abs() < 1e-8);
}

#[test]
fn full_period_returns_the_input() {
    for k in [1.0, 2.5] {
        let s = make_mbg(2, 2.0, default_grid(2.0, 512)).unwrap();
        let out = propagate(&s, &at(k, TAU / k)).unwrap();
        assert!((fidelity(&s, &out).unwrap() - 1.0).abs() < 1e-8);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn composition_law(z1 in 0.1f64..3.0, z2 in 0.1f64..3.0, q in -2i32..=2) {
        prop_assume!((z1 + z2).sin().abs() > 1e-3 && z1.sin().abs() > 1e-3 && z2.sin().abs() > 1e-3);
        let s = make_bg(q, 1.0, default_grid(1.0, 384)).unwrap();
        let two = propagate(&propagate(&s, &at(1.0, z1)).unwrap(), &at(1.0, z2)).unwrap();
        let one = propagate(&s, &at(1.0, z1 + z2)).unwrap();
        prop_assert!(fidelity(&two, &one).unwrap() >= 1.0 - 1e-8);
        prop_assert_eq!(two.charge(), s.charge());
    }

    #[test]
    fn unitarity(z in 0.05f64..3.1, q in -3i32..=3) {
        prop_assume!(z.sin().abs() >= 0.05);
        let s = make_mbg(q, 1.0, default_grid(1.0, 384)).unwrap();
        prop_assert!((propagate(&s, &at(1.0, z)).unwrap().norm() - 1.0).abs() <= 1e-8);
    }
}
