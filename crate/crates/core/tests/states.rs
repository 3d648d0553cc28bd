mod support;

use std::f64::consts::PI;

use pqovs_core::specfun::bessel_j_zeros;
use pqovs_core::states::{
    bg_amplitude, density_radial, fidelity, make_bg, make_mbg, mbg_amplitude, overlap, peak_radius,
    radial_noise, Family, GridScheme, GridSpec, RadialVortexState,
};
use pqovs_core::{Complex64 as C64, Error};
use proptest::prelude::*;
use support::{default_grid, gl_grid, golden_max};

// 30-digit quadrature of the closed forms (mpmath).
const BG02_MBG02_FIDELITY: f64 = 0.001_234_821_294_304_865_797_503_268_153_54;
const BG12_NOISE: f64 = 0.101_628_853_821_390_249_522_507_658_403;

#[test]
fn constructors_normalize_over_the_charge_alpha_table() {
    for q in -3..=3 {
        for alpha in [0.5, 1.0, 2.0, 4.0, 8.0] {
            let g = default_grid(alpha, 1024);
            let bg = make_bg(q, alpha, g.clone()).unwrap();
            let mbg = make_mbg(q, alpha, g).unwrap();
            assert!((bg.norm() - 1.0).abs() <= 1e-8, "BG({q},{alpha})");
            assert!((mbg.norm() - 1.0).abs() <= 1e-8, "MBG({q},{alpha})");
            assert_eq!(bg.family(), Family::Bg);
            assert_eq!(mbg.family(), Family::Mbg);
        }
    }
}

#[test]
fn charge_sign_flips_only_the_phase_factor() {
    let g = default_grid(2.0, 512);
    for q in 1..4 {
        let (p, m) = (
            make_bg(q, 2.0, g.clone()).unwrap(),
            make_bg(-q, 2.0, g.clone()).unwrap(),
        );
        for (a, b) in p.samples().iter().zip(m.samples()) {
            assert!((a.norm() - b.norm()).abs() < 1e-15);
        }
        let (p, m) = (
            make_mbg(q, 2.0, g.clone()).unwrap(),
            make_mbg(-q, 2.0, g.clone()).unwrap(),
        );
        for (a, b) in p.samples().iter().zip(m.samples()) {
            assert!((a.norm() - b.norm()).abs() < 1e-15);
        }
    }
}

#[test]
fn refining_the_grid_changes_measurements_below_1e9() {
    let coarse = make_bg(1, 2.0, default_grid(2.0, 512)).unwrap();
    let fine = make_bg(1, 2.0, default_grid(2.0, 2048)).unwrap();
    assert!((radial_noise(&coarse) - radial_noise(&fine)).abs() < 1e-9);
    assert!((coarse.moment(1) - fine.moment(1)).abs() < 1e-9);
}

#[test]
fn overlap_and_noise_match_high_precision_reference() {
    let g = default_grid(2.0, 1024);
    let bg = make_bg(0, 2.0, g.clone()).unwrap();
    let mbg = make_mbg(0, 2.0, g.clone()).unwrap();
    assert!((fidelity(&bg, &mbg).unwrap() - BG02_MBG02_FIDELITY).abs() < 1e-12);
    let bg1 = make_bg(1, 2.0, g).unwrap();
    assert!((radial_noise(&bg1) - BG12_NOISE).abs() < 1e-12);
}

/// Cartesian midpoint rule over `(x, y)` with the full `e^{iq phi}` factor.
fn cartesian(f: impl Fn(f64, f64, f64) -> (C64, C64)) -> (C64, [f64; 3]) {
    let l = 9.0;
    let n = 600;
    let h = 2.0 * l / n as f64;
    let mut ov = C64::new(0.0, 0.0);
    let mut m = [0.0; 3];
    for i in 0..n {
        let x = -l + (i as f64 + 0.5) * h;
        for j in 0..n {
            let y = -l + (j as f64 + 0.5) * h;
            let r = x.hypot(y);
            let (a, b) = f(r, x, y);
            ov += a.conj() * b * h * h;
            let p = a.norm_sqr() * h * h;
            m[0] += p;
            m[1] += r * p;
            m[2] += r * r * p;
        }
    }
    (ov, m)
}

#[test]
fn radial_reduction_agrees_with_cartesian_quadrature() {
    let (_, m) = cartesian(|r, x, y| {
        let psi = bg_amplitude(1, 2.0, r).unwrap() * C64::new(0.0, y.atan2(x)).exp();
        (psi, psi)
    });
    assert!((m[0] - 1.0).abs() < 1e-6);
    assert!((m[2] - m[1] * m[1] - BG12_NOISE).abs() < 1e-5);

    let (ov, _) = cartesian(|r, _, _| {
        (
            bg_amplitude(0, 2.0, r).unwrap(),
            mbg_amplitude(0, 2.0, r).unwrap(),
        )
    });
    let g = default_grid(2.0, 1024);
    let radial = fidelity(
        &make_bg(0, 2.0, g.clone()).unwrap(),
        &make_mbg(0, 2.0, g).unwrap(),
    )
    .unwrap();
    assert!(
        (ov.norm_sqr() - radial).abs() < 1e-7,
        "{} vs {radial}",
        ov.norm_sqr()
    );
}

#[test]
fn different_charges_are_orthogonal() {
    let g = default_grid(1.0, 256);
    let a = make_bg(1, 1.0, g.clone()).unwrap();
    let b = make_bg(2, 1.0, g).unwrap();
    assert_eq!(overlap(&a, &b).unwrap(), C64::new(0.0, 0.0));
}

#[test]
fn mbg_peak_matches_closed_form_maximum() {
    let g = default_grid(4.0, 2048);
    let s = make_mbg(2, 4.0, g).unwrap();
    let p = peak_radius(&density_radial(&s)).unwrap();
    let exact = golden_max(
        |r| r * mbg_amplitude(2, 4.0, r).unwrap().norm_sqr(),
        5.0,
        6.5,
    );
    assert!((exact - 5.667_500_622_166_667).abs() < 1e-6);
    assert!((p - exact).abs() < 1e-6, "{p} vs {exact}");
}

#[test]
fn mbg_ring_sits_near_sqrt2_alpha_and_bg_rings_grow_with_charge() {
    // Reference maxima of rho |R(rho)|^2 (independent double-precision search).
    let mbg = [
        5.658_991_763_542_573,
        5.667_500_622_166_667,
        5.681_538_448_325_225,
        5.700_899_272_364_611,
        5.725_312_203_555_098,
        5.754_456_317_875_902,
    ];
    let bg = [
        0.369_072_267_195_229,
        0.558_201_440_997_656,
        0.738_716_248_067_087,
        0.913_147_152_206_255,
        1.082_638_422_249_508,
        1.247_816_425_333_153,
    ];
    let g = default_grid(4.0, 2048);
    for q in 1..=6 {
        let pm = peak_radius(&density_radial(&make_mbg(q, 4.0, g.clone()).unwrap())).unwrap();
        let pb = peak_radius(&density_radial(&make_bg(q, 4.0, g.clone()).unwrap())).unwrap();
        assert!((pm - mbg[q as usize - 1]).abs() < 1e-6, "MBG q={q}: {pm}");
        assert!((pb - bg[q as usize - 1]).abs() < 1e-6, "BG q={q}: {pb}");
    }
}

#[test]
fn bessel_zero_grid_nodes_are_scaled_zeros() {
    let g = GridSpec::new(GridScheme::BesselZero, 10.0, 256, 2).unwrap();
    let z = bessel_j_zeros(2, 257).unwrap();
    for (i, &r) in g.nodes().iter().enumerate() {
        assert!((r - z[i] * 10.0 / z[256]).abs() < 1e-12);
    }
    let s = make_bg(2, 1.0, std::sync::Arc::new(g)).unwrap();
    assert!((s.norm() - 1.0).abs() < 1e-8);
}

#[test]
fn constructor_errors() {
    let g = default_grid(2.0, 256);
    assert!(matches!(
        make_bg(1, 0.0, g.clone()),
        Err(Error::InvalidArgument(_))
    ));
    assert!(matches!(
        make_bg(1, 30.0, g.clone()),
        Err(Error::OverflowGuard { .. })
    ));
    let small = gl_grid(3.0, 256);
    assert!(matches!(
        make_mbg(1, 2.0, small.clone()),
        Err(Error::Truncation { .. })
    ));
    assert!(matches!(
        make_bg(1, 2.0, small),
        Err(Error::Truncation { .. })
    ));
    let other = gl_grid(12.0, 256);
    let a = make_bg(1, 2.0, g).unwrap();
    let b = make_bg(1, 2.0, other).unwrap();
    assert!(matches!(overlap(&a, &b), Err(Error::GridMismatch)));
    let bad = vec![C64::new(f64::NAN, 0.0); 256];
    assert!(RadialVortexState::from_samples(0, a.grid().clone(), bad).is_err());
}

#[test]
fn flat_profile_has_no_peak() {
    let g = default_grid(1.0, 64);
    let s = RadialVortexState::from_samples(0, g, vec![C64::new(0.0, 0.0); 64]).unwrap();
    assert!(matches!(
        peak_radius(&density_radial(&s)),
        Err(Error::FlatProfile)
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn family_members_are_normalized(q in -6i32..=6, alpha in 0.2f64..8.0) {
        let g = default_grid(alpha, 1024);
        prop_assert!((make_bg(q, alpha, g.clone()).unwrap().norm() - 1.0).abs() <= 1e-8);
        prop_assert!((make_mbg(q, alpha, g).unwrap().norm() - 1.0).abs() <= 1e-8);
    }

    #[test]
    fn fidelity_is_symmetric_and_bounded(q in 0i32..4, a in 0.3f64..4.0, b in 0.3f64..4.0) {
        let g = default_grid(a.max(b), 512);
        let x = make_bg(q, a, g.clone()).unwrap();
        let y = make_mbg(q, b, g).unwrap();
        let f = fidelity(&x, &y).unwrap();
        prop_assert!((f - fidelity(&y, &x).unwrap()).abs() < 1e-14);
        prop_assert!((0.0..=1.0 + 1e-12).contains(&f));
    }

    #[test]
    fn density_integrates_to_the_norm(q in -4i32..=4, alpha in 0.3f64..6.0) {
        let s = make_mbg(q, alpha, default_grid(alpha, 512)).unwrap();
        let d = density_radial(&s);
        prop_assert!((d.total() - s.norm()).abs() < 1e-12);
        prop_assert!(radial_noise(&s) >= 0.0);
    }
}

#[test]
fn density_is_2pi_rho_amplitude_squared() {
    let s = make_bg(1, 1.0, default_grid(1.0, 128)).unwrap();
    let d = density_radial(&s);
    for ((&r, &v), a) in d.radii.iter().zip(&d.values).zip(s.samples()) {
        assert!((v - 2.0 * PI * r * a.norm_sqr()).abs() < 1e-15);
    }
}
