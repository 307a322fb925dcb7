use nagumo_core::spectrum::{
    border_apex, classify_and_threshold, consistent_splitting_bound, decaying_mode, default_k_grid,
    fredholm_border, h_function, select_weight, Classification,
};
use nagumo_core::{FrontCase, Model, Side};
use num_complex::Complex64;
use proptest::prelude::*;

/// Symbol of the weighted constant-coefficient operator at wave number k.
fn symbol(d: f64, c: f64, fp: f64, a: f64, k: f64) -> Complex64 {
    let z = Complex64::new(-a, k);
    d * z * z + c * z + fp
}

#[test]
fn border_samples_match_symbol() {
    let m = Model::shigesada(1.0, 0.5).unwrap();
    let a = 0.57;
    for eps in [0.0, 1e-2] {
        for (side, u) in [(Side::Minus, 1.0), (Side::Plus, 0.5)] {
            let curve = fredholm_border(&m, FrontCase::Nn, 1.0, a, eps, side, &default_k_grid());
            for s in &curve.samples {
                let z = symbol(m.diff(u) + eps, 1.0, m.react_1(u), a, s[0]);
                assert!((z.re - s[1]).abs() < 1e-12 && (z.im - s[2]).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn nn_case_split_and_threshold() {
    let m = Model::shigesada(1.0, 0.5).unwrap();
    let t = classify_and_threshold(&m).unwrap();
    assert_eq!(t.classification, Classification::CaseI);
    // case (i): h(cbar) > 1 - rho and c0 = cbar
    assert!(t.h_at_cbar > t.one_minus_rho);
    assert!((t.c0 - m.threshold_speed()).abs() < 1e-12);

    let m = Model::shigesada(1.0, 0.25).unwrap();
    let t = classify_and_threshold(&m).unwrap();
    assert_eq!(t.classification, Classification::CaseII);
    assert!(t.c0 > m.threshold_speed());
    assert!((h_function(&m, t.c0) - t.one_minus_rho).abs() < 1e-9);
}

#[test]
fn nn_plan_at_reference() {
    let m = Model::shigesada(1.0, 0.5).unwrap();
    let p = select_weight(&m, FrontCase::Nn, 1.0).unwrap();
    // a1(1/2) = 1/3, a2(1) = (1 + sqrt 5)/4
    assert!((p.a_lo - 1.0 / 3.0).abs() < 1e-14);
    assert!((p.a_hi - (1.0 + 5f64.sqrt()) / 4.0).abs() < 1e-14);
    assert!((p.a - 0.5 * (p.a_lo + p.a_hi)).abs() < 1e-15);
    assert!(p.feasible && p.mu0 > 0.0);
    assert!(consistent_splitting_bound(&m, FrontCase::Nn, 1.0, p.a, 0.0) <= -p.mu0);
}

#[test]
fn nn_below_c0_is_infeasible() {
    let m = Model::shigesada(1.0, 0.25).unwrap();
    let t = classify_and_threshold(&m).unwrap();
    let c = 0.5 * (m.threshold_speed() + t.c0);
    let p = select_weight(&m, FrontCase::Nn, c).unwrap();
    assert!(!p.feasible);
    assert!(p.infeasible_reason.unwrap().contains("c0"));
    assert!(select_weight(&m, FrontCase::Nd, 0.5 * m.threshold_speed()).is_err());
}

#[test]
fn stationary_plan_is_unweighted() {
    let m = Model::shigesada(1.0, 0.625).unwrap();
    let p = select_weight(&m, FrontCase::SnIncreasing, 0.0).unwrap();
    assert_eq!(p.a, 0.0);
    assert_eq!(p.classification, Classification::Stationary);
    // f'(0) = -5/8, f'(1) = -3/8
    assert!((p.mu0 - 0.375).abs() < 1e-15);
}

#[test]
fn decaying_mode_solves_the_dispersion_relation() {
    let m = Model::shigesada(1.0, 0.5).unwrap();
    let (c, a) = (1.0, 0.57);
    for lambda in [Complex64::new(0.0, 0.0), Complex64::new(-0.01, 0.3), Complex64::new(1.0, -2.0)] {
        let (nu, _) = decaying_mode(&m, c, a, lambda).unwrap();
        let d = m.diff(m.alpha);
        let r = d * nu * nu + (c - 2.0 * a * d) * nu + (d * a * a - a * c + m.react_1(m.alpha)) - lambda;
        assert!(r.norm() < 1e-10, "lambda {lambda}: residual {r}");
    }
}

proptest! {
    #[test]
    fn border_max_is_apex(b in 0.1f64..3.0, alpha in 0.1f64..0.9, c in 0.0f64..3.0, a in -1.0f64..2.0, eps in 0.0f64..0.1) {
        let m = Model::shigesada(b, alpha).unwrap();
        let (um, up) = FrontCase::Nd.ends(alpha);
        for (side, u) in [(Side::Minus, um), (Side::Plus, up)] {
            let curve = fredholm_border(&m, FrontCase::Nd, c, a, eps, side, &default_k_grid());
            prop_assert!((curve.max_re - border_apex(&m, u, c, a, eps)).abs() <= 1e-12);
        }
    }

    #[test]
    fn exact_split_agrees_with_float_test(b in 0.1f64..3.0, alpha in 0.05f64..0.95) {
        let m = Model::shigesada(b, alpha).unwrap();
        let t = classify_and_threshold(&m).unwrap();
        let lhs = (alpha + b) * (1.0 + 2.0 * alpha);
        prop_assume!((lhs - (1.0 + b)).abs() > 1e-9);
        let want = if lhs > 1.0 + b { Classification::CaseI } else { Classification::CaseII };
        prop_assert_eq!(t.classification, want);
    }
}
