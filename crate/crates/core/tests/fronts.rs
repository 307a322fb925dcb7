mod common;

use common::{front, model, CASES};
use nagumo_core::fronts::{coefficient_bound, solve_front, verify_decay, DecayLaw, GridConfig};
use nagumo_core::io::{profile_csv, read_profile, ProfileSidecar};
use nagumo_core::{Error, FrontCase, Model, Side};

#[test]
fn reference_fronts_satisfy_invariants() {
    for case in CASES {
        let f = front(case);
        let inv = f.check_invariants(&model(case), 1e-7);
        assert!(inv.iter().all(|(_, ok)| *ok), "{}: {inv:?}", case.tag());
        assert_eq!(f.x[f.phase_index], 0.0);
        assert_eq!(f.len(), f.phi.len());
        assert!(f.x.windows(2).all(|w| w[1] > w[0]));
    }
}

#[test]
fn stationary_front_conserves_the_first_integral() {
    let m = model(FrontCase::SnIncreasing);
    let f = front(FrontCase::SnIncreasing);
    let worst = f
        .phi
        .iter()
        .zip(&f.phi_x)
        .map(|(&p, &v)| m.hamiltonian(p, v).unwrap().abs())
        .fold(0.0f64, f64::max);
    assert!(worst < 1e-10, "max |H| = {worst:e}");
}

#[test]
fn decreasing_stationary_front_mirrors_increasing() {
    let inc = front(FrontCase::SnIncreasing);
    let dec = front(FrontCase::SnDecreasing);
    assert_eq!(inc.len(), dec.len());
    let n = inc.len();
    for i in 0..n {
        let j = n - 1 - i;
        assert!((inc.x[i] + dec.x[j]).abs() < 1e-12);
        assert!((inc.phi[i] - dec.phi[j]).abs() < 1e-12);
        assert!((inc.phi_x[i] + dec.phi_x[j]).abs() < 1e-12);
    }
}

#[test]
fn stationary_front_has_a_sharp_contact() {
    // phi_x ~ -sqrt(-2 f'(0) / (3 D'(0))) sqrt(phi) near phi = 0
    let m = model(FrontCase::SnIncreasing);
    let f = front(FrontCase::SnIncreasing);
    let k = (-2.0 * m.react_1(0.0) / (3.0 * m.diff_1(0.0))).sqrt();
    let i = f.phi.iter().position(|&p| p > 1e-6).unwrap();
    let ratio = f.phi_x[i] / f.phi[i].sqrt();
    assert!((ratio - k).abs() / k < 1e-2, "ratio {ratio} vs {k}");
    assert!(f.l_minus < 10.0);
}

#[test]
fn non_degenerate_rates_match_linearisation() {
    // sN at 1: sqrt(-f'(1)/D(1)) = sqrt(3)/4; Nd at 0: |f'(0)|/c = 1/2
    let r = verify_decay(front(FrontCase::SnIncreasing), &model(FrontCase::SnIncreasing)).unwrap();
    let plus = r.iter().find(|d| d.side == Side::Plus).unwrap();
    assert_eq!(plus.law, DecayLaw::Exponential);
    assert!((plus.fitted_rate - 3f64.sqrt() / 4.0).abs() / (3f64.sqrt() / 4.0) < 0.05);

    let r = verify_decay(front(FrontCase::Nd), &model(FrontCase::Nd)).unwrap();
    let minus = r.iter().find(|d| d.side == Side::Minus).unwrap();
    assert!(minus.relative_error < 0.05, "{minus:?}");
}

#[test]
fn node_tails_follow_the_slow_direction() {
    // alpha is a stable node; the tail rate is the smaller root 1/3
    for case in [FrontCase::Nd, FrontCase::Nn] {
        let r = verify_decay(front(case), &model(case)).unwrap();
        let plus = r.iter().find(|d| d.side == Side::Plus).unwrap();
        let diag = plus.diagnostic.as_ref().unwrap();
        assert!(diag.relative_error < 0.05, "{}: {diag:?}", case.tag());
        assert!((diag.predicted - 1.0 / 3.0).abs() < 1e-12);
    }
    let r = verify_decay(front(FrontCase::Nn), &model(FrontCase::Nn)).unwrap();
    let minus = r.iter().find(|d| d.side == Side::Minus).unwrap();
    assert!(minus.diagnostic.as_ref().unwrap().relative_error < 0.05);
}

#[test]
fn slow_rate_falls_with_speed() {
    let m = Model::shigesada(1.0, 0.5).unwrap();
    let rates: Vec<f64> = [1.0, 1.5, 2.0]
        .iter()
        .map(|&c| {
            let f = solve_front(&m, FrontCase::Nd, c, &GridConfig::with_n(1500)).unwrap();
            let r = verify_decay(&f, &m).unwrap();
            r.iter().find(|d| d.side == Side::Plus).unwrap().fitted_rate
        })
        .collect();
    assert!(rates[0] > rates[1] && rates[1] > rates[2], "{rates:?}");
}

#[test]
fn speed_at_or_below_threshold_is_rejected() {
    let m = Model::shigesada(1.0, 0.5).unwrap();
    let cbar = m.threshold_speed();
    for c in [0.5, cbar] {
        let e = solve_front(&m, FrontCase::Nn, c, &GridConfig::with_n(500)).unwrap_err();
        assert!(matches!(e, Error::Domain(_) | Error::Infeasible(_)), "{e:?}");
    }
}

#[test]
fn coefficient_bound_is_finite_and_decays_on_the_degenerate_side() {
    for case in CASES {
        let b = coefficient_bound(front(case), &model(case)).unwrap();
        assert!(b.sup.is_finite() && b.sup > 0.0);
        assert_eq!(b.degenerate_tail_decays, case.degenerate_side().map(|_| true));
        assert!((b.phase_analytic - b.phase_fd).abs() < 1e-6 * b.phase_analytic.abs().max(1.0));
    }
}

#[test]
fn profile_survives_csv() {
    let f = front(FrontCase::Nn);
    let back = read_profile(&profile_csv(f), &ProfileSidecar::from(f)).unwrap();
    assert_eq!(&back, f);
}

#[test]
fn grid_clipping_respects_requested_lengths() {
    let m = Model::shigesada(1.0, 0.5).unwrap();
    let cfg = GridConfig {
        l_minus: Some(20.0),
        l_plus: Some(25.0),
        ..GridConfig::with_n(1000)
    };
    let f = solve_front(&m, FrontCase::Nn, 1.0, &cfg).unwrap();
    assert!(f.x[0] >= -20.0 - 1e-12 && *f.x.last().unwrap() <= 25.0 + 1e-12);
    assert_eq!(f.len(), 1000);
}
