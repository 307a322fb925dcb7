mod common;

use common::{front, model, weight, CASES};
use nagumo_core::eigensolve::{build_operator, compute_spectrum, translation_mode, Window};
use nagumo_core::energy::{
    certify, direct_rhs, g_coefficient, g_tilde, sturm_form_residual, theta, translation_certificate, weight_window,
};
use nagumo_core::{FrontCase, FrontProfile};
use num_complex::Complex64;

fn nn_pairs() -> Vec<nagumo_core::eigensolve::EigenPair> {
    let case = FrontCase::Nn;
    let op = build_operator(front(case), &model(case), weight(case), 0.0).unwrap();
    compute_spectrum(&op, 5, Window::All).unwrap()
}

#[test]
fn certificates_close_for_nn_eigenpairs() {
    let case = FrontCase::Nn;
    let (m, f, a) = (model(case), front(case), weight(case));
    for p in nn_pairs() {
        let c = certify(f, &m, a, p.lambda, &p.u).unwrap();
        assert!(c.certified(), "{c:?}");
        assert_eq!(c.verdict(), "re-lambda-nonpositive");
        let d = direct_rhs(f, &m, a, &p.u).unwrap();
        assert!((d - c.rhs).abs() <= 1e-3 * c.rhs.abs(), "{d} vs {}", c.rhs);
        assert!(c.neglected_mass < 1e-6);
    }
}

#[test]
fn transformed_pairs_solve_the_sturm_form() {
    let case = FrontCase::Nn;
    let (m, f, a) = (model(case), front(case), weight(case));
    for p in nn_pairs() {
        let r = sturm_form_residual(f, &m, a, &p).unwrap();
        assert!(r < 1e-3, "lambda {}: residual {r:e}", p.lambda);
    }
}

#[test]
fn wrong_eigenvalue_breaks_the_identity() {
    let case = FrontCase::Nn;
    let (m, f, a) = (model(case), front(case), weight(case));
    let p = &nn_pairs()[1];
    let c = certify(f, &m, a, p.lambda - 0.05, &p.u).unwrap();
    assert!(c.residual > 0.1, "{c:?}");
}

#[test]
fn translation_pair_is_the_equality_case() {
    for case in CASES {
        let c = translation_certificate(front(case), &model(case), weight(case)).unwrap();
        assert!(c.lhs().norm() + c.rhs.abs() <= 1e-10, "{}: {c:?}", case.tag());
    }
}

#[test]
fn certificate_is_independent_of_the_origin() {
    let case = FrontCase::Nn;
    let (m, a) = (model(case), weight(case));
    let f = front(case);
    let shifted = FrontProfile {
        x: f.x.iter().map(|x| x + 3.7).collect(),
        ..f.clone()
    };
    let p = &nn_pairs()[2];
    let c0 = certify(f, &m, a, p.lambda, &p.u).unwrap();
    let c1 = certify(&shifted, &m, a, p.lambda, &p.u).unwrap();
    assert!((c0.rhs - c1.rhs).abs() <= 1e-10 * c0.rhs.abs(), "{} vs {}", c0.rhs, c1.rhs);
    let t: Vec<Complex64> = translation_mode(f, a).into_iter().map(|v| Complex64::new(v, 0.0)).collect();
    let t0 = certify(f, &m, a, Complex64::new(0.0, 0.0), &t).unwrap();
    let t1 = certify(&shifted, &m, a, Complex64::new(0.0, 0.0), &t).unwrap();
    assert!((t0.rhs - t1.rhs).abs() <= 1e-20);
}

#[test]
fn conjugated_potential_does_not_depend_on_the_weight() {
    let case = FrontCase::Nn;
    let (m, f) = (model(case), front(case));
    for i in (0..f.len()).step_by(37) {
        let Ok(g) = g_coefficient(f, &m, i) else { continue };
        for a in [0.0, 0.3, 0.57, 1.2] {
            let gt = g_tilde(f, &m, a, i).unwrap();
            assert!((gt - g).abs() <= 1e-12 * g.abs().max(1.0), "i {i}, a {a}: {gt} vs {g}");
        }
    }
}

#[test]
fn theta_vanishes_at_the_phase_node_and_window_contains_it() {
    for case in CASES {
        let (m, f, a) = (model(case), front(case), weight(case));
        let th = theta(f, &m, a).unwrap();
        assert_eq!(th[f.phase_index], 0.0);
        let (lo, hi) = weight_window(f, &m, &th).unwrap();
        assert!(lo <= f.phase_index && f.phase_index <= hi && hi - lo + 1 >= 50);
    }
}
