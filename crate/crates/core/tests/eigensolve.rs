mod common;

use common::{dense_eigenvalues, front, model, weight};
use nagumo_core::eigensolve::{
    build_operator, compute_spectrum, count_above, liouville_transform, regularization_sweep, sturm_check,
    top_eigenvalues, translation_mode, Window,
};
use nagumo_core::fronts::{solve_front, GridConfig};
use nagumo_core::spectrum::select_weight;
use nagumo_core::tridiag::Tridiagonal;
use nagumo_core::{FrontCase, Model};
use proptest::prelude::*;

fn small(alpha: f64, case: FrontCase, n: usize) -> (Model, nagumo_core::FrontProfile, f64) {
    let m = Model::shigesada(1.0, alpha).unwrap();
    let c = if case.is_stationary() { 0.0 } else { 1.0 };
    let f = solve_front(&m, case, c, &GridConfig::with_n(n)).unwrap();
    let a = select_weight(&m, case, c).unwrap().a;
    (m, f, a)
}

fn agree_with_dense(alpha: f64, case: FrontCase, n: usize) {
    let (m, f, a) = small(alpha, case, n);
    let op = build_operator(&f, &m, a, 0.0).unwrap();
    let got = compute_spectrum(&op, 6, Window::All).unwrap();
    let want = dense_eigenvalues(&op.matrix());
    for (p, w) in got.iter().zip(&want) {
        assert!(w.im.abs() < 1e-9, "dense spectrum not real: {w}");
        assert!((p.lambda.re - w.re).abs() < 1e-9 * (1.0 + w.re.abs()), "{} vs {}", p.lambda, w);
        assert!(p.converged && p.residual < 1e-8);
    }
}

#[test]
fn nn_case_two_matches_dense_oracle() {
    // clustered values near -0.61 that an iterative solver can miss
    agree_with_dense(0.25, FrontCase::Nn, 600);
}

#[test]
fn nd_matches_dense_oracle() {
    agree_with_dense(0.5, FrontCase::Nd, 500);
}

#[test]
fn stationary_matches_dense_oracle() {
    agree_with_dense(0.625, FrontCase::SnIncreasing, 500);
}

#[test]
fn stationary_top_mode_is_the_derivative() {
    let case = FrontCase::SnIncreasing;
    let f = front(case);
    let op = build_operator(f, &model(case), 0.0, 0.0).unwrap();
    let top = &compute_spectrum(&op, 1, Window::All).unwrap()[0];
    assert!(top.lambda.norm() < 1e-5);
    let t = translation_mode(f, 0.0);
    let u = top.real_part();
    let dot: f64 = u.iter().zip(&t).map(|(a, b)| a * b).sum();
    let nu: f64 = u.iter().map(|v| v * v).sum::<f64>().sqrt();
    let nt: f64 = t.iter().map(|v| v * v).sum::<f64>().sqrt();
    assert!((dot / (nu * nt)).abs() > 0.999, "cosine {}", dot / (nu * nt));
}

#[test]
fn window_filters_the_spectrum() {
    let case = FrontCase::Nn;
    let op = build_operator(front(case), &model(case), weight(case), 0.0).unwrap();
    let all = compute_spectrum(&op, 6, Window::All).unwrap();
    let right = compute_spectrum(&op, 6, Window::RightOf(-0.1)).unwrap();
    let want: Vec<f64> = all.iter().map(|p| p.lambda.re).filter(|&r| r > -0.1).collect();
    assert_eq!(right.iter().map(|p| p.lambda.re).collect::<Vec<_>>(), want);
}

#[test]
fn liouville_form_is_symmetric() {
    let case = FrontCase::Nn;
    let op = build_operator(front(case), &model(case), weight(case), 0.0).unwrap();
    let lv = liouville_transform(&op).unwrap();
    let n = lv.xi.len();
    let bump = |k: f64| -> Vec<f64> {
        (0..n)
            .map(|i| if i == 0 || i == n - 1 { 0.0 } else { (k * i as f64 / n as f64).sin() * (-(i as f64 / n as f64 - 0.5).powi(2) * 20.0).exp() })
            .collect()
    };
    let (v, w) = (bump(7.0), bump(13.0));
    let l = lv.omega_inner(&lv.apply(&v), &w);
    let r = lv.omega_inner(&v, &lv.apply(&w));
    assert!((l - r).abs() <= 1e-10 * l.abs().max(r.abs()), "{l} vs {r}");
}

#[test]
fn sturm_counts_on_case_two() {
    let (m, f, a) = small(0.25, FrontCase::Nn, 1500);
    let op = build_operator(&f, &m, a, 0.0).unwrap();
    let rep = sturm_check(&compute_spectrum(&op, 4, Window::All).unwrap());
    assert!(rep.all_pass, "{rep:?}");
}

#[test]
fn sweep_ends_at_the_unregularised_spectrum() {
    let case = FrontCase::Nd;
    let (m, f, a) = (model(case), front(case), weight(case));
    let table = regularization_sweep(f, &m, a, &[1e-2, 1e-3, 0.0], 2).unwrap();
    let last = table.rows.last().unwrap();
    assert_eq!(last.eps, 0.0);
    assert_eq!(last.drifts, vec![0.0, 0.0]);
    let op = build_operator(f, &m, a, 0.0).unwrap();
    let direct: Vec<_> = compute_spectrum(&op, 2, Window::All).unwrap().iter().map(|p| p.lambda).collect();
    assert_eq!(table.reference, direct);
    // eps = 1e-3 drifts less than eps = 1e-2 for every tracked eigenvalue
    assert!(table.rows[1].drifts.iter().zip(&table.rows[0].drifts).all(|(a, b)| a < b));
    assert!(regularization_sweep(f, &m, a, &[1e-3, 1e-2], 2).is_err());
}

#[test]
fn regularised_coefficient_shifts_by_eps() {
    let case = FrontCase::Nd;
    let (m, f, a) = (model(case), front(case), weight(case));
    let op0 = build_operator(f, &m, a, 0.0).unwrap();
    let op1 = build_operator(f, &m, a, 0.1).unwrap();
    assert!(op0.b2.iter().zip(&op1.b2).all(|(x, y)| (y - x - 0.1).abs() < 1e-15));
    assert!(op1.essential_bound < 0.0);
}

fn random_tridiagonal(diag: Vec<f64>, off: Vec<(f64, f64)>) -> Tridiagonal {
    let (lower, upper): (Vec<f64>, Vec<f64>) = off.into_iter().unzip();
    Tridiagonal { lower, diag, upper }
}

proptest! {
    #[test]
    fn bisection_matches_dense(
        diag in prop::collection::vec(-5.0f64..5.0, 12),
        off in prop::collection::vec((0.01f64..3.0, 0.01f64..3.0), 11),
        k in 1usize..6,
    ) {
        let t = random_tridiagonal(diag, off);
        let e2: Vec<f64> = t.lower.iter().zip(&t.upper).map(|(l, u)| l * u).collect();
        let got = top_eigenvalues(&t.diag, &e2, k);
        let want = dense_eigenvalues(&t);
        for (g, w) in got.iter().zip(&want) {
            prop_assert!(w.im.abs() < 1e-8);
            prop_assert!((g - w.re).abs() < 1e-9, "{} vs {}", g, w.re);
        }
        // counts are consistent with the eigenvalues themselves
        for (j, w) in want.iter().enumerate() {
            prop_assert_eq!(count_above(&t.diag, &e2, w.re + 1e-7), j);
        }
    }
}
