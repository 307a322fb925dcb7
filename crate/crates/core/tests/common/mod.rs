//! Shared reference fronts and a dense eigenvalue oracle.
#![allow(dead_code)]

use std::sync::OnceLock;

use nagumo_core::fronts::{solve_front, GridConfig};
use nagumo_core::spectrum::select_weight;
use nagumo_core::tridiag::Tridiagonal;
use nagumo_core::{FrontCase, FrontProfile, Model};

pub const CASES: [FrontCase; 4] = [FrontCase::SnIncreasing, FrontCase::SnDecreasing, FrontCase::Nd, FrontCase::Nn];

/// Reference parameters: b = 1; alpha = 5/8 for the stationary fronts,
/// alpha = 1/2 and c = 1 for the travelling ones.
pub fn model(case: FrontCase) -> Model {
    let alpha = if case.is_stationary() { 0.625 } else { 0.5 };
    Model::shigesada(1.0, alpha).unwrap()
}

pub fn speed(case: FrontCase) -> f64 {
    if case.is_stationary() {
        0.0
    } else {
        1.0
    }
}

pub fn weight(case: FrontCase) -> f64 {
    select_weight(&model(case), case, speed(case)).unwrap().a
}

fn slot(case: FrontCase) -> usize {
    CASES.iter().position(|&c| c == case).unwrap()
}

/// N = 4000 fronts, solved once per test binary.
pub fn front(case: FrontCase) -> &'static FrontProfile {
    static FRONTS: [OnceLock<FrontProfile>; 4] = [OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new()];
    FRONTS[slot(case)].get_or_init(|| solve_front(&model(case), case, speed(case), &GridConfig::with_n(4000)).unwrap())
}

/// All eigenvalues of a small tridiagonal matrix, descending by real part.
pub fn dense_eigenvalues(t: &Tridiagonal) -> Vec<num_complex::Complex64> {
    let n = t.diag.len();
    let mut m = nalgebra::DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = t.diag[i];
        if i + 1 < n {
            m[(i, i + 1)] = t.upper[i];
            m[(i + 1, i)] = t.lower[i];
        }
    }
    let mut ev: Vec<num_complex::Complex64> = m.complex_eigenvalues().iter().copied().collect();
    ev.sort_by(|a, b| b.re.total_cmp(&a.re));
    ev
}
