//! Closed-form essential spectrum: Fredholm borders, the consistent-splitting
//! half-plane, weight windows and the decaying spatial mode.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::FromPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fronts::{FrontCase, Side};
use crate::model::{Model, ModelSpec};
use crate::roots::bisect;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BorderCurve {
    pub side: Side,
    pub eps: f64,
    pub a: f64,
    /// `(k, Re lambda, Im lambda)`.
    pub samples: Vec<[f64; 3]>,
    pub max_re: f64,
}

/// Uniform k-grid, 2001 points on `[-20, 20]`.
pub fn default_k_grid() -> Vec<f64> {
    (0..2001).map(|i| -20.0 + 0.02 * i as f64).collect()
}

fn end_state(case: FrontCase, alpha: f64, side: Side) -> f64 {
    let (m, p) = case.ends(alpha);
    match side {
        Side::Minus => m,
        Side::Plus => p,
    }
}

/// `D^eps(u) a^2 - a c + f'(u)`: the border's real part at `k = 0`.
pub fn border_apex(model: &Model, u: f64, c: f64, a: f64, eps: f64) -> f64 {
    (model.diff(u) + eps) * a * a - a * c + model.react_1(u)
}

pub fn fredholm_border(
    model: &Model,
    case: FrontCase,
    c: f64,
    a: f64,
    eps: f64,
    side: Side,
    k_grid: &[f64],
) -> BorderCurve {
    let u = end_state(case, model.alpha, side);
    let de = model.diff(u) + eps;
    let fp = model.react_1(u);
    let samples: Vec<[f64; 3]> = k_grid
        .iter()
        .map(|&k| [k, de * (a * a - k * k) - a * c + fp, k * (c - 2.0 * a * de)])
        .collect();
    let max_re = samples.iter().map(|s| s[1]).fold(f64::NEG_INFINITY, f64::max);
    BorderCurve {
        side,
        eps,
        a,
        samples,
        max_re,
    }
}

/// Right edge of the essential spectrum: the larger of the two border apexes.
pub fn consistent_splitting_bound(model: &Model, case: FrontCase, c: f64, a: f64, eps: f64) -> f64 {
    let (m, p) = case.ends(model.alpha);
    border_apex(model, m, c, a, eps).max(border_apex(model, p, c, a, eps))
}

pub fn weight_roots(model: &Model, u: f64, c: f64) -> Result<(f64, f64)> {
    model.weight_roots(u, c)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Classification {
    #[serde(rename = "case-i")]
    CaseI,
    #[serde(rename = "case-ii")]
    CaseII,
    #[serde(rename = "stationary")]
    Stationary,
}

/// Exact comparison `(alpha + b)(1 + 2 alpha) > 1 + b` for the Shigesada-cubic
/// family, with both sides as reduced fractions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExactComparison {
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Threshold {
    pub classification: Classification,
    pub c0: f64,
    pub c_hat: Option<f64>,
    pub h_at_cbar: f64,
    pub one_minus_rho: f64,
    pub exact: Option<ExactComparison>,
    pub warning: Option<String>,
}

/// `h(c) = rho sqrt(1 - 4 D(1) f'(1)/c^2) + sqrt(1 - 4 D(alpha) f'(alpha)/c^2)`.
pub fn h_function(model: &Model, c: f64) -> f64 {
    let a = model.alpha;
    let rho = model.diff(a) / model.diff(1.0);
    let c2 = c * c;
    let t1 = (1.0 - 4.0 * model.diff(1.0) * model.react_1(1.0) / c2).max(0.0);
    let t2 = (1.0 - 4.0 * model.diff(a) * model.react_1(a) / c2).max(0.0);
    rho * t1.sqrt() + t2.sqrt()
}

fn exact_case_split(b: f64, alpha: f64) -> Option<ExactComparison> {
    let b = BigRational::from_f64(b)?;
    let a = BigRational::from_f64(alpha)?;
    let one = BigRational::from_integer(BigInt::from(1));
    let two = BigRational::from_integer(BigInt::from(2));
    let lhs = (a.clone() + b.clone()) * (one.clone() + two * a);
    let rhs = one + b;
    Some(ExactComparison {
        holds: lhs > rhs,
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
    })
}

/// Case split for `Nn` fronts and the minimal speed `c0` above which an
/// admissible weight exists.
pub fn classify_and_threshold(model: &Model) -> Result<Threshold> {
    model.require_valid()?;
    let cbar = model.threshold_speed();
    let one_minus_rho = 1.0 - model.diff(model.alpha) / model.diff(1.0);
    let h_at_cbar = h_function(model, cbar);
    let exact = match model.spec {
        ModelSpec::ShigesadaCubic { b, alpha } => exact_case_split(b, alpha),
        ModelSpec::Polynomial { .. } => None,
    };
    let case_i = match &exact {
        Some(e) => e.holds,
        None => h_at_cbar > one_minus_rho,
    };
    if case_i {
        return Ok(Threshold {
            classification: Classification::CaseI,
            c0: cbar,
            c_hat: None,
            h_at_cbar,
            one_minus_rho,
            exact,
            warning: None,
        });
    }
    let g = |c: f64| h_function(model, c) - one_minus_rho;
    // grow the bracket geometrically from cbar, capped at 10 cbar
    let mut hi = cbar;
    loop {
        hi = (1.5 * hi).min(10.0 * cbar);
        if g(hi) > 0.0 || hi >= 10.0 * cbar {
            break;
        }
    }
    let (c0, c_hat, warning) = match bisect(g, cbar, hi, 1e-14 * cbar) {
        Some(r) => (r, Some(r), None),
        None => (
            cbar,
            None,
            Some("h(c) = 1 - rho has no root on (cbar, 10 cbar); falling back to c0 = cbar".into()),
        ),
    };
    Ok(Threshold {
        classification: Classification::CaseII,
        c0,
        c_hat,
        h_at_cbar,
        one_minus_rho,
        exact,
        warning,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightPlan {
    pub case: FrontCase,
    pub c: f64,
    pub a: f64,
    pub a_lo: f64,
    pub a_hi: f64,
    /// `c / (2 D(alpha))` for `Nd`.
    pub nd_cap: Option<f64>,
    /// Margin as reported for the case (half-min form for `Nn`).
    pub mu0: f64,
    /// `-max` of the two border apexes at the chosen `a`.
    pub mu0_exact: f64,
    pub classification: Classification,
    pub c0: f64,
    pub feasible: bool,
    pub infeasible_reason: Option<String>,
}

pub fn select_weight(model: &Model, case: FrontCase, c: f64) -> Result<WeightPlan> {
    model.require_valid()?;
    let alpha = model.alpha;
    let exact_margin = |a: f64| -consistent_splitting_bound(model, case, c, a, 0.0);
    match case {
        FrontCase::SnIncreasing | FrontCase::SnDecreasing => {
            let mu0 = -model.react_1(0.0).max(model.react_1(1.0));
            Ok(WeightPlan {
                case,
                c,
                a: 0.0,
                a_lo: 0.0,
                a_hi: 0.0,
                nd_cap: None,
                mu0,
                mu0_exact: exact_margin(0.0),
                classification: Classification::Stationary,
                c0: 0.0,
                feasible: true,
                infeasible_reason: None,
            })
        }
        FrontCase::Nd => {
            let cbar = model.threshold_speed();
            if c <= cbar {
                return Err(Error::Domain(format!(
                    "c = {c} <= cbar(alpha) = {cbar:.6}"
                )));
            }
            let (a1, _) = model.weight_roots(alpha, c)?;
            let cap = c / (2.0 * model.diff(alpha));
            let a = 0.5 * (a1 + cap);
            let mu0 = -model.p(a, alpha, c).max(-a * c + model.react_1(0.0));
            let feasible = a1 < cap && mu0 > 0.0;
            Ok(WeightPlan {
                case,
                c,
                a,
                a_lo: a1,
                a_hi: cap,
                nd_cap: Some(cap),
                mu0,
                mu0_exact: exact_margin(a),
                classification: Classification::CaseI,
                c0: cbar,
                feasible,
                infeasible_reason: (!feasible)
                    .then(|| format!("a1(alpha) = {a1} is not below c/(2D(alpha)) = {cap}")),
            })
        }
        FrontCase::Nn => {
            let th = classify_and_threshold(model)?;
            let cbar = model.threshold_speed();
            if c <= cbar {
                return Err(Error::Domain(format!(
                    "c = {c} <= cbar(alpha) = {cbar:.6}"
                )));
            }
            let (a1, a2) = model.weight_roots(alpha, c)?;
            let (_, a2_one) = model.weight_roots(1.0, c)?;
            let m = a2.min(a2_one);
            let a = 0.5 * (a1 + m);
            let mu0 = 0.5 * model.p(a, 1.0, c).abs().min(model.p(a, alpha, c).abs());
            let above = c > th.c0;
            let feasible = above && a1 < m && exact_margin(a) > 0.0;
            let reason = if !above {
                Some(format!(
                    "c = {c} <= c0(alpha) = {:.6}: weight window condition fails",
                    th.c0
                ))
            } else if !feasible {
                Some(format!("empty window: a1(alpha) = {a1} >= m(alpha) = {m}"))
            } else {
                None
            };
            Ok(WeightPlan {
                case,
                c,
                a,
                a_lo: a1,
                a_hi: m,
                nd_cap: None,
                mu0,
                mu0_exact: exact_margin(a),
                classification: th.classification,
                c0: th.c0,
                feasible,
                infeasible_reason: reason,
            })
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticSystem {
    /// Row-major `[[0, 1], [(lambda - b0)/b2, -b1/b2]]`.
    pub matrix: [[Complex64; 2]; 2],
    /// Ordered by real part.
    pub eigenvalues: [Complex64; 2],
    pub consistent_splitting: bool,
}

/// First-order system of the constant-coefficient limit operator on one side.
#[allow(clippy::too_many_arguments)]
pub fn asymptotic_matrix(
    model: &Model,
    case: FrontCase,
    c: f64,
    a: f64,
    eps: f64,
    lambda: Complex64,
    side: Side,
) -> Result<AsymptoticSystem> {
    let u = end_state(case, model.alpha, side);
    let b2 = model.diff(u) + eps;
    if b2 <= 0.0 {
        return Err(Error::Domain(format!(
            "degenerate end state u = {u} with eps = {eps}: leading coefficient vanishes"
        )));
    }
    let b1 = c - 2.0 * a * b2;
    let b0 = border_apex(model, u, c, a, eps);
    let z = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let m21 = (lambda - b0) / b2;
    let m22 = Complex64::new(-b1 / b2, 0.0);
    let half_tr = 0.5 * m22;
    let root = (half_tr * half_tr + m21).sqrt();
    let (mut e1, mut e2) = (half_tr - root, half_tr + root);
    if e1.re > e2.re {
        std::mem::swap(&mut e1, &mut e2);
    }
    Ok(AsymptoticSystem {
        matrix: [[z, one], [m21, m22]],
        eigenvalues: [e1, e2],
        consistent_splitting: e1.re < 0.0 && e2.re > 0.0,
    })
}

/// Decaying spatial mode at `+inf` for `Nd` fronts and its discriminant.
pub fn decaying_mode(model: &Model, c: f64, a: f64, lambda: Complex64) -> Result<(Complex64, Complex64)> {
    let bound = consistent_splitting_bound(model, FrontCase::Nd, c, a, 0.0);
    if !(lambda.re > bound + 1e-12) {
        return Err(Error::Domain(format!(
            "Re lambda = {} is not inside the splitting region (bound {bound})",
            lambda.re
        )));
    }
    let alpha = model.alpha;
    let da = model.diff(alpha);
    let s = c / da - 2.0 * a;
    let zeta = Complex64::new(s * s, 0.0) + 4.0 * (lambda - model.p(a, alpha, c)) / da;
    let mu = Complex64::new(a - c / (2.0 * da), 0.0) - 0.5 * zeta.sqrt();
    if mu.re >= 0.0 {
        return Err(Error::Numerical(format!("decaying mode has Re = {}", mu.re)));
    }
    Ok((mu, zeta))
}
