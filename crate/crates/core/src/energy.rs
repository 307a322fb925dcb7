//! The basic energy estimate `lambda <D w, w> = -|| D psi (w/psi)_x ||^2`
//! checked on computed eigenpairs.
//!
//! With `theta_x = a - c/(2D)`, `w = e^{-theta} u` and
//! `psi = e^{-theta} e^{ax} phi_x`, one has
//! `D psi (w/psi)_x = e^{-theta} D (u_x - a u - (phi_xx/phi_x) u)`,
//! which is what the certificate integrates.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::eigensolve::{translation_mode, EigenPair};
use crate::error::{Error, Result};
use crate::fronts::FrontProfile;
use crate::grid::{derivative, trapezoid_weights};
use crate::model::Model;

type C64 = Complex64;

pub const THETA_CAP: f64 = 600.0;
pub const D_FLOOR: f64 = 1e-12;
pub const MIN_WINDOW: usize = 50;
pub const CERT_TOL: f64 = 1e-3;

/// `theta` at every node, zero at the phase node.
pub fn theta(front: &FrontProfile, model: &Model, a: f64) -> Result<Vec<f64>> {
    let x0 = front.x[front.phase_index];
    if front.c == 0.0 {
        return Ok(front.x.iter().map(|&x| a * (x - x0)).collect());
    }
    let mut g = Vec::with_capacity(front.len());
    for (&x, &p) in front.x.iter().zip(&front.phi) {
        let d = model.diff(p);
        if !(d > 1e-300) {
            return Err(Error::Domain(format!(
                "D(phi) = {d:e} at x = {x}: 1/D overflows in theta"
            )));
        }
        g.push(1.0 / d);
    }
    // a (x - x0) exactly, plus a trapezoid for the 1/D part
    let integral = crate::grid::cumulative_trapezoid(&front.x, &g, front.phase_index);
    Ok(front
        .x
        .iter()
        .zip(&integral)
        .map(|(&x, &s)| -0.5 * front.c * s + a * (x - x0))
        .collect())
}

/// Largest contiguous index range around the phase node with
/// `|theta| <= 600` and `D(phi) >= 1e-12`. Returns `(lo, hi)` inclusive.
pub fn weight_window(front: &FrontProfile, model: &Model, theta: &[f64]) -> Result<(usize, usize)> {
    let ok = |i: usize| theta[i].abs() <= THETA_CAP && model.diff(front.phi[i]) >= D_FLOOR;
    let p = front.phase_index;
    if !ok(p) {
        return Err(Error::Inconclusive("phase node outside the weight window".into()));
    }
    let mut lo = p;
    while lo > 0 && ok(lo - 1) {
        lo -= 1;
    }
    let mut hi = p;
    while hi + 1 < front.len() && ok(hi + 1) {
        hi += 1;
    }
    if hi - lo + 1 < MIN_WINDOW {
        return Err(Error::Inconclusive(format!(
            "weight window has {} points, need {MIN_WINDOW}",
            hi - lo + 1
        )));
    }
    Ok((lo, hi))
}

#[derive(Debug, Clone, PartialEq)]
pub struct TransformedPair {
    pub lo: usize,
    pub hi: usize,
    pub x: Vec<f64>,
    pub w: Vec<C64>,
    pub psi: Vec<f64>,
}

/// `w = e^{-theta} u` and `psi = e^{-theta} e^{ax} phi_x` on the window.
pub fn transform_pair(front: &FrontProfile, model: &Model, a: f64, u: &[C64]) -> Result<TransformedPair> {
    let th = theta(front, model, a)?;
    let (lo, hi) = weight_window(front, model, &th)?;
    let mut w = Vec::with_capacity(hi - lo + 1);
    let mut psi = Vec::with_capacity(hi - lo + 1);
    for i in lo..=hi {
        let e = (-th[i]).exp();
        w.push(u[i] * e);
        psi.push((a * front.x[i] - th[i]).exp() * front.phi_x[i]);
    }
    if w.iter().any(|v| !v.is_finite()) || psi.iter().any(|v| !v.is_finite()) {
        return Err(Error::Numerical(
            "e^{-theta} overflow: the weight is not admissible here".into(),
        ));
    }
    Ok(TransformedPair {
        lo,
        hi,
        x: front.x[lo..=hi].to_vec(),
        w,
        psi,
    })
}

/// Serialised with exactly the certificate fields; both sides are scaled so
/// that `<D w, w> = 1` on the window.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnergyCertificate {
    pub lambda_re: f64,
    pub lambda_im: f64,
    pub lhs_re: f64,
    pub lhs_im: f64,
    pub rhs: f64,
    pub residual: f64,
    pub window: [f64; 2],
    pub neglected_mass: f64,
}

impl EnergyCertificate {
    pub fn lhs(&self) -> C64 {
        C64::new(self.lhs_re, self.lhs_im)
    }

    /// `Re lambda <= 0` is implied when the identity closes.
    pub fn certified(&self) -> bool {
        self.residual <= CERT_TOL && self.rhs <= 0.0
    }

    pub fn verdict(&self) -> &'static str {
        if self.certified() {
            "re-lambda-nonpositive"
        } else {
            "inconclusive"
        }
    }
}

fn complex_derivative(x: &[f64], u: &[C64]) -> Vec<C64> {
    let re: Vec<f64> = u.iter().map(|v| v.re).collect();
    let im: Vec<f64> = u.iter().map(|v| v.im).collect();
    let dr = derivative(x, &re, 1, 5);
    let di = derivative(x, &im, 1, 5);
    dr.into_iter().zip(di).map(|(a, b)| C64::new(a, b)).collect()
}

/// `sum_i c_i e^{s_i - max s}` for log-weights `s`.
fn scaled_sum(s: &[f64], c: &[f64]) -> (f64, f64) {
    let m = s.iter().fold(f64::NEG_INFINITY, |a, &b| a.max(b));
    (s.iter().zip(c).map(|(si, ci)| ci * (si - m).exp()).sum(), m)
}

/// Certificate for an arbitrary `(lambda, u)` on the full grid.
pub fn certify(front: &FrontProfile, model: &Model, a: f64, lambda: C64, u: &[C64]) -> Result<EnergyCertificate> {
    let th = theta(front, model, a)?;
    let (lo, hi) = weight_window(front, model, &th)?;
    let x = &front.x[lo..=hi];
    let uw = &u[lo..=hi];
    let ux = complex_derivative(x, uw);
    let wts = trapezoid_weights(x);
    let mut logs = Vec::with_capacity(x.len());
    let mut mass = Vec::with_capacity(x.len());
    let mut flux = Vec::with_capacity(x.len());
    for (k, i) in (lo..=hi).enumerate() {
        let d = model.diff(front.phi[i]);
        let r = front.phi_xx[i] / front.phi_x[i];
        let g = ux[k] - uw[k] * (a + r);
        logs.push(-2.0 * th[i]);
        mass.push(wts[k] * d * uw[k].norm_sqr());
        flux.push(wts[k] * d * d * g.norm_sqr());
    }
    let (s1, _) = scaled_sum(&logs, &mass);
    let (s2, _) = scaled_sum(&logs, &flux);
    if !(s1 > 0.0) {
        return Err(Error::Inconclusive("<D w, w> vanishes on the window".into()));
    }
    let lhs = lambda;
    let rhs = -s2 / s1;
    let residual = (lhs - rhs).norm() / lhs.norm().max(rhs.abs()).max(1e-300);

    let full = trapezoid_weights(&front.x);
    let total: f64 = full.iter().zip(u).map(|(w, v)| w * v.norm_sqr()).sum();
    let inside: f64 = (lo..=hi).map(|i| full[i] * u[i].norm_sqr()).sum();
    let neglected_mass = if total > 0.0 { ((total - inside) / total).max(0.0) } else { 0.0 };
    Ok(EnergyCertificate {
        lambda_re: lambda.re,
        lambda_im: lambda.im,
        lhs_re: lhs.re,
        lhs_im: lhs.im,
        rhs,
        residual,
        window: [x[0], x[x.len() - 1]],
        neglected_mass,
    })
}

pub fn energy_certificate(front: &FrontProfile, model: &Model, a: f64, pair: &EigenPair) -> Result<EnergyCertificate> {
    certify(front, model, a, pair.lambda, &pair.u)
}

/// Certificates for several eigenpairs in parallel.
pub fn certify_all(front: &FrontProfile, model: &Model, a: f64, pairs: &[EigenPair]) -> Vec<Result<EnergyCertificate>> {
    pairs
        .par_iter()
        .map(|p| energy_certificate(front, model, a, p))
        .collect()
}

/// The equality case `lambda = 0`, `u = e^{ax} phi_x`.
pub fn translation_certificate(front: &FrontProfile, model: &Model, a: f64) -> Result<EnergyCertificate> {
    let u: Vec<C64> = translation_mode(front, a).into_iter().map(|v| C64::new(v, 0.0)).collect();
    certify(front, model, a, C64::new(0.0, 0.0), &u)
}

/// `rhs` again, by differencing `w/psi` directly; same normalisation.
pub fn direct_rhs(front: &FrontProfile, model: &Model, a: f64, u: &[C64]) -> Result<f64> {
    let th = theta(front, model, a)?;
    let (lo, hi) = weight_window(front, model, &th)?;
    let x = &front.x[lo..=hi];
    // w/psi = e^{-ax} u / phi_x; theta cancels
    let q: Vec<C64> = (lo..=hi)
        .map(|i| u[i] * ((-a * front.x[i]).exp() / front.phi_x[i]))
        .collect();
    let qx = complex_derivative(x, &q);
    let wts = trapezoid_weights(x);
    let mut logs = Vec::new();
    let mut mass = Vec::new();
    let mut flux = Vec::new();
    for (k, i) in (lo..=hi).enumerate() {
        let d = model.diff(front.phi[i]);
        let dpsi = d * (a * front.x[i]).exp() * front.phi_x[i];
        logs.push(-2.0 * th[i]);
        mass.push(wts[k] * d * u[i].norm_sqr());
        flux.push(wts[k] * (qx[k] * dpsi).norm_sqr());
    }
    let (s1, _) = scaled_sum(&logs, &mass);
    let (s2, _) = scaled_sum(&logs, &flux);
    Ok(-s2 / s1)
}

/// `|| (D^2 w_x)_x - ((D^2 psi_x)_x / psi) w - lambda D w || / || D w ||`
/// for samples on a common grid.
pub fn sturm_form_residual_raw(x: &[f64], d: &[f64], w: &[C64], psi: &[f64], lambda: C64) -> f64 {
    let n = x.len();
    let wx = complex_derivative(x, w);
    let flux_w: Vec<C64> = (0..n).map(|i| wx[i] * (d[i] * d[i])).collect();
    let div_w = complex_derivative(x, &flux_w);
    let px = derivative(x, psi, 1, 5);
    let flux_p: Vec<f64> = (0..n).map(|i| d[i] * d[i] * px[i]).collect();
    let div_p = derivative(x, &flux_p, 1, 5);
    let wts = trapezoid_weights(x);
    let mut num = 0.0;
    let mut den = 0.0;
    for i in 0..n {
        if psi[i] == 0.0 {
            continue;
        }
        let r = div_w[i] - w[i] * (div_p[i] / psi[i]) - lambda * d[i] * w[i];
        num += wts[i] * r.norm_sqr();
        den += wts[i] * (w[i] * d[i]).norm_sqr();
    }
    (num / den).sqrt()
}

pub fn sturm_form_residual(front: &FrontProfile, model: &Model, a: f64, pair: &EigenPair) -> Result<f64> {
    let tp = transform_pair(front, model, a, &pair.u)?;
    // a common factor keeps w and psi in range; the residual is homogeneous
    let top = tp.psi.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let psi: Vec<f64> = tp.psi.iter().map(|v| v / top).collect();
    let w: Vec<C64> = tp.w.iter().map(|v| v / top).collect();
    let d: Vec<f64> = (tp.lo..=tp.hi).map(|i| model.diff(front.phi[i])).collect();
    Ok(sturm_form_residual_raw(&tp.x, &d, &w, &psi, pair.lambda))
}

fn chain(front: &FrontProfile, model: &Model, i: usize) -> Result<(f64, f64, f64)> {
    let (p, px, pxx) = (front.phi[i], front.phi_x[i], front.phi_xx[i]);
    let d = model.diff(p);
    if !(d > D_FLOOR) {
        return Err(Error::Domain(format!(
            "D(phi) = {d:e} at x = {}: degenerate tail",
            front.x[i]
        )));
    }
    let dx = model.diff_1(p) * px;
    let dxx = model.diff_2(p) * px * px + model.diff_1(p) * pxx;
    Ok((d, dx, dxx))
}

/// `G = -(c/2) D_x/D - c^2/(4D) + D_xx + f'(phi)` at node `i`.
pub fn g_coefficient(front: &FrontProfile, model: &Model, i: usize) -> Result<f64> {
    let (d, dx, dxx) = chain(front, model, i)?;
    let c = front.c;
    Ok(-0.5 * c * dx / d - c * c / (4.0 * d) + dxx + model.react_1(front.phi[i]))
}

/// Zeroth-order coefficient after conjugating by `e^{theta}` with weight `a`,
/// before simplification. Equal to `G` for every `a`.
pub fn g_tilde(front: &FrontProfile, model: &Model, a: f64, i: usize) -> Result<f64> {
    let (d, dx, dxx) = chain(front, model, i)?;
    let c = front.c;
    let th_x = a - c / (2.0 * d);
    let th_xx = c * dx / (2.0 * d * d);
    let b1 = 2.0 * dx + c - 2.0 * a * d;
    let b0 = a * a * d - 2.0 * a * dx - a * c + dxx + model.react_1(front.phi[i]);
    Ok(d * (th_xx + th_x * th_x) + b1 * th_x + b0)
}
