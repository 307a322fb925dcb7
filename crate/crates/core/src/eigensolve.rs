//! Truncated, conjugated linearisation about a front and its point spectrum.
//!
//! The operator `b2 u_xx + b1 u_x + b0 u` is discretised as
//! `(b2 u_x)_x + (b1 - b2_x) u_x + b0 u` with three-point stencils and
//! homogeneous Dirichlet ends. Eigenvalues come from shift-invert subspace
//! iteration on the tridiagonal matrix followed by inverse-iteration polish.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fronts::FrontProfile;
use crate::grid::{derivative, linear_fit, trapezoid_weights};
use crate::model::Model;
use crate::spectrum::consistent_splitting_bound;
use crate::tridiag::Tridiagonal;

pub const MIN_POINTS: usize = 200;
pub const RESIDUAL_TOL: f64 = 1e-8;
const BOUNDARY_FRACTION: f64 = 0.10;
const BOUNDARY_MASS_LIMIT: f64 = 0.01;
const STURM_EXCLUDE: f64 = 0.05;
const STURM_FLOOR: f64 = 1e-8;

type C64 = Complex64;

fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// Three-point stencil on a full grid; rows `1..n-1` are meaningful.
#[derive(Debug, Clone, PartialEq)]
pub struct Stencil {
    pub nodes: Vec<f64>,
    pub phase_index: usize,
    pub lo: Vec<f64>,
    pub di: Vec<f64>,
    pub up: Vec<f64>,
}

impl Stencil {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Matrix on the interior unknowns (Dirichlet ends).
    pub fn matrix(&self) -> Tridiagonal {
        let n = self.len();
        Tridiagonal {
            lower: (2..n - 1).map(|i| self.lo[i]).collect(),
            diag: (1..n - 1).map(|i| self.di[i]).collect(),
            upper: (1..n - 2).map(|i| self.up[i]).collect(),
        }
    }

    /// Applies the stencil to a full-grid vector, boundary values included.
    /// Entries at the two ends of the result are zero.
    pub fn apply_full(&self, u: &[C64]) -> Vec<C64> {
        let n = self.len();
        let mut out = vec![c(0.0); n];
        for i in 1..n - 1 {
            out[i] = u[i - 1] * self.lo[i] + u[i] * self.di[i] + u[i + 1] * self.up[i];
        }
        out
    }

    pub fn weights(&self) -> Vec<f64> {
        trapezoid_weights(&self.nodes)
    }
}

fn weighted_norm(w: &[f64], u: &[C64]) -> f64 {
    w.iter().zip(u).map(|(a, b)| a * b.norm_sqr()).sum::<f64>().sqrt()
}

#[derive(Debug, Clone)]
pub struct DiscretizedOperator {
    pub x: Vec<f64>,
    pub phase_index: usize,
    pub b2: Vec<f64>,
    pub b1: Vec<f64>,
    pub b0: Vec<f64>,
    pub b2_x: Vec<f64>,
    pub b2_xx: Vec<f64>,
    pub a: f64,
    pub eps: f64,
    pub c: f64,
    /// Right edge of the essential spectrum from the border formulas.
    pub essential_bound: f64,
    pub stencil: Stencil,
}

impl DiscretizedOperator {
    pub fn matrix(&self) -> Tridiagonal {
        self.stencil.matrix()
    }
}

/// Three-point stencil for `(b2 u_x)_x + beta u_x + b0 u`, `beta = b1 - b2_x`.
/// The drift is centred unless that makes an off-diagonal non-positive
/// (cell Peclet number above 2); there it is upwinded, so every stencil has
/// positive couplings and a real spectrum.
fn conservative_stencil(
    x: &[f64],
    b2: &[f64],
    b1: &[f64],
    b2_x: &[f64],
    b0: &[f64],
) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
    let n = x.len();
    let mut lo = vec![0.0; n];
    let mut di = vec![0.0; n];
    let mut up = vec![0.0; n];
    for i in 1..n - 1 {
        let hm = x[i] - x[i - 1];
        let hp = x[i + 1] - x[i];
        let hbar = 0.5 * (hm + hp);
        let km = 0.5 * (b2[i] + b2[i - 1]) / (hm * hbar);
        let kp = 0.5 * (b2[i] + b2[i + 1]) / (hp * hbar);
        let beta = b1[i] - b2_x[i];
        let s = hm + hp;
        let (l, u) = (km - beta * hp / (hm * s), kp + beta * hm / (hp * s));
        if l > 0.0 && u > 0.0 {
            lo[i] = l;
            up[i] = u;
            di[i] = -(km + kp) + beta * (hp - hm) / (hm * hp) + b0[i];
        } else if beta > 0.0 {
            lo[i] = km;
            up[i] = kp + beta / hp;
            di[i] = -(km + kp) - beta / hp + b0[i];
        } else {
            lo[i] = km - beta / hm;
            up[i] = kp;
            di[i] = -(km + kp) + beta / hm + b0[i];
        }
    }
    (lo, di, up)
}

pub fn build_operator(front: &FrontProfile, model: &Model, a: f64, eps: f64) -> Result<DiscretizedOperator> {
    let n = front.len();
    if n < MIN_POINTS {
        return Err(Error::Domain(format!(
            "grid has {n} points, at least {MIN_POINTS} required"
        )));
    }
    if !(eps >= 0.0) {
        return Err(Error::Domain(format!("eps = {eps} must be non-negative")));
    }
    let cs = front.c;
    let mut b2 = Vec::with_capacity(n);
    let mut b1 = Vec::with_capacity(n);
    let mut b0 = Vec::with_capacity(n);
    let mut b2_x = Vec::with_capacity(n);
    let mut b2_xx = Vec::with_capacity(n);
    for i in 0..n {
        let (p, px, pxx) = (front.phi[i], front.phi_x[i], front.phi_xx[i]);
        let d = model.diff(p) + eps;
        let dx = model.diff_1(p) * px;
        let dxx = model.diff_2(p) * px * px + model.diff_1(p) * pxx;
        b2.push(d);
        b1.push(2.0 * dx + cs - 2.0 * a * d);
        b0.push(a * a * d - 2.0 * a * dx - a * cs + dxx + model.react_1(p));
        b2_x.push(dx);
        b2_xx.push(dxx);
    }
    let (lo, di, up) = conservative_stencil(&front.x, &b2, &b1, &b2_x, &b0);
    let essential_bound = consistent_splitting_bound(model, front.case, cs, a, eps);
    Ok(DiscretizedOperator {
        x: front.x.clone(),
        phase_index: front.phase_index,
        b2,
        b1,
        b0,
        b2_x,
        b2_xx,
        a,
        eps,
        c: cs,
        essential_bound,
        stencil: Stencil {
            nodes: front.x.clone(),
            phase_index: front.phase_index,
            lo,
            di,
            up,
        },
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenPair {
    pub lambda: C64,
    /// Values on the full grid, zero at both ends.
    pub u: Vec<C64>,
    pub residual: f64,
    pub boundary_mass: f64,
    pub flagged: bool,
    pub sign_changes: Option<usize>,
    pub converged: bool,
}

impl EigenPair {
    pub fn is_real(&self) -> bool {
        self.lambda.im.abs() <= 1e-10 * self.lambda.norm().max(1.0)
    }

    pub fn real_part(&self) -> Vec<f64> {
        self.u.iter().map(|v| v.re).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Window {
    All,
    /// Keep `Re lambda >= bound`.
    RightOf(f64),
    Disc { center: C64, radius: f64 },
}

impl Window {
    fn contains(&self, z: C64) -> bool {
        match *self {
            Window::All => true,
            Window::RightOf(b) => z.re >= b,
            Window::Disc { center, radius } => (z - center).norm() <= radius,
        }
    }
}

/// Products `lower[i] * upper[i]`; the symmetrised matrix has these as
/// squared off-diagonals.
fn coupling_products(a: &Tridiagonal) -> Result<Vec<f64>> {
    let e2: Vec<f64> = a.lower.iter().zip(&a.upper).map(|(l, u)| l * u).collect();
    if let Some(i) = e2.iter().position(|v| !(*v > 0.0 && v.is_finite())) {
        return Err(Error::Numerical(format!(
            "stencil coupling {i} is not positive; the spectrum need not be real"
        )));
    }
    Ok(e2)
}

/// Number of eigenvalues greater than `x`, from the inertia of `x I - T`.
pub fn count_above(diag: &[f64], e2: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut q = 1.0;
    for (i, &d) in diag.iter().enumerate() {
        q = if i == 0 { x - d } else { (x - d) - e2[i - 1] / q };
        if q == 0.0 {
            q = -f64::EPSILON * (x.abs() + d.abs()).max(f64::MIN_POSITIVE);
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// The `k` largest eigenvalues, descending, by bisection.
pub fn top_eigenvalues(diag: &[f64], e2: &[f64], k: usize) -> Vec<f64> {
    let n = diag.len();
    let off: Vec<f64> = e2.iter().map(|v| v.sqrt()).collect();
    let radius = |i: usize| {
        (if i > 0 { off[i - 1] } else { 0.0 }) + (if i + 1 < n { off[i] } else { 0.0 })
    };
    let lo0 = (0..n).map(|i| diag[i] - radius(i)).fold(f64::INFINITY, f64::min);
    let mut hi = (0..n).map(|i| diag[i] + radius(i)).fold(f64::NEG_INFINITY, f64::max);
    let mut out = Vec::with_capacity(k.min(n));
    for j in 0..k.min(n) {
        let mut lo = lo0;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi || hi - lo <= 2.0 * f64::EPSILON * lo.abs().max(hi.abs()) {
                break;
            }
            if count_above(diag, e2, mid) > j {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let lam = 0.5 * (lo + hi);
        out.push(lam);
        hi = lam.max(lo);
    }
    out
}

/// Inverse iteration at a known real eigenvalue.
fn eigenvector(a: &Tridiagonal, lambda: f64, w: &[f64]) -> Result<Vec<C64>> {
    let n = a.len();
    let scale = lambda.abs().max(1.0);
    let lu = a.factor_shifted(c(lambda + 1e-12 * scale))?;
    // deterministic, generic start
    let mut x: Vec<C64> = (0..n).map(|i| c(1.0 + 0.5 * (12.9898 * i as f64).sin())).collect();
    for _ in 0..3 {
        lu.solve(&mut x);
        let nrm = weighted_norm(w, &x);
        x.iter_mut().for_each(|v| *v /= nrm);
    }
    Ok(x)
}

fn side_half_widths(nodes: &[f64], phase: usize) -> (f64, f64) {
    let x0 = nodes[phase];
    (x0 - nodes[0], nodes[nodes.len() - 1] - x0)
}

fn boundary_mass(nodes: &[f64], phase: usize, w: &[f64], u: &[C64]) -> f64 {
    let (lm, lp) = side_half_widths(nodes, phase);
    let x0 = nodes[phase];
    let total: f64 = w.iter().zip(u).map(|(a, b)| a * b.norm_sqr()).sum();
    let outer: f64 = nodes
        .iter()
        .zip(w.iter().zip(u))
        .filter(|(&x, _)| x - x0 <= -(1.0 - BOUNDARY_FRACTION) * lm || x - x0 >= (1.0 - BOUNDARY_FRACTION) * lp)
        .map(|(_, (a, b))| a * b.norm_sqr())
        .sum();
    if total > 0.0 {
        outer / total
    } else {
        0.0
    }
}

/// Sign changes of `u` away from the outer 5% of each side, ignoring
/// entries below `1e-8 max|u|`.
pub fn count_sign_changes(nodes: &[f64], phase: usize, u: &[f64]) -> usize {
    let (lm, lp) = side_half_widths(nodes, phase);
    let x0 = nodes[phase];
    let umax = u.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let mut last = 0.0f64;
    let mut count = 0;
    for (&x, &v) in nodes.iter().zip(u) {
        let d = x - x0;
        if d < -(1.0 - STURM_EXCLUDE) * lm || d > (1.0 - STURM_EXCLUDE) * lp {
            continue;
        }
        if v.abs() < STURM_FLOOR * umax {
            continue;
        }
        if last != 0.0 && v.signum() != last.signum() {
            count += 1;
        }
        last = v;
    }
    count
}

/// Eigenpairs of a stencil operator, sorted by descending eigenvalue.
/// The spectrum is real because all couplings are positive.
pub fn solve_stencil(st: &Stencil, n_eigs: usize, window: Window) -> Result<Vec<EigenPair>> {
    let a = st.matrix();
    let e2 = coupling_products(&a)?;
    let w_full = st.weights();
    let w_int = &w_full[1..st.len() - 1];
    let lambdas = top_eigenvalues(&a.diag, &e2, n_eigs);
    let vecs: Vec<Result<Vec<C64>>> = lambdas.par_iter().map(|&l| eigenvector(&a, l, w_int)).collect();
    let mut pairs = Vec::with_capacity(lambdas.len());
    for (&l, v) in lambdas.iter().zip(vecs) {
        let mut u = vec![c(0.0); st.len()];
        u[1..st.len() - 1].copy_from_slice(&v?);
        pairs.push(finish_pair(st, &w_full, c(l), u));
    }
    pairs.retain(|p| window.contains(p.lambda));
    Ok(pairs)
}

fn finish_pair(st: &Stencil, w: &[f64], lambda: C64, mut u: Vec<C64>) -> EigenPair {
    let real = lambda.im.abs() <= 1e-10 * lambda.norm().max(1.0);
    let lambda = if real { c(lambda.re) } else { lambda };
    // fix the phase: positive at the phase point, or at the largest entry
    let umax = u.iter().fold(0.0f64, |m, v| m.max(v.norm()));
    let anchor = if u[st.phase_index].norm() > 1e-8 * umax {
        u[st.phase_index]
    } else {
        *u.iter().max_by(|a, b| a.norm().total_cmp(&b.norm())).expect("nonempty")
    };
    let rot = anchor.conj() / anchor.norm();
    u.iter_mut().for_each(|v| *v *= rot);
    if real {
        u.iter_mut().for_each(|v| *v = c(v.re));
    }
    let nrm = weighted_norm(w, &u);
    u.iter_mut().for_each(|v| *v /= nrm);
    let lu = st.apply_full(&u);
    let r: Vec<C64> = lu.iter().zip(&u).map(|(y, x)| y - lambda * x).collect();
    let residual = weighted_norm(w, &r);
    let bm = boundary_mass(&st.nodes, st.phase_index, w, &u);
    let sign_changes = real.then(|| {
        let re: Vec<f64> = u.iter().map(|v| v.re).collect();
        count_sign_changes(&st.nodes, st.phase_index, &re)
    });
    EigenPair {
        lambda,
        u,
        residual,
        boundary_mass: bm,
        flagged: bm > BOUNDARY_MASS_LIMIT,
        sign_changes,
        converged: residual <= RESIDUAL_TOL,
    }
}

pub fn compute_spectrum(op: &DiscretizedOperator, n_eigs: usize, window: Window) -> Result<Vec<EigenPair>> {
    solve_stencil(&op.stencil, n_eigs, window)
}

/// `|| L_a (e^{ax} phi_x) || / || e^{ax} phi_x ||`, evaluated in log space
/// with five-point derivatives of the sampled mode.
pub fn translation_eigenpair_check(front: &FrontProfile, model: &Model, a: f64) -> Result<f64> {
    let op = build_operator(front, model, a, 0.0)?;
    let u = translation_mode(front, a);
    let ux = derivative(&op.x, &u, 1, 5);
    let uxx = derivative(&op.x, &u, 2, 5);
    let n = u.len();
    let lu: Vec<C64> = (0..n)
        .map(|i| {
            if i == 0 || i + 1 == n {
                c(0.0)
            } else {
                c(op.b2[i] * uxx[i] + op.b1[i] * ux[i] + op.b0[i] * u[i])
            }
        })
        .collect();
    let uc: Vec<C64> = u.iter().map(|&v| c(v)).collect();
    let w = op.stencil.weights();
    Ok(weighted_norm(&w, &lu) / weighted_norm(&w, &uc))
}

/// `e^{ax} phi_x` up to a positive constant, with the largest magnitude 1.
pub fn translation_mode(front: &FrontProfile, a: f64) -> Vec<f64> {
    let logs: Vec<f64> = front
        .x
        .iter()
        .zip(&front.phi_x)
        .map(|(&x, &v)| a * x + v.abs().ln())
        .collect();
    let top = logs.iter().fold(f64::NEG_INFINITY, |m, &v| m.max(v));
    logs.iter()
        .zip(&front.phi_x)
        .map(|(l, v)| v.signum() * (l - top).exp())
        .collect()
}

/// Sturmian form `omega^{-1} (omega v_xi)_xi + b0t v` in the variable
/// `xi = ∫ b2^{-1/2}`, with `u = b2^{-1/4} v`.
#[derive(Debug, Clone)]
pub struct LiouvilleOperator {
    pub xi: Vec<f64>,
    pub b1t: Vec<f64>,
    pub b0t: Vec<f64>,
    /// Symmetrising weight, equal to 1 at the phase point.
    pub omega: Vec<f64>,
    /// `b2^{1/4}` at the nodes.
    pub quarter: Vec<f64>,
    pub stencil: Stencil,
}

impl LiouvilleOperator {
    pub fn to_sturm(&self, u: &[C64]) -> Vec<C64> {
        u.iter().zip(&self.quarter).map(|(v, q)| v * q).collect()
    }

    pub fn from_sturm(&self, v: &[C64]) -> Vec<C64> {
        v.iter().zip(&self.quarter).map(|(v, q)| v / q).collect()
    }

    /// Discrete `<u, v>_omega` (bilinear, no conjugation).
    pub fn omega_inner(&self, u: &[f64], v: &[f64]) -> f64 {
        let w = trapezoid_weights(&self.xi);
        (0..u.len()).map(|i| w[i] * self.omega[i] * u[i] * v[i]).sum()
    }

    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        let vc: Vec<C64> = v.iter().map(|&t| c(t)).collect();
        self.stencil.apply_full(&vc).iter().map(|z| z.re).collect()
    }

    pub fn spectrum(&self, n_eigs: usize, window: Window) -> Result<Vec<EigenPair>> {
        solve_stencil(&self.stencil, n_eigs, window)
    }
}

/// Fourth-order cumulative integral of `g` with derivative `gp`, zero at `anchor`.
fn cumulative_hermite(x: &[f64], g: &[f64], gp: &[f64], anchor: usize) -> Vec<f64> {
    let n = x.len();
    let mut out = vec![0.0; n];
    let seg = |i: usize| {
        let h = x[i + 1] - x[i];
        0.5 * h * (g[i] + g[i + 1]) + h * h / 12.0 * (gp[i] - gp[i + 1])
    };
    for i in anchor + 1..n {
        out[i] = out[i - 1] + seg(i - 1);
    }
    for i in (0..anchor).rev() {
        out[i] = out[i + 1] - seg(i);
    }
    out
}

pub fn liouville_transform(op: &DiscretizedOperator) -> Result<LiouvilleOperator> {
    let n = op.x.len();
    let min_b2 = op.b2.iter().fold(f64::INFINITY, |m, &v| m.min(v));
    if !(min_b2 > 1e-10) {
        return Err(Error::Domain(format!(
            "leading coefficient min b2 = {min_b2:.3e} is not uniformly positive"
        )));
    }
    let p = op.phase_index;
    let g: Vec<f64> = op.b2.iter().map(|b| b.powf(-0.5)).collect();
    let gp: Vec<f64> = (0..n).map(|i| -0.5 * op.b2[i].powf(-1.5) * op.b2_x[i]).collect();
    let xi = cumulative_hermite(&op.x, &g, &gp, p);

    let mut b1t = Vec::with_capacity(n);
    let mut b0t = Vec::with_capacity(n);
    let mut drift = Vec::with_capacity(n);
    for i in 0..n {
        let (b2, b2x, b2xx) = (op.b2[i], op.b2_x[i], op.b2_xx[i]);
        let b1 = op.b1[i];
        b1t.push((b1 - b2x) / b2.sqrt());
        b0t.push(5.0 / 16.0 * b2x * b2x / b2 - 0.25 * b2xx - 0.25 * b1 * b2x / b2 + op.b0[i]);
        drift.push((b1 - b2x) / b2);
    }
    // ln omega = ∫ (b1 - b2') / b2 dx
    let drift_x = derivative(&op.x, &drift, 1, 5);
    let ln_omega = cumulative_hermite(&op.x, &drift, &drift_x, p);
    let omega: Vec<f64> = ln_omega.iter().map(|v| v.exp()).collect();

    let mut lo = vec![0.0; n];
    let mut di = vec![0.0; n];
    let mut up = vec![0.0; n];
    for i in 1..n - 1 {
        let dm = xi[i] - xi[i - 1];
        let dp = xi[i + 1] - xi[i];
        let dbar = 0.5 * (dm + dp);
        let wm = (0.5 * (ln_omega[i] + ln_omega[i - 1]) - ln_omega[i]).exp();
        let wp = (0.5 * (ln_omega[i] + ln_omega[i + 1]) - ln_omega[i]).exp();
        lo[i] = wm / (dm * dbar);
        up[i] = wp / (dp * dbar);
        di[i] = -(lo[i] + up[i]) + b0t[i];
    }
    Ok(LiouvilleOperator {
        quarter: op.b2.iter().map(|b| b.powf(0.25)).collect(),
        stencil: Stencil {
            nodes: xi.clone(),
            phase_index: p,
            lo,
            di,
            up,
        },
        xi,
        b1t,
        b0t,
        omega,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SturmEntry {
    pub j: usize,
    pub lambda: f64,
    pub zero_count: usize,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SturmReport {
    pub entries: Vec<SturmEntry>,
    /// Indices of input pairs with non-real eigenvalues.
    pub skipped: Vec<usize>,
    pub min_gap: f64,
    pub simple: bool,
    pub all_pass: bool,
}

/// Zero counts against the oscillation ordering, for pairs sorted by
/// descending eigenvalue.
pub fn sturm_check(pairs: &[EigenPair]) -> SturmReport {
    let mut entries = Vec::new();
    let mut skipped = Vec::new();
    for (idx, p) in pairs.iter().enumerate() {
        match (p.is_real(), p.sign_changes) {
            (true, Some(z)) => {
                let j = entries.len();
                entries.push(SturmEntry {
                    j,
                    lambda: p.lambda.re,
                    zero_count: z,
                    pass: z == j,
                });
            }
            _ => skipped.push(idx),
        }
    }
    let min_gap = entries
        .windows(2)
        .map(|w| w[0].lambda - w[1].lambda)
        .fold(f64::INFINITY, f64::min);
    let simple = min_gap > 1e-8;
    SturmReport {
        all_pass: simple && skipped.is_empty() && entries.iter().all(|e| e.pass),
        entries,
        skipped,
        min_gap,
        simple,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub eps: f64,
    pub lambdas: Vec<C64>,
    pub drifts: Vec<f64>,
    /// The nearest eigenvalue to the reference is not the same-rank one.
    pub ambiguous: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepTable {
    pub reference: Vec<C64>,
    pub rows: Vec<SweepRow>,
    /// Fitted slope of `log drift` against `log eps`, per tracked eigenvalue.
    pub orders: Vec<Option<f64>>,
    /// Drift strictly decreasing as eps decreases, per tracked eigenvalue.
    pub monotone: Vec<bool>,
}

pub fn regularization_sweep(
    front: &FrontProfile,
    model: &Model,
    a: f64,
    eps_list: &[f64],
    n_eigs: usize,
) -> Result<SweepTable> {
    if eps_list.windows(2).any(|w| w[1] >= w[0]) || eps_list.iter().any(|&e| !(e >= 0.0)) {
        return Err(Error::Domain("eps list must be non-negative and strictly decreasing".into()));
    }
    let mut all: Vec<f64> = eps_list.to_vec();
    if all.last() != Some(&0.0) {
        all.push(0.0);
    }
    let spectra: Vec<Result<Vec<EigenPair>>> = all
        .par_iter()
        .map(|&e| {
            let op = build_operator(front, model, a, e)?;
            compute_spectrum(&op, n_eigs + 4, Window::All)
        })
        .collect();
    let mut spectra: Vec<Vec<C64>> = spectra
        .into_iter()
        .map(|r| r.map(|v| v.into_iter().map(|p| p.lambda).collect()))
        .collect::<Result<_>>()?;
    let reference: Vec<C64> = spectra.pop().expect("eps = 0 present").into_iter().take(n_eigs).collect();

    let mut rows = Vec::new();
    for (&eps, spec) in all.iter().zip(spectra.iter()) {
        let mut lambdas = Vec::new();
        let mut drifts = Vec::new();
        let mut ambiguous = Vec::new();
        // spectra are real and simple, so the j-th eigenvalue is tracked by rank
        for (j, &r) in reference.iter().enumerate() {
            let best = spec.get(j).copied().unwrap_or(C64::new(f64::NAN, f64::NAN));
            let dist = (best - r).norm();
            let nearest = spec.iter().enumerate().min_by(|a, b| (a.1 - r).norm().total_cmp(&(b.1 - r).norm()));
            lambdas.push(best);
            drifts.push(dist);
            ambiguous.push(nearest.map(|(k, _)| k) != Some(j));
        }
        rows.push(SweepRow {
            eps,
            lambdas,
            drifts,
            ambiguous,
        });
    }
    if eps_list.last() == Some(&0.0) {
        rows.push(SweepRow {
            eps: 0.0,
            lambdas: reference.clone(),
            drifts: vec![0.0; reference.len()],
            ambiguous: vec![false; reference.len()],
        });
    }
    let positive: Vec<&SweepRow> = rows.iter().filter(|r| r.eps > 0.0).collect();
    let mut orders = Vec::new();
    let mut monotone = Vec::new();
    for j in 0..reference.len() {
        let pts: Vec<(f64, f64)> = positive
            .iter()
            .filter(|r| r.drifts[j] > 0.0)
            .map(|r| (r.eps.ln(), r.drifts[j].ln()))
            .collect();
        orders.push((pts.len() >= 2).then(|| {
            let (xs, ys): (Vec<f64>, Vec<f64>) = pts.into_iter().unzip();
            linear_fit(&xs, &ys).1
        }));
        monotone.push(positive.windows(2).all(|w| w[1].drifts[j] < w[0].drifts[j]));
    }
    Ok(SweepTable {
        reference,
        rows,
        orders,
        monotone,
    })
}
