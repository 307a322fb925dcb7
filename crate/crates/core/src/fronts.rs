//! Monotone front profiles, their tail decay and the bounded coefficient
//! `D(phi) phi_xx / phi_x`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{derivative, linear_fit, two_sided};
use crate::model::Model;
use crate::ode::{integrate, DenseStep, Flow, Tolerances};

/// Below this `D(phi)` the second derivative comes from finite differences.
const D_ANALYTIC_MIN: f64 = 1e-12;
const X_LIMIT: f64 = 1e5;
const TAU_LIMIT: f64 = 1e12;
// Regularised arclength ds = (D + KAPPA) / D dx keeps the time variable
// moderate, so locating grid nodes does not lose digits to a huge tau.
const KAPPA: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FrontCase {
    #[serde(rename = "sN-inc")]
    SnIncreasing,
    #[serde(rename = "sN-dec")]
    SnDecreasing,
    Nd,
    Nn,
}

impl FrontCase {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "sN-inc" | "sN" | "sn-inc" => Some(FrontCase::SnIncreasing),
            "sN-dec" | "sn-dec" => Some(FrontCase::SnDecreasing),
            "Nd" | "nd" => Some(FrontCase::Nd),
            "Nn" | "nn" => Some(FrontCase::Nn),
            _ => None,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            FrontCase::SnIncreasing => "sN-inc",
            FrontCase::SnDecreasing => "sN-dec",
            FrontCase::Nd => "Nd",
            FrontCase::Nn => "Nn",
        }
    }

    /// `(u_minus, u_plus)`.
    pub fn ends(self, alpha: f64) -> (f64, f64) {
        match self {
            FrontCase::SnIncreasing => (0.0, 1.0),
            FrontCase::SnDecreasing => (1.0, 0.0),
            FrontCase::Nd => (0.0, alpha),
            FrontCase::Nn => (1.0, alpha),
        }
    }

    pub fn is_stationary(self) -> bool {
        matches!(self, FrontCase::SnIncreasing | FrontCase::SnDecreasing)
    }

    pub fn increasing(self) -> bool {
        matches!(self, FrontCase::SnIncreasing | FrontCase::Nd)
    }

    /// The side whose end state is `0`, if any.
    pub fn degenerate_side(self) -> Option<Side> {
        match self {
            FrontCase::SnIncreasing | FrontCase::Nd => Some(Side::Minus),
            FrontCase::SnDecreasing => Some(Side::Plus),
            FrontCase::Nn => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    #[serde(rename = "-")]
    Minus,
    #[serde(rename = "+")]
    Plus,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridConfig {
    /// Total number of grid points.
    pub n: usize,
    /// Clustering towards the degenerate end of stationary fronts.
    pub stretch: f64,
    pub l_minus: Option<f64>,
    pub l_plus: Option<f64>,
    pub delta0: f64,
    pub delta: f64,
    /// Value of `phi(0)`; the midpoint of the end states when absent.
    pub phase_value: Option<f64>,
    pub rtol: f64,
    pub atol: f64,
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig {
            n: 4000,
            stretch: 0.9,
            l_minus: None,
            l_plus: None,
            delta0: 1e-6,
            delta: 1e-6,
            phase_value: None,
            rtol: 1e-12,
            atol: 1e-20,
        }
    }
}

impl GridConfig {
    pub fn with_n(n: usize) -> Self {
        GridConfig {
            n,
            ..Default::default()
        }
    }

    fn tolerances(&self) -> Tolerances {
        Tolerances {
            rtol: self.rtol,
            atol: self.atol,
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrontProfile {
    pub case: FrontCase,
    pub c: f64,
    pub alpha: f64,
    pub b: f64,
    pub u_minus: f64,
    pub u_plus: f64,
    pub x: Vec<f64>,
    pub phi: Vec<f64>,
    pub phi_x: Vec<f64>,
    pub phi_xx: Vec<f64>,
    /// Index of the node `x = 0`, where the phase condition holds.
    pub phase_index: usize,
    pub l_minus: f64,
    pub l_plus: f64,
    pub residual_max: f64,
}

impl FrontProfile {
    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    /// Pointwise residual of `(D phi_x)_x + c phi_x + f`, zero at the two
    /// nodes nearest each end where the stencil is one-sided.
    pub fn residual(&self, model: &Model) -> Vec<f64> {
        profile_residual(model, self.c, &self.x, &self.phi, &self.phi_x)
    }

    pub fn check_invariants(&self, model: &Model, tol: f64) -> Vec<(String, bool)> {
        let sign = if self.case.increasing() { 1.0 } else { -1.0 };
        let (lo, hi) = (self.u_minus.min(self.u_plus), self.u_minus.max(self.u_plus));
        let cbar = model.threshold_speed();
        let speed_ok = if self.case.is_stationary() {
            self.c == 0.0
        } else {
            self.c > cbar
        };
        vec![
            (
                "monotone".into(),
                self.phi_x.iter().all(|&v| sign * v > 0.0),
            ),
            (
                "range".into(),
                self.phi.iter().all(|&p| p > lo && p < hi),
            ),
            (
                "residual".into(),
                self.residual(model).iter().all(|r| r.abs() <= tol),
            ),
            ("speed".into(), speed_ok),
        ]
    }
}

fn profile_residual(model: &Model, c: f64, x: &[f64], phi: &[f64], phi_x: &[f64]) -> Vec<f64> {
    let q: Vec<f64> = phi.iter().zip(phi_x).map(|(&p, &v)| model.diff(p) * v).collect();
    let qx = derivative(x, &q, 1, 5);
    let n = x.len();
    (0..n)
        .map(|i| {
            if i < 2 || i + 2 >= n {
                0.0
            } else {
                qx[i] + c * phi_x[i] + model.react(phi[i])
            }
        })
        .collect()
}

/// First pass over a trajectory: where the phase value and the stop value are hit.
struct Pass {
    steps: usize,
    x_start: f64,
    x_mid: Option<f64>,
    x_stop: f64,
}

struct Shot<'a, const N: usize> {
    rhs: &'a dyn Fn(f64, &[f64; N]) -> [f64; N],
    t0: f64,
    y0: [f64; N],
    t_lim: f64,
    tol: Tolerances,
    /// Spatial coordinate `x` at `(t, y)`.
    coord: &'a dyn Fn(f64, &[f64; N]) -> f64,
    stop_value: f64,
    bounds: (f64, f64),
}

impl<const N: usize> Shot<'_, N> {
    fn first_pass(&self, mid_value: Option<f64>) -> Result<Pass> {
        let mut steps = 0usize;
        let mut x_mid = None;
        let mut x_stop = None;
        let mut escaped = None;
        integrate(self.rhs, self.t0, self.y0, self.t_lim, &self.tol, |s: &DenseStep<N>| {
            steps += 1;
            let p = s.y1[0];
            if !p.is_finite() || p < self.bounds.0 || p > self.bounds.1 {
                escaped = Some(p);
                return Flow::Stop;
            }
            if let (None, Some(m)) = (x_mid, mid_value) {
                if let Some(t) = s.locate(|y| y[0] - m) {
                    x_mid = Some((self.coord)(t, &s.eval(t)));
                }
            }
            if let Some(t) = s.locate(|y| y[0] - self.stop_value) {
                x_stop = Some((self.coord)(t, &s.eval(t)));
                return Flow::Stop;
            }
            Flow::Continue
        })?;
        if let Some(p) = escaped {
            return Err(Error::Integration(format!(
                "trajectory left [{:.6}, {:.6}] (phi = {p})",
                self.bounds.0, self.bounds.1
            )));
        }
        let x_stop = x_stop.ok_or_else(|| {
            Error::Integration(format!("end state not reached within {steps} steps"))
        })?;
        Ok(Pass {
            steps,
            x_start: (self.coord)(self.t0, &self.y0),
            x_mid,
            x_stop,
        })
    }

    /// Replays the integration and samples at `targets` (in traversal order).
    fn sample(&self, pass: &Pass, targets: &[f64]) -> Result<Vec<[f64; N]>> {
        let mut out = Vec::with_capacity(targets.len());
        let mut k = 0usize;
        let mut steps = 0usize;
        let forward = pass.x_stop > pass.x_start;
        let ahead = |a: f64, b: f64| if forward { a <= b } else { a >= b };
        integrate(self.rhs, self.t0, self.y0, self.t_lim, &self.tol, |s: &DenseStep<N>| {
            steps += 1;
            let last = steps >= pass.steps;
            let x1 = (self.coord)(s.t1, &s.y1);
            while k < targets.len() && (last || ahead(targets[k], x1)) {
                out.push(self.solve_coord(s, targets[k]));
                k += 1;
            }
            if k == targets.len() || last {
                Flow::Stop
            } else {
                Flow::Continue
            }
        })?;
        if out.len() != targets.len() {
            return Err(Error::Integration("resampling fell short of the grid".into()));
        }
        Ok(out)
    }

    fn solve_coord(&self, s: &DenseStep<N>, target: f64) -> [f64; N] {
        let x0 = (self.coord)(s.t0, &s.y0);
        let x1 = (self.coord)(s.t1, &s.y1);
        let frac = (target - x0) / (x1 - x0);
        if !(frac > 0.0) {
            return s.y0;
        }
        if frac >= 1.0 {
            return s.y1;
        }
        // x is monotone along the trajectory
        let (mut lo, mut hi) = (s.t0, s.t1);
        for _ in 0..100 {
            let mid = 0.5 * (lo + hi);
            if mid == lo || mid == hi {
                break;
            }
            let xm = (self.coord)(mid, &s.eval(mid));
            if (xm - target) * (x1 - x0) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        s.eval(0.5 * (lo + hi))
    }
}

fn check_phase(value: f64, lo: f64, hi: f64) -> Result<f64> {
    if value > lo && value < hi {
        Ok(value)
    } else {
        Err(Error::Domain(format!(
            "phase value {value} not strictly between {lo} and {hi}"
        )))
    }
}

/// Assembles a profile from sampled `(phi, phi_x)` on the grid.
#[allow(clippy::too_many_arguments)]
fn assemble(
    model: &Model,
    case: FrontCase,
    c: f64,
    x: Vec<f64>,
    phi: Vec<f64>,
    phi_x: Vec<f64>,
    phase_index: usize,
) -> FrontProfile {
    let fd = derivative(&x, &phi_x, 1, 5);
    let phi_xx: Vec<f64> = (0..x.len())
        .map(|i| {
            let (p, v) = (phi[i], phi_x[i]);
            let d = model.diff(p);
            if d > D_ANALYTIC_MIN {
                -(c * v + model.react(p) + model.diff_1(p) * v * v) / d
            } else {
                fd[i]
            }
        })
        .collect();
    let residual_max = profile_residual(model, c, &x, &phi, &phi_x)
        .iter()
        .fold(0.0f64, |m, r| m.max(r.abs()));
    let (u_minus, u_plus) = case.ends(model.alpha);
    FrontProfile {
        case,
        c,
        alpha: model.alpha,
        b: model.spec.b(),
        u_minus,
        u_plus,
        l_minus: -x[0],
        l_plus: x[x.len() - 1],
        x,
        phi,
        phi_x,
        phi_xx,
        phase_index,
        residual_max,
    }
}

fn clip(natural: f64, cap: Option<f64>) -> f64 {
    match cap {
        Some(l) if l > 0.0 && l < natural => l,
        _ => natural,
    }
}

/// Stationary front from the zero level set of the first integral.
pub fn solve_stationary_front(
    model: &Model,
    increasing: bool,
    cfg: &GridConfig,
) -> Result<FrontProfile> {
    model.require_valid()?;
    let d1 = model.script_d(1.0)?;
    if d1.abs() > 1e-10 {
        return Err(Error::Domain(format!(
            "model is not stationary: integral of D f over [0,1] = {d1:.3e}"
        )));
    }
    let case = if increasing {
        FrontCase::SnIncreasing
    } else {
        FrontCase::SnDecreasing
    };
    let sign = if increasing { 1.0 } else { -1.0 };
    let delta = cfg.delta;
    let phase = check_phase(cfg.phase_value.unwrap_or(0.5), delta, 1.0 - delta)?;

    // -D(phi) on the zero level set, evaluated from the nearer end
    let minus_d = move |p: f64| -> f64 {
        let v = if p <= 0.5 {
            -model_script_d_raw(model, p)
        } else {
            -model.script_d_from_one(p)
        };
        v.max(0.0)
    };
    let slope = move |p: f64| sign * std::f64::consts::SQRT_2 * minus_d(p).sqrt() / model.diff(p);
    let rhs = move |_: f64, y: &[f64; 1]| [slope(y[0])];
    let coord = |t: f64, _: &[f64; 1]| t;
    let tol = cfg.tolerances();
    let bounds = (-delta, 1.0 + delta);

    // right half runs forward in x, left half backward
    let (right_stop, left_stop) = if increasing {
        (1.0 - delta, delta)
    } else {
        (delta, 1.0 - delta)
    };
    let right = Shot {
        rhs: &rhs,
        t0: 0.0,
        y0: [phase],
        t_lim: X_LIMIT,
        tol,
        coord: &coord,
        stop_value: right_stop,
        bounds,
    };
    let left = Shot {
        t_lim: -X_LIMIT,
        stop_value: left_stop,
        ..right
    };
    let pr = right.first_pass(None)?;
    let pl = left.first_pass(None)?;
    let len_r = clip(pr.x_stop, cfg.l_plus);
    let len_l = clip(-pl.x_stop, cfg.l_minus);
    let (s_l, s_r) = if increasing {
        (cfg.stretch, 0.0)
    } else {
        (0.0, cfg.stretch)
    };
    let (x, phase_index) = two_sided(len_l, len_r, cfg.n, s_l, s_r);
    let right_targets: Vec<f64> = x[phase_index + 1..].to_vec();
    let left_targets: Vec<f64> = x[..phase_index].iter().rev().copied().collect();
    let ys_r = right.sample(&pr, &right_targets)?;
    let ys_l = left.sample(&pl, &left_targets)?;
    let mut phi: Vec<f64> = ys_l.iter().rev().map(|y| y[0]).collect();
    phi.push(phase);
    phi.extend(ys_r.iter().map(|y| y[0]));
    if let Some(i) = (0..phi.len()).find(|&i| {
        let p = phi[i];
        p > 0.0 && p < 1.0 && -model.script_d(p).unwrap_or(0.0) < -1e-13
    }) {
        return Err(Error::Numerical(format!(
            "level set lost monotonicity at x = {}",
            x[i]
        )));
    }
    let phi_x: Vec<f64> = phi.iter().map(|&p| slope(p)).collect();
    Ok(assemble(model, case, 0.0, x, phi, phi_x, phase_index))
}

fn model_script_d_raw(model: &Model, p: f64) -> f64 {
    model.script_d(p.clamp(0.0, 1.0)).unwrap_or(0.0)
}

/// Travelling front of case `Nd` (from 0 to alpha) or `Nn` (from 1 to alpha).
pub fn solve_traveling_front(
    model: &Model,
    case: FrontCase,
    c: f64,
    cfg: &GridConfig,
) -> Result<FrontProfile> {
    model.require_valid()?;
    let cbar = model.threshold_speed();
    if !(c.is_finite() && c > cbar * (1.0 + 1e-6)) {
        return Err(Error::Domain(format!(
            "c = {c} must exceed the threshold speed {cbar:.4} (c <= cbar(alpha))"
        )));
    }
    let alpha = model.alpha;
    let (delta0, delta) = (cfg.delta0, cfg.delta);
    let tol = cfg.tolerances();
    match case {
        FrontCase::Nn => {
            let phase = check_phase(cfg.phase_value.unwrap_or(0.5 * (1.0 + alpha)), alpha, 1.0)?;
            let d1 = model.diff(1.0);
            let mu = (-c + (c * c - 4.0 * d1 * model.react_1(1.0)).sqrt()) / (2.0 * d1);
            let rhs = move |_: f64, y: &[f64; 2]| {
                let (p, v) = (y[0], y[1]);
                [v, -(c * v + model.diff_1(p) * v * v + model.react(p)) / model.diff(p)]
            };
            let coord = |t: f64, _: &[f64; 2]| t;
            let shot = Shot {
                rhs: &rhs,
                t0: 0.0,
                y0: [1.0 - delta0, -delta0 * mu],
                t_lim: X_LIMIT,
                tol,
                coord: &coord,
                stop_value: alpha + delta,
                bounds: (alpha - delta, 1.0),
            };
            finish_travelling(model, case, c, cfg, &shot, phase, |y| (y[0], y[1]))
        }
        FrontCase::Nd => {
            let phase = check_phase(cfg.phase_value.unwrap_or(0.5 * alpha), 0.0, alpha)?;
            let (f1, f2, dd1) = (model.react_1(0.0), model.react_2(0.0), model.diff_1(0.0));
            // quadratic centre manifold v = h(phi)
            let h1 = -f1 / c;
            let h2 = -(f2 * c * c + 4.0 * dd1 * f1 * f1) / (2.0 * c * c * c);
            let v0 = h1 * delta0 + h2 * delta0 * delta0;
            let rhs = move |_: f64, y: &[f64; 3]| {
                let (p, v) = (y[0], y[1]);
                let d = model.diff(p);
                let s = 1.0 / (d + KAPPA);
                [s * d * v, s * (-c * v - model.diff_1(p) * v * v - model.react(p)), s * d]
            };
            let coord = |_: f64, y: &[f64; 3]| y[2];
            let shot = Shot {
                rhs: &rhs,
                t0: 0.0,
                y0: [delta0, v0, 0.0],
                t_lim: TAU_LIMIT,
                tol: Tolerances { h_init: 1e-2, ..tol },
                coord: &coord,
                stop_value: alpha - delta,
                bounds: (0.0, alpha + delta),
            };
            finish_travelling(model, case, c, cfg, &shot, phase, |y| (y[0], y[1]))
        }
        _ => Err(Error::Domain(format!(
            "{} is not a travelling case",
            case.tag()
        ))),
    }
}

fn finish_travelling<const N: usize>(
    model: &Model,
    case: FrontCase,
    c: f64,
    cfg: &GridConfig,
    shot: &Shot<'_, N>,
    phase: f64,
    unpack: impl Fn(&[f64; N]) -> (f64, f64),
) -> Result<FrontProfile> {
    let pass = shot.first_pass(Some(phase))?;
    let x_mid = pass
        .x_mid
        .ok_or_else(|| Error::Integration("phase value never crossed".into()))?;
    let len_l = clip(x_mid - pass.x_start, cfg.l_minus);
    let len_r = clip(pass.x_stop - x_mid, cfg.l_plus);
    let (x, phase_index) = two_sided(len_l, len_r, cfg.n, 0.0, 0.0);
    let targets: Vec<f64> = x.iter().map(|&s| s + x_mid).collect();
    let ys = shot.sample(&pass, &targets)?;
    let (mut phi, mut phi_x): (Vec<f64>, Vec<f64>) = ys.iter().map(&unpack).unzip();
    // the node x = 0 carries the phase value by definition
    phi[phase_index] = phase;
    phi_x[phase_index] = unpack(&ys[phase_index]).1;
    Ok(assemble(model, case, c, x, phi, phi_x, phase_index))
}

/// Dispatch on the case; stationary cases ignore `c`.
pub fn solve_front(model: &Model, case: FrontCase, c: f64, cfg: &GridConfig) -> Result<FrontProfile> {
    match case {
        FrontCase::SnIncreasing => solve_stationary_front(model, true, cfg),
        FrontCase::SnDecreasing => solve_stationary_front(model, false, cfg),
        _ => solve_traveling_front(model, case, c, cfg),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DecayLaw {
    Exponential,
    Algebraic,
}

/// Alternative reading of the same tail.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub label: String,
    pub fitted: f64,
    pub predicted: f64,
    pub relative_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecayReport {
    pub side: Side,
    pub law: DecayLaw,
    /// Decay rate for exponential laws, log-log slope for algebraic ones.
    pub fitted_rate: f64,
    pub predicted_rate: f64,
    pub relative_error: f64,
    pub fit_window: [f64; 2],
    pub points: usize,
    pub diagnostic: Option<Diagnostic>,
}

fn rel(fitted: f64, predicted: f64) -> f64 {
    (fitted - predicted).abs() / predicted.abs()
}

/// Indices of the tail window on one side: outer 30% minus the final 5%.
fn tail_window(front: &FrontProfile, side: Side) -> Vec<usize> {
    let (len, s) = match side {
        Side::Minus => (front.l_minus, -1.0),
        Side::Plus => (front.l_plus, 1.0),
    };
    (0..front.len())
        .filter(|&i| {
            let d = s * front.x[i];
            d >= 0.70 * len && d <= 0.95 * len
        })
        .collect()
}

pub fn verify_decay(front: &FrontProfile, model: &Model) -> Result<Vec<DecayReport>> {
    let c = front.c;
    let alpha = model.alpha;
    let mut out = Vec::new();
    for side in [Side::Minus, Side::Plus] {
        let idx = tail_window(front, side);
        if idx.len() < 20 {
            return Err(Error::Inconclusive(format!(
                "tail window on side {side:?} has {} points",
                idx.len()
            )));
        }
        let u_end = match side {
            Side::Minus => front.u_minus,
            Side::Plus => front.u_plus,
        };
        let window = [front.x[idx[0]], front.x[idx[idx.len() - 1]]];
        let logdev: Vec<f64> = idx.iter().map(|&i| (front.phi[i] - u_end).abs().ln()).collect();
        let xs: Vec<f64> = idx.iter().map(|&i| front.x[i]).collect();
        let degenerate = front.case.degenerate_side() == Some(side);

        if front.case.is_stationary() && degenerate {
            let logx: Vec<f64> = xs.iter().map(|x| x.abs().ln()).collect();
            let (_, slope) = linear_fit(&logx, &logdev);
            // sharp contact reading: sqrt(phi) linear in x with slope a0/2
            let sq: Vec<f64> = idx.iter().map(|&i| front.phi[i].sqrt()).collect();
            let (_, s2) = linear_fit(&xs, &sq);
            let a0 = (-2.0 * model.react_1(0.0) / (3.0 * model.diff_1(0.0))).sqrt();
            out.push(DecayReport {
                side,
                law: DecayLaw::Algebraic,
                fitted_rate: slope,
                predicted_rate: -2.0,
                relative_error: rel(slope, -2.0),
                fit_window: window,
                points: idx.len(),
                diagnostic: Some(Diagnostic {
                    label: "sqrt(phi) slope, finite contact".into(),
                    fitted: s2.abs(),
                    predicted: 0.5 * a0,
                    relative_error: rel(s2.abs(), 0.5 * a0),
                }),
            });
            continue;
        }

        let (_, slope) = linear_fit(&xs, &logdev);
        let fitted = slope.abs();
        let (predicted, diagnostic) = match (front.case, side) {
            (FrontCase::SnIncreasing | FrontCase::SnDecreasing, _) => {
                ((-model.react_1(1.0) / model.diff(1.0)).sqrt(), None)
            }
            (FrontCase::Nd, Side::Minus) => (model.react_1(0.0).abs() / c, None),
            (FrontCase::Nd | FrontCase::Nn, Side::Plus) => {
                let (a1, a2) = model.weight_roots(alpha, c)?;
                let diag = Diagnostic {
                    label: "slow eigenvalue at alpha".into(),
                    fitted,
                    predicted: a1,
                    relative_error: rel(fitted, a1),
                };
                (a2, Some(diag))
            }
            (FrontCase::Nn, Side::Minus) => {
                let d1 = model.diff(1.0);
                let disc = (c * c - 4.0 * d1 * model.react_1(1.0)).sqrt();
                let unstable = (-c + disc) / (2.0 * d1);
                let diag = Diagnostic {
                    label: "unstable eigenvalue at 1".into(),
                    fitted,
                    predicted: unstable,
                    relative_error: rel(fitted, unstable),
                };
                ((c + disc) / (2.0 * d1), Some(diag))
            }
        };
        out.push(DecayReport {
            side,
            law: DecayLaw::Exponential,
            fitted_rate: fitted,
            predicted_rate: predicted,
            relative_error: rel(fitted, predicted),
            fit_window: window,
            points: idx.len(),
            diagnostic,
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientBound {
    /// `max |D(phi) phi_xx / phi_x|` over the grid.
    pub sup: f64,
    pub x_at_sup: f64,
    /// Largest value over the outer 5% of each side.
    pub tail_minus: f64,
    pub tail_plus: f64,
    /// On a degenerate side the quantity must fall below the supremum.
    /// Non-degenerate tails tend to `D(u) * rate` instead and are not judged.
    pub degenerate_tail_decays: Option<bool>,
    pub phase_analytic: f64,
    pub phase_fd: f64,
}

pub fn coefficient_bound(front: &FrontProfile, model: &Model) -> Result<CoefficientBound> {
    if let Some(i) = front.phi_x.iter().position(|&v| v == 0.0) {
        return Err(Error::Domain(format!(
            "phi_x vanishes at x = {}",
            front.x[i]
        )));
    }
    let kappa: Vec<f64> = (0..front.len())
        .map(|i| (model.diff(front.phi[i]) * front.phi_xx[i] / front.phi_x[i]).abs())
        .collect();
    let (imax, sup) = kappa
        .iter()
        .enumerate()
        .fold((0, 0.0f64), |(bi, bv), (i, &v)| if v > bv { (i, v) } else { (bi, bv) });
    let tail = |s: f64, len: f64| {
        (0..front.len())
            .filter(|&i| s * front.x[i] >= 0.95 * len)
            .map(|i| kappa[i])
            .fold(0.0f64, f64::max)
    };
    let tail_minus = tail(-1.0, front.l_minus);
    let tail_plus = tail(1.0, front.l_plus);
    let p = front.phase_index;
    let fd = derivative(&front.x, &front.phi_x, 1, 5);
    let dp = model.diff(front.phi[p]);
    Ok(CoefficientBound {
        sup,
        x_at_sup: front.x[imax],
        tail_minus,
        tail_plus,
        degenerate_tail_decays: front.case.degenerate_side().map(|side| match side {
            Side::Minus => tail_minus < sup,
            Side::Plus => tail_plus < sup,
        }),
        phase_analytic: dp * front.phi_xx[p] / front.phi_x[p],
        phase_fd: dp * fd[p] / front.phi_x[p],
    })
}
