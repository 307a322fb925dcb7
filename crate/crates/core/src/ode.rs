//! Adaptive Dormand-Prince 5(4) integration with continuous output.
//!
//! The caller sees every accepted step through a [`DenseStep`] and decides
//! whether to continue; event location and resampling are done on the
//! interpolant.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub struct Tolerances {
    pub rtol: f64,
    pub atol: f64,
    pub h_init: f64,
    pub h_max: f64,
    pub max_steps: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            rtol: 1e-12,
            atol: 1e-12,
            h_init: 1e-3,
            h_max: f64::INFINITY,
            max_steps: 5_000_000,
        }
    }
}

/// One accepted step with its fifth-order interpolant.
#[derive(Debug, Clone)]
pub struct DenseStep<const N: usize> {
    pub t0: f64,
    pub t1: f64,
    pub y0: [f64; N],
    pub y1: [f64; N],
    r: [[f64; N]; 4],
}

impl<const N: usize> DenseStep<N> {
    pub fn eval(&self, t: f64) -> [f64; N] {
        let h = self.t1 - self.t0;
        let s = (t - self.t0) / h;
        let s1 = 1.0 - s;
        let mut y = [0.0; N];
        for (i, yi) in y.iter_mut().enumerate() {
            *yi = self.y0[i]
                + s * (self.r[0][i] + s1 * (self.r[1][i] + s * (self.r[2][i] + s1 * self.r[3][i])));
        }
        y
    }

    /// Root of `g(y(t))` inside the step, given a sign change between the ends.
    pub fn locate(&self, g: impl Fn(&[f64; N]) -> f64) -> Option<f64> {
        let (mut lo, mut hi) = (self.t0, self.t1);
        let glo = g(&self.y0);
        let ghi = g(&self.y1);
        if glo == 0.0 {
            return Some(lo);
        }
        if glo.signum() == ghi.signum() {
            return None;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid == lo || mid == hi {
                break;
            }
            let gm = g(&self.eval(mid));
            if gm == 0.0 {
                return Some(mid);
            }
            if gm.signum() == glo.signum() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Some(0.5 * (lo + hi))
    }
}

pub enum Flow {
    Continue,
    Stop,
}

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;
const D1: f64 = -12715105075.0 / 11282082432.0;
const D3: f64 = 87487479700.0 / 32700410799.0;
const D4: f64 = -10690763975.0 / 1880347072.0;
const D5: f64 = 701980252875.0 / 199316789632.0;
const D6: f64 = -1453857185.0 / 822651844.0;
const D7: f64 = 69997945.0 / 29380423.0;

fn axpy<const N: usize>(y: &[f64; N], h: f64, terms: &[(f64, &[f64; N])]) -> [f64; N] {
    let mut out = *y;
    for (c, k) in terms {
        for i in 0..N {
            out[i] += h * c * k[i];
        }
    }
    out
}

/// Integrate from `t0` towards `t_end` (either direction). Returns the final
/// time and state, either at `t_end` or where `on_step` stopped.
pub fn integrate<const N: usize>(
    rhs: impl Fn(f64, &[f64; N]) -> [f64; N],
    t0: f64,
    y0: [f64; N],
    t_end: f64,
    tol: &Tolerances,
    mut on_step: impl FnMut(&DenseStep<N>) -> Flow,
) -> Result<(f64, [f64; N])> {
    let dir = if t_end >= t0 { 1.0 } else { -1.0 };
    let mut t = t0;
    let mut y = y0;
    let mut h = tol.h_init.min(tol.h_max).min((t_end - t0).abs());
    let mut k1 = rhs(t, &y);
    let mut steps = 0usize;
    while dir * (t_end - t) > 0.0 {
        if steps >= tol.max_steps {
            return Err(Error::Integration(format!(
                "step budget {} exhausted at t = {t}",
                tol.max_steps
            )));
        }
        steps += 1;
        h = h.min((t_end - t).abs()).min(tol.h_max);
        if h < 1e-14 * t.abs().max(1.0) {
            return Err(Error::Integration(format!("step size underflow at t = {t}")));
        }
        let hs = dir * h;
        let k2 = rhs(t + C2 * hs, &axpy(&y, hs, &[(A21, &k1)]));
        let k3 = rhs(t + C3 * hs, &axpy(&y, hs, &[(A31, &k1), (A32, &k2)]));
        let k4 = rhs(
            t + C4 * hs,
            &axpy(&y, hs, &[(A41, &k1), (A42, &k2), (A43, &k3)]),
        );
        let k5 = rhs(
            t + C5 * hs,
            &axpy(&y, hs, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)]),
        );
        let k6 = rhs(
            t + hs,
            &axpy(
                &y,
                hs,
                &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)],
            ),
        );
        let y1 = axpy(
            &y,
            hs,
            &[(A71, &k1), (A73, &k3), (A74, &k4), (A75, &k5), (A76, &k6)],
        );
        let k7 = rhs(t + hs, &y1);

        let mut err = 0.0;
        for i in 0..N {
            let e = hs
                * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
            let sc = tol.atol + tol.rtol * y[i].abs().max(y1[i].abs());
            err += (e / sc).powi(2);
        }
        let err = (err / N as f64).sqrt();
        if !err.is_finite() {
            h *= 0.1;
            continue;
        }
        if err <= 1.0 {
            let mut r = [[0.0; N]; 4];
            for i in 0..N {
                let dy = y1[i] - y[i];
                let bspl = hs * k1[i] - dy;
                r[0][i] = dy;
                r[1][i] = bspl;
                r[2][i] = dy - hs * k7[i] - bspl;
                r[3][i] = hs
                    * (D1 * k1[i] + D3 * k3[i] + D4 * k4[i] + D5 * k5[i] + D6 * k6[i]
                        + D7 * k7[i]);
            }
            let step = DenseStep {
                t0: t,
                t1: t + hs,
                y0: y,
                y1,
                r,
            };
            t += hs;
            y = y1;
            k1 = k7;
            if let Flow::Stop = on_step(&step) {
                return Ok((t, y));
            }
            let fac = if err == 0.0 { 5.0 } else { 0.9 * err.powf(-0.2) };
            h *= fac.clamp(0.2, 5.0);
        } else {
            h *= (0.9 * err.powf(-0.2)).max(0.1);
        }
    }
    Ok((t, y))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_and_dense_output() {
        let tol = Tolerances::default();
        let mut worst: f64 = 0.0;
        let (t, y) = integrate(
            |_, y: &[f64; 1]| [-y[0]],
            0.0,
            [1.0],
            3.0,
            &tol,
            |s| {
                let tm = 0.5 * (s.t0 + s.t1);
                worst = worst.max((s.eval(tm)[0] - (-tm).exp()).abs());
                Flow::Continue
            },
        )
        .unwrap();
        assert_eq!(t, 3.0);
        assert!((y[0] - (-3.0f64).exp()).abs() < 1e-11);
        assert!(worst < 1e-11, "dense error {worst}");
    }

    #[test]
    fn backward_harmonic_and_event() {
        let tol = Tolerances::default();
        let mut hit = None;
        integrate(
            |_, y: &[f64; 2]| [y[1], -y[0]],
            0.0,
            [0.0, 1.0],
            -10.0,
            &tol,
            |s| {
                // sin t first reaches -0.5 at t = -pi/6 going backwards
                if let Some(t) = s.locate(|y| y[0] + 0.5) {
                    hit = Some(t);
                    return Flow::Stop;
                }
                Flow::Continue
            },
        )
        .unwrap();
        let t = hit.unwrap();
        assert!((t + std::f64::consts::PI / 6.0).abs() < 1e-11);
    }
}
