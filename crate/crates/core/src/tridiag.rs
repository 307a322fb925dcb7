//! Real tridiagonal matrices and a pivoted complex LU for shifted solves.

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Tridiagonal {
    /// `lower[i]` couples row `i + 1` to column `i`.
    pub lower: Vec<f64>,
    pub diag: Vec<f64>,
    /// `upper[i]` couples row `i` to column `i + 1`.
    pub upper: Vec<f64>,
}

impl Tridiagonal {
    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    pub fn apply(&self, u: &[f64]) -> Vec<f64> {
        let n = self.len();
        (0..n)
            .map(|i| {
                let mut s = self.diag[i] * u[i];
                if i > 0 {
                    s += self.lower[i - 1] * u[i - 1];
                }
                if i + 1 < n {
                    s += self.upper[i] * u[i + 1];
                }
                s
            })
            .collect()
    }

    pub fn apply_complex(&self, u: &[Complex64]) -> Vec<Complex64> {
        let n = self.len();
        (0..n)
            .map(|i| {
                let mut s = u[i] * self.diag[i];
                if i > 0 {
                    s += u[i - 1] * self.lower[i - 1];
                }
                if i + 1 < n {
                    s += u[i + 1] * self.upper[i];
                }
                s
            })
            .collect()
    }

    pub fn factor_shifted(&self, shift: Complex64) -> Result<ShiftedLu> {
        ShiftedLu::new(self, shift)
    }
}

/// LU factors of `A - shift I` with partial pivoting; `U` has two
/// superdiagonals.
#[derive(Debug, Clone)]
pub struct ShiftedLu {
    dl: Vec<Complex64>,
    d: Vec<Complex64>,
    du: Vec<Complex64>,
    du2: Vec<Complex64>,
    swapped: Vec<bool>,
}

impl ShiftedLu {
    fn new(a: &Tridiagonal, shift: Complex64) -> Result<Self> {
        let n = a.len();
        let mut dl: Vec<Complex64> = a.lower.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        let mut d: Vec<Complex64> = a.diag.iter().map(|&v| Complex64::new(v, 0.0) - shift).collect();
        let mut du: Vec<Complex64> = a.upper.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        let mut du2 = vec![Complex64::new(0.0, 0.0); n.saturating_sub(2)];
        let mut swapped = vec![false; n.saturating_sub(1)];
        for i in 0..n.saturating_sub(1) {
            if d[i].norm() >= dl[i].norm() {
                if d[i].norm() != 0.0 {
                    let fact = dl[i] / d[i];
                    dl[i] = fact;
                    d[i + 1] -= fact * du[i];
                }
            } else {
                let fact = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = fact;
                let tmp = du[i];
                du[i] = d[i + 1];
                d[i + 1] = tmp - fact * d[i + 1];
                if i + 2 < n {
                    du2[i] = du[i + 1];
                    du[i + 1] = -fact * du[i + 1];
                }
                swapped[i] = true;
            }
        }
        if let Some(i) = d.iter().position(|v| v.norm() == 0.0 || !v.is_finite()) {
            return Err(Error::Numerical(format!(
                "shifted matrix singular at pivot {i} (shift {shift})"
            )));
        }
        Ok(ShiftedLu {
            dl,
            d,
            du,
            du2,
            swapped,
        })
    }

    pub fn solve(&self, b: &mut [Complex64]) {
        let n = self.d.len();
        for i in 0..n.saturating_sub(1) {
            if self.swapped[i] {
                let tmp = b[i];
                b[i] = b[i + 1];
                b[i + 1] = tmp - self.dl[i] * b[i];
            } else {
                let v = b[i];
                b[i + 1] -= self.dl[i] * v;
            }
        }
        b[n - 1] /= self.d[n - 1];
        if n > 1 {
            b[n - 2] = (b[n - 2] - self.du[n - 2] * b[n - 1]) / self.d[n - 2];
        }
        for i in (0..n.saturating_sub(2)).rev() {
            b[i] = (b[i] - self.du[i] * b[i + 1] - self.du2[i] * b[i + 2]) / self.d[i];
        }
    }
}
