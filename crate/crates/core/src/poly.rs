//! Dense real polynomials in ascending-coefficient form.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Poly {
    pub coeffs: Vec<f64>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.len() > 1 && coeffs[coeffs.len() - 1] == 0.0 {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0.0);
        }
        Poly { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Horner evaluation.
    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn deriv(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::new(vec![0.0]);
        }
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| k as f64 * c)
                .collect(),
        )
    }

    /// Antiderivative vanishing at 0.
    pub fn integral(&self) -> Poly {
        let mut out = vec![0.0];
        out.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, &c)| c / (k as f64 + 1.0)),
        );
        Poly::new(out)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = vec![0.0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    /// Coefficients of t -> p(s + h t) in t.
    pub fn recentred(&self, s: f64, h: f64) -> Poly {
        // repeated synthetic division gives the Taylor coefficients at s
        let mut c = self.coeffs.clone();
        let n = c.len();
        for k in 0..n {
            for j in (k..n - 1).rev() {
                c[j] += s * c[j + 1];
            }
        }
        let mut scale = 1.0;
        for v in c.iter_mut() {
            *v *= scale;
            scale *= h;
        }
        Poly::new(c)
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_finite())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn calculus_on_cubic() {
        let p = Poly::new(vec![1.0, -2.0, 0.0, 3.0]);
        assert_eq!(p.eval(2.0), 1.0 - 4.0 + 24.0);
        assert_eq!(p.deriv().coeffs, vec![-2.0, 0.0, 9.0]);
        assert_eq!(p.integral().deriv(), p);
        assert_eq!(p.integral().eval(0.0), 0.0);
    }

    #[test]
    fn recentre_matches_direct() {
        let p = Poly::new(vec![0.3, -1.0, 2.5, 0.0, -0.7]);
        let q = p.recentred(1.0, -1.0);
        for &t in &[0.0, 0.1, 0.37, 0.9] {
            assert!((q.eval(t) - p.eval(1.0 - t)).abs() < 1e-14);
        }
        let z = Poly::new(vec![0.0, 0.0, 0.0]);
        assert_eq!(z.degree(), 0);
    }
}
