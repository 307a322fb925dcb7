//! Diffusion and reaction terms, structural hypotheses and derived scalars.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::roots::bisect;

const MAX_DEGREE: usize = 6;
const SAMPLES: usize = 1001;

/// Serialized model description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family")]
pub enum ModelSpec {
    /// `D(u) = u^2 + b u`, `f(u) = u(1-u)(u-alpha)`.
    #[serde(rename = "shigesada-cubic")]
    ShigesadaCubic { b: f64, alpha: f64 },
    /// Ascending coefficients; `alpha` is the caller-supplied middle root.
    #[serde(rename = "general-polynomial", alias = "polynomial")]
    Polynomial {
        #[serde(rename = "D")]
        d: Vec<f64>,
        f: Vec<f64>,
        alpha: f64,
    },
}

impl ModelSpec {
    pub fn shigesada(b: f64, alpha: f64) -> Self {
        ModelSpec::ShigesadaCubic { b, alpha }
    }

    pub fn alpha(&self) -> f64 {
        match self {
            ModelSpec::ShigesadaCubic { alpha, .. } | ModelSpec::Polynomial { alpha, .. } => *alpha,
        }
    }

    /// `b` for the Shigesada family, `D'(0)` otherwise.
    pub fn b(&self) -> f64 {
        match self {
            ModelSpec::ShigesadaCubic { b, .. } => *b,
            ModelSpec::Polynomial { d, .. } => d.get(1).copied().unwrap_or(0.0),
        }
    }
}

/// Compiled model: all polynomials needed downstream.
#[derive(Debug, Clone)]
pub struct Model {
    pub spec: ModelSpec,
    pub alpha: f64,
    d: [Poly; 3],
    f: [Poly; 3],
    // antiderivative of D f, and its recentring t -> P(1-t) - P(1)
    big_d: Poly,
    big_d_from_one: Poly,
}

impl Model {
    pub fn new(spec: ModelSpec) -> Result<Self> {
        let (d, f, alpha) = match &spec {
            ModelSpec::ShigesadaCubic { b, alpha } => {
                if !b.is_finite() || !alpha.is_finite() {
                    return Err(Error::InvalidModel("non-finite parameter".into()));
                }
                (
                    Poly::new(vec![0.0, *b, 1.0]),
                    Poly::new(vec![0.0, -alpha, 1.0 + alpha, -1.0]),
                    *alpha,
                )
            }
            ModelSpec::Polynomial { d, f, alpha } => {
                let (d, f) = (Poly::new(d.clone()), Poly::new(f.clone()));
                if !d.is_finite() || !f.is_finite() || !alpha.is_finite() {
                    return Err(Error::InvalidModel("non-finite coefficient".into()));
                }
                if d.degree() > MAX_DEGREE || f.degree() > MAX_DEGREE {
                    return Err(Error::InvalidModel(format!(
                        "polynomial degree exceeds {MAX_DEGREE}"
                    )));
                }
                (d, f, *alpha)
            }
        };
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::InvalidModel(format!("alpha = {alpha} not in (0,1)")));
        }
        let big_d = d.mul(&f).integral();
        let mut shifted = big_d.recentred(1.0, -1.0);
        shifted.coeffs[0] = 0.0;
        let d1 = d.deriv();
        let d2 = d1.deriv();
        let f1 = f.deriv();
        let f2 = f1.deriv();
        Ok(Model {
            spec,
            alpha,
            d: [d, d1, d2],
            f: [f, f1, f2],
            big_d,
            big_d_from_one: shifted,
        })
    }

    pub fn shigesada(b: f64, alpha: f64) -> Result<Self> {
        Model::new(ModelSpec::shigesada(b, alpha))
    }

    pub fn diff(&self, u: f64) -> f64 {
        self.d[0].eval(u)
    }
    pub fn diff_1(&self, u: f64) -> f64 {
        self.d[1].eval(u)
    }
    pub fn diff_2(&self, u: f64) -> f64 {
        self.d[2].eval(u)
    }
    pub fn react(&self, u: f64) -> f64 {
        self.f[0].eval(u)
    }
    pub fn react_1(&self, u: f64) -> f64 {
        self.f[1].eval(u)
    }
    pub fn react_2(&self, u: f64) -> f64 {
        self.f[2].eval(u)
    }

    /// `∫_0^phi D f`, exact polynomial antiderivative.
    pub fn script_d(&self, phi: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&phi) {
            return Err(Error::Domain(format!("phi = {phi} outside [0,1]")));
        }
        Ok(self.big_d.eval(phi))
    }

    /// `∫_0^phi D f - ∫_0^1 D f`, accurate near `phi = 1`.
    pub fn script_d_from_one(&self, phi: f64) -> f64 {
        self.big_d_from_one.eval(1.0 - phi)
    }

    pub fn hamiltonian(&self, phi: f64, v: f64) -> Result<f64> {
        let dv = self.diff(phi) * v;
        Ok(0.5 * dv * dv + self.script_d(phi)?)
    }

    /// `2 sqrt(D(alpha) f'(alpha))`.
    pub fn threshold_speed(&self) -> f64 {
        2.0 * (self.diff(self.alpha) * self.react_1(self.alpha)).sqrt()
    }

    /// Roots of `p(a;u) = D(u) a^2 - a c + f'(u)` in increasing order.
    pub fn weight_roots(&self, u: f64, c: f64) -> Result<(f64, f64)> {
        let du = self.diff(u);
        if du <= 0.0 {
            return Err(Error::Domain(format!("D({u}) = {du} is not positive")));
        }
        let disc = c * c - 4.0 * du * self.react_1(u);
        if disc < 0.0 {
            return Err(Error::Infeasible(format!(
                "complex weight roots at u = {u}: c^2 - 4 D f' = {disc:.3e} < 0"
            )));
        }
        let s = disc.sqrt();
        Ok(((c - s) / (2.0 * du), (c + s) / (2.0 * du)))
    }

    /// `p(a;u)`, the real part of the Fredholm border at `k = 0`.
    pub fn p(&self, a: f64, u: f64, c: f64) -> f64 {
        self.diff(u) * a * a - a * c + self.react_1(u)
    }

    pub fn validate_hypotheses(&self) -> ValidationReport {
        let mut checks = Vec::new();
        let a = self.alpha;
        let grid: Vec<f64> = (0..SAMPLES)
            .map(|i| i as f64 / (SAMPLES - 1) as f64)
            .collect();

        checks.push(Check::exact("D(0)=0", self.d[0].coeffs[0] == 0.0, 0.0));
        checks.push(Check::sampled(
            "D(u)>0",
            grid.iter().copied().filter(|&u| u > 0.0),
            |u| self.diff(u) > 0.0,
        ));
        checks.push(Check::sampled("D'(u)>0", grid.iter().copied(), |u| {
            self.diff_1(u) > 0.0
        }));
        for (name, u) in [("f(0)=0", 0.0), ("f(alpha)=0", a), ("f(1)=0", 1.0)] {
            checks.push(Check::exact(name, self.root_check(u), u));
        }
        checks.push(Check::exact("f'(0)<0", self.react_1(0.0) < 0.0, 0.0));
        checks.push(Check::exact("f'(1)<0", self.react_1(1.0) < 0.0, 1.0));
        checks.push(Check::exact("f'(alpha)>0", self.react_1(a) > 0.0, a));
        let tiny = 1e-12;
        checks.push(Check::sampled(
            "f>0 on (alpha,1)",
            grid.iter().copied().filter(|&u| u > a + tiny && u < 1.0 - tiny),
            |u| self.react(u) > 0.0,
        ));
        checks.push(Check::sampled(
            "f<0 on (0,alpha)",
            grid.iter().copied().filter(|&u| u > tiny && u < a - tiny),
            |u| self.react(u) < 0.0,
        ));
        ValidationReport { checks }
    }

    fn root_check(&self, u: f64) -> bool {
        if let ModelSpec::ShigesadaCubic { .. } = self.spec {
            // roots are structural in the factored form
            return true;
        }
        let exact = eval_exact(&self.f[0], u);
        if exact.is_zero() {
            return true;
        }
        let scale: f64 = self.f[0].coeffs.iter().map(|c| c.abs()).sum();
        self.react(u).abs() <= 1e-12 * scale.max(1.0)
    }

    pub fn require_valid(&self) -> Result<()> {
        let report = self.validate_hypotheses();
        match report.first_failure() {
            None => Ok(()),
            Some(c) => Err(Error::InvalidModel(format!(
                "hypothesis {} fails (witness u = {:?})",
                c.name, c.witness
            ))),
        }
    }
}

fn eval_exact(p: &Poly, u: f64) -> BigRational {
    let x = BigRational::from_f64(u).unwrap_or_else(|| BigRational::from_integer(BigInt::from(0)));
    p.coeffs.iter().rev().fold(BigRational::zero(), |acc, &c| {
        acc * &x + BigRational::from_f64(c).unwrap_or_else(BigRational::zero)
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub witness: Option<f64>,
}

impl Check {
    fn exact(name: &str, passed: bool, at: f64) -> Self {
        Check {
            name: name.into(),
            passed,
            witness: (!passed).then_some(at),
        }
    }

    fn sampled(name: &str, pts: impl Iterator<Item = f64>, ok: impl Fn(f64) -> bool) -> Self {
        let mut witness = None;
        for u in pts {
            if !ok(u) {
                witness = Some(u);
                break;
            }
        }
        Check {
            name: name.into(),
            passed: witness.is_none(),
            witness,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Closed form of `∫_0^1 D f` for the Shigesada-cubic family as a function of alpha.
pub fn shigesada_script_d_one(b: f64, alpha: f64) -> f64 {
    1.0 / 30.0 - alpha / 20.0 + b * (1.0 / 20.0 - alpha / 12.0)
}

/// The alpha in (0,1) making the stationary connection possible.
pub fn stationary_alpha(b: f64) -> Result<f64> {
    if !(b > 0.0 && b.is_finite()) {
        return Err(Error::Domain(format!("b = {b} must be positive")));
    }
    let g = |a: f64| shigesada_script_d_one(b, a);
    let root = bisect(g, 0.0, 1.0, 1e-15).ok_or_else(|| {
        Error::Numerical("no sign change of D-integral on (0,1)".into())
    })?;
    if g(root).abs() > 1e-12 {
        return Err(Error::Numerical(format!(
            "stationary alpha residual {:.3e}",
            g(root)
        )));
    }
    Ok(root)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivatives_of_cubic() {
        let m = Model::shigesada(1.0, 0.5).unwrap();
        assert_eq!(m.react_1(0.0), -0.5);
        assert_eq!(m.react_1(1.0), -0.5);
        assert_eq!(m.react_1(0.5), 0.25);
        assert_eq!(m.diff_2(0.3), 2.0);
    }

    #[test]
    fn rejects_bad_alpha_and_nan() {
        assert!(Model::shigesada(1.0, 1.0).is_err());
        assert!(Model::shigesada(f64::NAN, 0.5).is_err());
        let spec = ModelSpec::Polynomial {
            d: vec![0.0; 8],
            f: vec![0.0, 1.0],
            alpha: 0.5,
        };
        // trailing zeros are trimmed, so this is degree 0 and accepted
        assert!(Model::new(spec).is_ok());
        let spec = ModelSpec::Polynomial {
            d: vec![1.0; 8],
            f: vec![0.0, 1.0],
            alpha: 0.5,
        };
        assert!(Model::new(spec).is_err());
    }

    #[test]
    fn from_one_agrees_with_direct() {
        let m = Model::shigesada(1.0, 0.625).unwrap();
        for &u in &[0.0, 0.2, 0.5, 0.9, 0.999] {
            let direct = m.script_d(u).unwrap() - m.script_d(1.0).unwrap();
            assert!((m.script_d_from_one(u) - direct).abs() < 1e-15);
        }
    }
}
