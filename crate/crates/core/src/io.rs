//! Plain-text artifacts: CSV tables and JSON documents.
//!
//! Numbers are written with Rust's shortest round-trip formatting, so equal
//! inputs give byte-identical files.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::eigensolve::EigenPair;
use crate::error::{Error, Result};
use crate::fronts::{FrontCase, FrontProfile};
use crate::spectrum::BorderCurve;

pub fn to_json<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Error::Numerical(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub fn profile_csv(front: &FrontProfile) -> String {
    let mut s = String::from("x,phi,phi_x,phi_xx\n");
    for i in 0..front.len() {
        let _ = writeln!(s, "{},{},{},{}", front.x[i], front.phi[i], front.phi_x[i], front.phi_xx[i]);
    }
    s
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfileSidecar {
    pub case: String,
    pub c: f64,
    pub alpha: f64,
    pub b: f64,
    pub u_minus: f64,
    pub u_plus: f64,
    pub residual_max: f64,
}

impl From<&FrontProfile> for ProfileSidecar {
    fn from(f: &FrontProfile) -> Self {
        ProfileSidecar {
            case: f.case.tag().to_string(),
            c: f.c,
            alpha: f.alpha,
            b: f.b,
            u_minus: f.u_minus,
            u_plus: f.u_plus,
            residual_max: f.residual_max,
        }
    }
}

/// Reads a profile back from its CSV and sidecar.
pub fn read_profile(csv: &str, sidecar: &ProfileSidecar) -> Result<FrontProfile> {
    let case = FrontCase::parse(&sidecar.case)
        .ok_or_else(|| Error::Domain(format!("unknown case tag {:?}", sidecar.case)))?;
    let mut cols: [Vec<f64>; 4] = Default::default();
    let mut lines = csv.lines();
    if lines.next().map(str::trim) != Some("x,phi,phi_x,phi_xx") {
        return Err(Error::Domain("profile CSV header must be x,phi,phi_x,phi_xx".into()));
    }
    for (ln, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let vals: Vec<&str> = line.split(',').collect();
        if vals.len() != 4 {
            return Err(Error::Domain(format!("profile CSV line {}: expected 4 fields", ln + 2)));
        }
        for (col, v) in cols.iter_mut().zip(vals) {
            col.push(
                v.trim()
                    .parse()
                    .map_err(|_| Error::Domain(format!("profile CSV line {}: bad number {v:?}", ln + 2)))?,
            );
        }
    }
    let [x, phi, phi_x, phi_xx] = cols;
    let phase_index = x
        .iter()
        .position(|&v| v == 0.0)
        .ok_or_else(|| Error::Domain("profile grid does not contain x = 0".into()))?;
    Ok(FrontProfile {
        case,
        c: sidecar.c,
        alpha: sidecar.alpha,
        b: sidecar.b,
        u_minus: sidecar.u_minus,
        u_plus: sidecar.u_plus,
        l_minus: -x[0],
        l_plus: x[x.len() - 1],
        x,
        phi,
        phi_x,
        phi_xx,
        phase_index,
        residual_max: sidecar.residual_max,
    })
}

pub fn border_csv(curve: &BorderCurve) -> String {
    let mut s = String::from("k,re_lambda,im_lambda\n");
    for [k, re, im] in &curve.samples {
        let _ = writeln!(s, "{k},{re},{im}");
    }
    s
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumEntry {
    pub re: f64,
    pub im: f64,
    pub residual: f64,
    pub boundary_mass: f64,
    pub flagged: bool,
    pub sign_changes: Option<usize>,
}

impl From<&EigenPair> for SpectrumEntry {
    fn from(p: &EigenPair) -> Self {
        SpectrumEntry {
            re: p.lambda.re,
            im: p.lambda.im,
            residual: p.residual,
            boundary_mass: p.boundary_mass,
            flagged: p.flagged,
            sign_changes: p.sign_changes,
        }
    }
}

pub fn spectrum_entries(pairs: &[EigenPair]) -> Vec<SpectrumEntry> {
    pairs.iter().map(SpectrumEntry::from).collect()
}

/// Grid plus real and imaginary parts of each eigenfunction.
pub fn eigenfunctions_csv(x: &[f64], pairs: &[EigenPair]) -> String {
    let mut s = String::from("x");
    for j in 0..pairs.len() {
        let _ = write!(s, ",u{j}_re,u{j}_im");
    }
    s.push('\n');
    for (i, xi) in x.iter().enumerate() {
        let _ = write!(s, "{xi}");
        for p in pairs {
            let _ = write!(s, ",{},{}", p.u[i].re, p.u[i].im);
        }
        s.push('\n');
    }
    s
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub essential_bound: f64,
    pub point_spectrum_max_re: Option<f64>,
    pub translation_residual: Option<f64>,
    pub verdict: String,
}
