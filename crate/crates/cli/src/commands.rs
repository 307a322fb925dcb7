use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use nagumo_core::eigensolve::{
    build_operator, compute_spectrum, regularization_sweep, sturm_check, translation_eigenpair_check, EigenPair,
    Window,
};
use nagumo_core::energy::{certify_all, translation_certificate, EnergyCertificate};
use nagumo_core::fronts::{coefficient_bound, solve_front, verify_decay};
use nagumo_core::io::{
    border_csv, eigenfunctions_csv, profile_csv, spectrum_entries, to_json, ProfileSidecar, Verdict,
};
use nagumo_core::spectrum::{
    consistent_splitting_bound, default_k_grid, fredholm_border, select_weight, BorderCurve,
};
use nagumo_core::{Error, FrontCase, FrontProfile, Model, Side};
use serde::Serialize;

use crate::config::Scenario;

pub const POINT_TOL: f64 = 1e-5;

pub const STABLE_GAP: &str = "spectrally stable with gap";
pub const STABLE: &str = "stable, no gap claimed";
pub const NOT_ESSENTIAL: &str = "not essentially-spectrally-stable at this speed";
pub const UNSTABLE: &str = "unstable eigenvalue detected";

pub struct Out {
    dir: PathBuf,
}

impl Out {
    pub fn create(dir: &Path) -> Result<Self> {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        Ok(Out { dir: dir.to_path_buf() })
    }

    pub fn text(&self, name: &str, body: &str) -> Result<()> {
        let p = self.dir.join(name);
        fs::write(&p, body).with_context(|| format!("writing {}", p.display()))
    }

    pub fn json<T: Serialize + ?Sized>(&self, name: &str, value: &T) -> Result<()> {
        self.text(name, &to_json(value)?)
    }
}

/// Hypotheses that make a scenario meaningful; failures exit with code 2.
fn precheck(model: &Model, s: &Scenario) -> Result<()> {
    model.require_valid()?;
    if s.case.is_stationary() {
        let d1 = model.script_d(1.0)?;
        if d1.abs() > 1e-10 {
            return Err(Error::Infeasible(format!(
                "no stationary front: integral of D f over [0,1] is {d1:.3e}, not 0"
            ))
            .into());
        }
    } else {
        let cbar = model.threshold_speed();
        if !(s.c > cbar) {
            return Err(Error::Infeasible(format!(
                "c = {} <= cbar(alpha) = {cbar:.4}: no monotone front with this speed",
                s.c
            ))
            .into());
        }
    }
    Ok(())
}

fn write_front(out: &Out, front: &FrontProfile) -> Result<()> {
    out.text("profile.csv", &profile_csv(front))?;
    out.json("profile.json", &ProfileSidecar::from(front))
}

#[derive(Serialize)]
struct InvariantRow<'a> {
    name: &'a str,
    passed: bool,
}

#[derive(Serialize)]
struct Inconclusive {
    inconclusive: String,
}

pub fn cmd_front(s: &Scenario) -> Result<u8> {
    let out = Out::create(&s.out)?;
    out.json("scenario.json", s)?;
    let model = s.build_model()?;
    precheck(&model, s)?;
    let front = solve_front(&model, s.case, s.c, &s.grid())?;
    write_front(&out, &front)?;
    match verify_decay(&front, &model) {
        Ok(rep) => out.json("decay.json", &rep)?,
        Err(e) => out.json("decay.json", &Inconclusive { inconclusive: e.to_string() })?,
    }
    out.json("coefficient_bound.json", &coefficient_bound(&front, &model)?)?;
    let inv = front.check_invariants(&model, 1e-7);
    let rows: Vec<InvariantRow> = inv.iter().map(|(n, p)| InvariantRow { name: n, passed: *p }).collect();
    out.json("invariants.json", &rows)?;
    Ok(if inv.iter().all(|(_, p)| *p) { 0 } else { 1 })
}

#[derive(Debug, Clone, Serialize)]
struct BorderSummary {
    side: Side,
    eps: f64,
    a: f64,
    max_re: f64,
    file: String,
}

/// Extra numbers behind the verdict, for the report.
#[derive(Debug, Clone, Serialize, serde::Deserialize)]
pub struct Summary {
    pub a: f64,
    pub essential_bound: f64,
    pub point_spectrum_max_re: Option<f64>,
    pub gap: Option<f64>,
    pub unflagged: usize,
    pub flagged: usize,
    pub unconverged: usize,
    pub translation_residual: f64,
    pub sturm_all_pass: bool,
    pub certificates: usize,
    pub certificates_closed: usize,
    pub max_certificate_residual: Option<f64>,
    pub sweep_monotone: Option<bool>,
}

fn eps_tag(eps: f64) -> String {
    if eps == 0.0 {
        "eps0".into()
    } else {
        format!("eps{eps:e}")
    }
}

fn side_tag(side: Side) -> &'static str {
    match side {
        Side::Minus => "minus",
        Side::Plus => "plus",
    }
}

fn borders(out: &Out, model: &Model, s: &Scenario, a: f64) -> Result<Vec<BorderSummary>> {
    let ks = default_k_grid();
    let mut eps_all = vec![0.0];
    eps_all.extend(s.eps_sweep.iter().copied().filter(|&e| e > 0.0));
    let mut rows = Vec::new();
    for &eps in &eps_all {
        for side in [Side::Minus, Side::Plus] {
            let curve: BorderCurve = fredholm_border(model, s.case, s.c, a, eps, side, &ks);
            let file = format!("border_{}_{}.csv", side_tag(side), eps_tag(eps));
            out.text(&file, &border_csv(&curve))?;
            rows.push(BorderSummary {
                side,
                eps,
                a,
                max_re: curve.max_re,
                file,
            });
        }
    }
    Ok(rows)
}

fn write_verdict(out: &Out, v: &Verdict) -> Result<()> {
    out.json("verdict.json", v)
}

pub fn cmd_spectrum(s: &Scenario) -> Result<u8> {
    let out = Out::create(&s.out)?;
    out.json("scenario.json", s)?;
    let model = s.build_model()?;
    precheck(&model, s)?;
    let plan = select_weight(&model, s.case, s.c)?;
    out.json("weight_plan.json", &plan)?;
    let a = s.a.unwrap_or(plan.a);
    let essential_bound = consistent_splitting_bound(&model, s.case, s.c, a, 0.0);
    out.json("borders.json", &borders(&out, &model, s, a)?)?;

    if (s.a.is_none() && !plan.feasible) || !(essential_bound < 0.0) {
        let reason = plan
            .infeasible_reason
            .clone()
            .filter(|_| s.a.is_none())
            .unwrap_or_else(|| format!("essential spectrum reaches Re = {essential_bound:.6} with a = {a}"));
        write_verdict(
            &out,
            &Verdict {
                essential_bound,
                point_spectrum_max_re: None,
                translation_residual: None,
                verdict: NOT_ESSENTIAL.into(),
            },
        )?;
        return Err(Error::Infeasible(reason).into());
    }

    let front = solve_front(&model, s.case, s.c, &s.grid())?;
    write_front(&out, &front)?;

    let op = build_operator(&front, &model, a, 0.0)?;
    let pairs = compute_spectrum(&op, s.n_eigs, Window::All)?;
    out.json("spectrum.json", &spectrum_entries(&pairs))?;
    out.text("eigenfunctions.csv", &eigenfunctions_csv(&front.x, &pairs))?;
    let sturm = sturm_check(&pairs);
    out.json("sturm.json", &sturm)?;

    let certified: Vec<EigenPair> = pairs.iter().filter(|p| p.converged).cloned().collect();
    let certs: Vec<EnergyCertificate> = certify_all(&front, &model, a, &certified)
        .into_iter()
        .filter_map(|r| r.ok())
        .collect();
    out.json("certificates.json", &certs)?;

    let translation_residual = translation_eigenpair_check(&front, &model, a)?;
    #[derive(Serialize)]
    struct Translation {
        a: f64,
        residual: f64,
        certificate: Option<EnergyCertificate>,
    }
    out.json(
        "translation.json",
        &Translation {
            a,
            residual: translation_residual,
            certificate: translation_certificate(&front, &model, a).ok(),
        },
    )?;

    let sweep_eps: Vec<f64> = s.eps_sweep.iter().copied().filter(|&e| e > 0.0).collect();
    let sweep_monotone = if sweep_eps.is_empty() {
        None
    } else {
        let table = regularization_sweep(&front, &model, a, &sweep_eps, s.n_eigs.min(3))?;
        out.json("sweep.json", &table)?;
        Some(table.monotone.iter().all(|&m| m))
    };

    let good: Vec<&EigenPair> = pairs.iter().filter(|p| p.converged && !p.flagged).collect();
    let point_spectrum_max_re = good.iter().map(|p| p.lambda.re).reduce(f64::max);
    let nonzero_max = good
        .iter()
        .filter(|p| p.lambda.norm() > POINT_TOL)
        .map(|p| p.lambda.re)
        .reduce(f64::max);
    let gap = (s.case == FrontCase::Nn).then(|| (-essential_bound).min(nonzero_max.map_or(f64::INFINITY, |m| -m)));
    let unstable = point_spectrum_max_re.is_some_and(|m| m > POINT_TOL);
    let verdict = if unstable {
        UNSTABLE
    } else if gap.is_some_and(|g| g > 0.0) {
        STABLE_GAP
    } else {
        STABLE
    };
    write_verdict(
        &out,
        &Verdict {
            essential_bound,
            point_spectrum_max_re,
            translation_residual: Some(translation_residual),
            verdict: verdict.into(),
        },
    )?;
    let closed = certs.iter().filter(|c| c.certified()).count();
    out.json(
        "summary.json",
        &Summary {
            a,
            essential_bound,
            point_spectrum_max_re,
            gap,
            unflagged: pairs.iter().filter(|p| !p.flagged).count(),
            flagged: pairs.iter().filter(|p| p.flagged).count(),
            unconverged: pairs.iter().filter(|p| !p.converged).count(),
            translation_residual,
            sturm_all_pass: sturm.all_pass,
            certificates: certs.len(),
            certificates_closed: closed,
            max_certificate_residual: certs
                .iter()
                .filter(|c| c.lhs().norm() > POINT_TOL)
                .map(|c| c.residual)
                .reduce(f64::max),
            sweep_monotone,
        },
    )?;
    Ok(if unstable { 1 } else { 0 })
}
