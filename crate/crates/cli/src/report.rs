use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use nagumo_core::eigensolve::{SturmReport, SweepTable};
use nagumo_core::energy::EnergyCertificate;
use nagumo_core::io::{to_json, ProfileSidecar, Verdict};
use nagumo_core::spectrum::{classify_and_threshold, WeightPlan};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};

use crate::commands::{Out, Summary};
use crate::config::Scenario;

pub const REQUIRED: [&str; 3] = ["scenario.json", "weight_plan.json", "verdict.json"];

#[derive(Debug, Clone, Serialize)]
pub struct Field {
    pub name: String,
    pub value: Value,
    /// Where the number comes from, or "plumbing".
    pub anchor: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct Bundle {
    pub input: String,
    pub fields: Vec<Field>,
}

fn read<T: DeserializeOwned>(dir: &Path, name: &str) -> Result<T> {
    let p = dir.join(name);
    let text = std::fs::read_to_string(&p).with_context(|| format!("reading {}", p.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", p.display()))
}

fn read_opt<T: DeserializeOwned>(dir: &Path, name: &str) -> Result<Option<T>> {
    if dir.join(name).exists() {
        read(dir, name).map(Some)
    } else {
        Ok(None)
    }
}

struct Fields(Vec<Field>);

impl Fields {
    fn push(&mut self, name: &str, value: impl Serialize, anchor: &'static str) {
        self.0.push(Field {
            name: name.into(),
            value: serde_json::to_value(value).unwrap_or(Value::Null),
            anchor,
        });
    }
}

fn bundle(dir: &Path) -> Result<Bundle> {
    let missing: Vec<&str> = REQUIRED.iter().copied().filter(|f| !dir.join(f).exists()).collect();
    if !missing.is_empty() {
        bail!(
            "{} lacks required artifacts: {} (run `nagumo spectrum` first)",
            dir.display(),
            missing.join(", ")
        );
    }
    let scenario: Scenario = read(dir, "scenario.json")?;
    let profile: Option<ProfileSidecar> = read_opt(dir, "profile.json")?;
    let plan: WeightPlan = read(dir, "weight_plan.json")?;
    let verdict: Verdict = read(dir, "verdict.json")?;
    let summary: Option<Summary> = read_opt(dir, "summary.json")?;
    let sturm: Option<SturmReport> = read_opt(dir, "sturm.json")?;
    let certs: Option<Vec<EnergyCertificate>> = read_opt(dir, "certificates.json")?;
    let sweep: Option<SweepTable> = read_opt(dir, "sweep.json")?;

    let mut f = Fields(Vec::new());
    f.push("case", scenario.case.tag(), "plumbing");
    f.push("model", &scenario.model, "plumbing");
    f.push("c", scenario.c, "plumbing");
    f.push("N", scenario.n, "plumbing");
    f.push("front_residual_max", profile.map(|p| p.residual_max), "front-equation");

    let model = scenario.build_model()?;
    match classify_and_threshold(&model) {
        Ok(t) => {
            f.push("classification", t.classification, "speed-classification");
            if let Some(e) = &t.exact {
                f.push("exact_comparison", json!({"lhs": e.lhs, "rhs": e.rhs, "holds": e.holds}), "speed-classification");
            }
            f.push("h_at_cbar", t.h_at_cbar, "speed-classification");
            f.push("one_minus_rho", t.one_minus_rho, "speed-classification");
            f.push("c0", t.c0, "speed-classification");
            f.push("c_hat", t.c_hat, "speed-classification");
        }
        Err(e) => f.push("classification", e.to_string(), "speed-classification"),
    }

    f.push("weight_window", [plan.a_lo, plan.a_hi], "weight-window");
    f.push("a", summary.as_ref().map_or(plan.a, |s| s.a), "weight-window");
    f.push("mu0", plan.mu0, "weight-window");
    f.push("mu0_exact", plan.mu0_exact, "weight-window");
    f.push("weight_feasible", plan.feasible, "weight-window");
    f.push("essential_bound", verdict.essential_bound, "essential-border");
    f.push("point_spectrum_max_re", verdict.point_spectrum_max_re, "point-spectrum-sign");
    if let Some(s) = &summary {
        f.push("gap", s.gap, "spectral-gap");
        f.push("eigenvalues_unflagged", s.unflagged, "plumbing");
        f.push("eigenvalues_flagged", s.flagged, "plumbing");
    }
    f.push("translation_residual", verdict.translation_residual, "translation-mode");
    if let Some(st) = &sturm {
        let counts: Vec<usize> = st.entries.iter().map(|e| e.zero_count).collect();
        f.push("sturm_zero_counts", counts, "sturm-oscillation");
        f.push("sturm_all_pass", st.all_pass, "sturm-oscillation");
    }
    if let Some(cs) = &certs {
        f.push("certificates", cs.len(), "energy-identity");
        f.push(
            "certificates_closed",
            cs.iter().filter(|c| c.certified()).count(),
            "energy-identity",
        );
        f.push("certificate_rhs_max", cs.iter().map(|c| c.rhs).reduce(f64::max), "energy-identity");
    }
    if let Some(sw) = &sweep {
        let eps: Vec<f64> = sw.rows.iter().map(|r| r.eps).collect();
        let drift: Vec<f64> = sw.rows.iter().map(|r| r.drifts.first().copied().unwrap_or(f64::NAN)).collect();
        f.push("sweep_eps", eps, "regularization");
        f.push("sweep_drift_top", drift, "regularization");
        f.push("sweep_monotone", sw.monotone.iter().all(|&m| m), "regularization");
    }
    f.push("verdict", &verdict.verdict, "plumbing");

    let input = dir
        .file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| ".".into());
    Ok(Bundle { input, fields: f.0 })
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "n/a".into(),
        other => other.to_string(),
    }
}

pub fn markdown(bundles: &[Bundle]) -> String {
    let mut s = String::from("# Spectral stability report\n");
    for b in bundles {
        let _ = write!(s, "\n## {}\n\n| field | value | anchor |\n|---|---|---|\n", b.input);
        for f in &b.fields {
            let _ = writeln!(s, "| {} | {} | {} |", f.name, cell(&f.value).replace('|', "\\|"), f.anchor);
        }
    }
    s
}

pub fn cmd_report(out: &Path, inputs: &[PathBuf], formats: &[String]) -> Result<u8> {
    let inputs: Vec<PathBuf> = if inputs.is_empty() { vec![out.to_path_buf()] } else { inputs.to_vec() };
    let bundles = inputs.iter().map(|d| bundle(d)).collect::<Result<Vec<_>>>()?;
    let o = Out::create(out)?;
    for fmt in formats {
        match fmt.as_str() {
            "markdown" | "md" => o.text("report.md", &markdown(&bundles))?,
            "json" => o.text("report.json", &to_json(&json!({ "bundles": bundles }))?)?,
            other => bail!("unknown report format {other:?}; use markdown or json"),
        }
    }
    Ok(0)
}
