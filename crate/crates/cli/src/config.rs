//! Scenario configuration: JSON file values overridden by flags.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use nagumo_core::fronts::GridConfig;
use nagumo_core::model::stationary_alpha;
use nagumo_core::{FrontCase, Model, ModelSpec};
use serde::{Deserialize, Serialize};

/// Speed: a number, or `"auto-stationary"` for the sN cases.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SpeedSpec {
    Value(f64),
    Named(String),
}

/// Weight: a number, or `"auto-midpoint"`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WeightSpec {
    Value(f64),
    Named(String),
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridFile {
    #[serde(rename = "L_minus")]
    pub l_minus: Option<f64>,
    #[serde(rename = "L_plus")]
    pub l_plus: Option<f64>,
    #[serde(rename = "N")]
    pub n: Option<usize>,
    pub stretch: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub name: Option<String>,
    pub model: Option<ModelSpec>,
    pub case: Option<String>,
    pub c: Option<SpeedSpec>,
    pub a: Option<WeightSpec>,
    pub eps_sweep: Option<Vec<f64>>,
    pub grid: Option<GridFile>,
    pub out: Option<PathBuf>,
    pub n_eigs: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
enum ConfigFile {
    Many {
        scenarios: Vec<ScenarioFile>,
        #[serde(default)]
        out: Option<PathBuf>,
    },
    One(Box<ScenarioFile>),
}

/// Flag values; `None` leaves the file value alone.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub case: Option<String>,
    pub alpha: Option<f64>,
    pub b: Option<f64>,
    pub c: Option<f64>,
    pub a: Option<f64>,
    pub eps_sweep: Option<Vec<f64>>,
    pub l_minus: Option<f64>,
    pub l_plus: Option<f64>,
    pub n: Option<usize>,
    pub out: Option<PathBuf>,
    pub n_eigs: Option<usize>,
}

/// A fully resolved scenario, also written out as `scenario.json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub name: String,
    pub model: ModelSpec,
    pub case: FrontCase,
    pub c: f64,
    /// `None` means the midpoint of the admissible window.
    pub a: Option<f64>,
    pub eps_sweep: Vec<f64>,
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "L_minus")]
    pub l_minus: Option<f64>,
    #[serde(rename = "L_plus")]
    pub l_plus: Option<f64>,
    pub stretch: f64,
    pub n_eigs: usize,
    #[serde(skip)]
    pub out: PathBuf,
}

pub const DEFAULT_EPS: [f64; 4] = [1e-1, 1e-2, 1e-3, 1e-4];

impl Scenario {
    pub fn grid(&self) -> GridConfig {
        GridConfig {
            l_minus: self.l_minus,
            l_plus: self.l_plus,
            stretch: self.stretch,
            ..GridConfig::with_n(self.n)
        }
    }

    pub fn build_model(&self) -> nagumo_core::Result<Model> {
        Model::new(self.model.clone())
    }
}

pub fn load(path: Option<&Path>, flags: &Overrides) -> Result<Vec<Scenario>> {
    let (files, root_out) = match path {
        None => (vec![ScenarioFile::default()], None),
        Some(p) => {
            let text = std::fs::read_to_string(p).with_context(|| format!("reading config {}", p.display()))?;
            match serde_json::from_str::<ConfigFile>(&text).with_context(|| format!("parsing config {}", p.display()))? {
                ConfigFile::Many { scenarios, out } => (scenarios, out),
                ConfigFile::One(s) => (vec![*s], None),
            }
        }
    };
    if files.is_empty() {
        bail!("config lists no scenarios");
    }
    let many = files.len() > 1;
    let base = flags
        .out
        .clone()
        .or(root_out)
        .unwrap_or_else(|| PathBuf::from("out"));
    let mut seen = Vec::new();
    let mut out = Vec::new();
    for (i, f) in files.into_iter().enumerate() {
        let mut s = resolve(f, flags, &base)?;
        if many {
            if s.name.is_empty() {
                s.name = format!("scenario-{i}");
            }
            if seen.contains(&s.name) {
                bail!("duplicate scenario name {:?}", s.name);
            }
            seen.push(s.name.clone());
            s.out = base.join(&s.name);
        }
        out.push(s);
    }
    Ok(out)
}

fn resolve(f: ScenarioFile, flags: &Overrides, base: &Path) -> Result<Scenario> {
    let tag = flags
        .case
        .clone()
        .or(f.case)
        .context("no case given (use --case or \"case\" in the config)")?;
    let case = FrontCase::parse(&tag).with_context(|| format!("unknown case {tag:?}; expected sN-inc, sN-dec, Nd or Nn"))?;

    let model = match f.model {
        Some(ModelSpec::Polynomial { d, f: fc, alpha }) => {
            if flags.b.is_some() {
                bail!("--b applies to the shigesada-cubic family only");
            }
            ModelSpec::Polynomial {
                d,
                f: fc,
                alpha: flags.alpha.unwrap_or(alpha),
            }
        }
        spec => {
            let (fb, falpha) = match spec {
                Some(ModelSpec::ShigesadaCubic { b, alpha }) => (Some(b), Some(alpha)),
                _ => (None, None),
            };
            let b = flags.b.or(fb).unwrap_or(1.0);
            let alpha = match flags.alpha.or(falpha) {
                Some(a) => a,
                None if case.is_stationary() => stationary_alpha(b)?,
                None => bail!("no alpha given for case {}", case.tag()),
            };
            ModelSpec::shigesada(b, alpha)
        }
    };

    let c = match (flags.c, f.c) {
        (Some(v), _) | (None, Some(SpeedSpec::Value(v))) => v,
        (None, Some(SpeedSpec::Named(n))) if n == "auto-stationary" => 0.0,
        (None, Some(SpeedSpec::Named(n))) => bail!("unknown speed {n:?}; use a number or \"auto-stationary\""),
        (None, None) if case.is_stationary() => 0.0,
        (None, None) => bail!("no speed c given for case {}", case.tag()),
    };
    if case.is_stationary() && c != 0.0 {
        bail!("case {} is stationary; c must be 0 or \"auto-stationary\"", case.tag());
    }

    let a = match (flags.a, f.a) {
        (Some(v), _) | (None, Some(WeightSpec::Value(v))) => Some(v),
        (None, Some(WeightSpec::Named(n))) if n == "auto-midpoint" => None,
        (None, Some(WeightSpec::Named(n))) => bail!("unknown weight policy {n:?}; use a number or \"auto-midpoint\""),
        (None, None) => None,
    };

    let eps_sweep = flags
        .eps_sweep
        .clone()
        .or(f.eps_sweep)
        .unwrap_or_else(|| DEFAULT_EPS.to_vec());
    if eps_sweep.iter().any(|e| !(*e >= 0.0)) {
        bail!("eps sweep values must be non-negative");
    }
    if eps_sweep.windows(2).any(|w| w[1] >= w[0]) {
        bail!("eps sweep must be strictly decreasing");
    }

    let grid = f.grid.unwrap_or_default();
    let n = flags.n.or(grid.n).unwrap_or(GridConfig::default().n);
    if n < 200 {
        bail!("N = {n} is too small; at least 200 grid points are needed");
    }
    let stretch = grid.stretch.unwrap_or(GridConfig::default().stretch);
    if !(0.0..1.0).contains(&stretch) {
        bail!("stretch must lie in [0, 1)");
    }
    Ok(Scenario {
        name: f.name.unwrap_or_default(),
        model,
        case,
        c,
        a,
        eps_sweep,
        n,
        l_minus: flags.l_minus.or(grid.l_minus),
        l_plus: flags.l_plus.or(grid.l_plus),
        stretch,
        n_eigs: flags.n_eigs.or(f.n_eigs).unwrap_or(6),
        out: f.out.unwrap_or_else(|| base.to_path_buf()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_file() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("c.json");
        std::fs::write(
            &p,
            r#"{"model":{"family":"shigesada-cubic","b":1,"alpha":0.5},"case":"Nd","c":1.0,"grid":{"N":500}}"#,
        )
        .unwrap();
        let flags = Overrides {
            c: Some(1.2),
            n: Some(800),
            ..Default::default()
        };
        let s = &load(Some(&p), &flags).unwrap()[0];
        assert_eq!(s.c, 1.2);
        assert_eq!(s.n, 800);
        assert_eq!(s.model, ModelSpec::shigesada(1.0, 0.5));
        assert_eq!(s.a, None);
    }

    #[test]
    fn stationary_alpha_filled_in() {
        let flags = Overrides {
            case: Some("sN".into()),
            b: Some(1.0),
            ..Default::default()
        };
        let s = &load(None, &flags).unwrap()[0];
        assert_eq!(s.case, FrontCase::SnIncreasing);
        assert!((s.model.alpha() - 0.625).abs() < 1e-14);
        assert_eq!(s.c, 0.0);
    }

    #[test]
    fn rejects_unsorted_sweep() {
        let flags = Overrides {
            case: Some("Nn".into()),
            alpha: Some(0.5),
            c: Some(1.0),
            eps_sweep: Some(vec![1e-3, 1e-2]),
            ..Default::default()
        };
        assert!(load(None, &flags).is_err());
    }
}
