//! `nagumo`: fronts, spectra and reports from the command line.
//!
//! Exit codes: 0 pass, 1 error, 2 a hypothesis fails for the scenario.

// `!(x > y)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod config;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;

use config::{Overrides, Scenario};

#[derive(Parser)]
#[command(name = "nagumo", version, about = "Fronts and spectral stability for degenerate-diffusion Nagumo equations")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Solve for the front profile and check its invariants.
    Front(Common),
    /// Weight plan, borders, point spectrum, certificates and verdict.
    Spectrum(Common),
    /// Collect earlier outputs into a report.
    Report(ReportArgs),
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct Common {
    /// JSON scenario file; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// sN-inc, sN-dec, Nd or Nn.
    #[arg(long)]
    case: Option<String>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    b: Option<f64>,
    #[arg(long)]
    c: Option<f64>,
    /// Exponential weight; defaults to the window midpoint.
    #[arg(long)]
    a: Option<f64>,
    /// Comma-separated, strictly decreasing.
    #[arg(long = "eps-sweep", value_delimiter = ',')]
    eps_sweep: Option<Vec<f64>>,
    #[arg(long = "L-minus")]
    l_minus: Option<f64>,
    #[arg(long = "L-plus")]
    l_plus: Option<f64>,
    #[arg(long = "N")]
    n: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long = "n-eigs")]
    n_eigs: Option<usize>,
}

#[derive(Args)]
struct ReportArgs {
    /// Where report.md / report.json go.
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Output directories of earlier runs; defaults to --out.
    inputs: Vec<PathBuf>,
    #[arg(long, value_delimiter = ',', default_value = "markdown,json")]
    format: Vec<String>,
}

impl Common {
    fn overrides(&self) -> Overrides {
        Overrides {
            case: self.case.clone(),
            alpha: self.alpha,
            b: self.b,
            c: self.c,
            a: self.a,
            eps_sweep: self.eps_sweep.clone(),
            l_minus: self.l_minus,
            l_plus: self.l_plus,
            n: self.n,
            out: self.out.clone(),
            n_eigs: self.n_eigs,
        }
    }
}

#[derive(Serialize)]
struct ErrorDoc {
    kind: &'static str,
    message: String,
}

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<nagumo_core::Error>() {
        Some(nagumo_core::Error::Infeasible(_)) => 2,
        _ => 1,
    }
}

fn kind(e: &anyhow::Error) -> &'static str {
    e.downcast_ref::<nagumo_core::Error>().map_or("config", |c| c.kind())
}

/// Runs one scenario; errors are written next to its outputs.
fn run_one(s: &Scenario, f: fn(&Scenario) -> Result<u8>) -> u8 {
    match f(s) {
        Ok(code) => code,
        Err(e) => {
            let code = exit_code(&e);
            if s.name.is_empty() {
                eprintln!("error: {e:#}");
            } else {
                eprintln!("error [{}]: {e:#}", s.name);
            }
            let doc = ErrorDoc {
                kind: kind(&e),
                message: format!("{e:#}"),
            };
            if let Ok(out) = commands::Out::create(&s.out) {
                let _ = out.json("error.json", &doc);
            }
            code
        }
    }
}

fn run_scenarios(common: &Common, f: fn(&Scenario) -> Result<u8>) -> u8 {
    match config::load(common.config.as_deref(), &common.overrides()) {
        Ok(list) => list.par_iter().map(|s| run_one(s, f)).max().unwrap_or(0),
        Err(e) => {
            eprintln!("error: {e:#}");
            1
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match &cli.cmd {
        Cmd::Front(c) => run_scenarios(c, commands::cmd_front),
        Cmd::Spectrum(c) => run_scenarios(c, commands::cmd_spectrum),
        Cmd::Report(r) => match report::cmd_report(&r.out, &r.inputs, &r.format) {
            Ok(code) => code,
            Err(e) => {
                eprintln!("error: {e:#}");
                1
            }
        },
    };
    ExitCode::from(code)
}
