//! The four subcommands.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use dualsurf::curve::Preset;
use dualsurf::frame::DarbouxFrame;
use dualsurf::ledger::{self, Ledger, LedgerConfig, Target};
use dualsurf::smarandache::{bertrand_offset_params, sample_smarandache_surface};
use dualsurf::study::{linspace, sample_ruled_surface};
use dualsurf::{curvature_data, darboux_frame, reparametrize_arclength, CurveSpec, DualCurve, RuledPatch, SmarandacheKind, UnitSpeedCurve};

use crate::config::{CurveSource, RunConfig, DEFAULT_S_COUNT, DEFAULT_U_COUNT};
use crate::error::CliError;
use crate::format::{cell, obj, sampled_curve};

/// Result of a command that ran to completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success,
    VerificationFailed,
}

/// Sample count for the ledger when none is configured.
pub const DEFAULT_LEDGER_SAMPLES: usize = 24;
/// Developability threshold on `|Δ|` in reports.
pub const DEVELOPABLE_TOL: f64 = 1e-9;
/// Margin kept from the ends of a sampled curve.
const SAMPLED_MARGIN: f64 = 0.1;

/// The curve of a run, ready for analysis.
pub struct Resolved {
    pub name: String,
    pub curve: UnitSpeedCurve,
    pub window: (f64, f64),
}

/// Loads the configured curve (helicoid when none is given) and its s-window.
pub fn resolve_curve(cfg: &RunConfig) -> Result<Resolved, CliError> {
    let source = cfg.curve.clone().unwrap_or(CurveSource::Preset(Preset::Helicoid));
    let spec = source.load()?;
    let curve = reparametrize_arclength(spec.clone())?;
    let default = match &spec {
        CurveSpec::Preset(p) => p.analysis_window(),
        CurveSpec::Sampled(_) => {
            let (lo, hi) = curve.domain();
            (lo + SAMPLED_MARGIN, hi - SAMPLED_MARGIN)
        }
    };
    let window = (cfg.s_min.unwrap_or(default.0), cfg.s_max.unwrap_or(default.1));
    if !(window.1 > window.0) {
        return Err(CliError::Config(format!("s range [{}, {}] is empty", window.0, window.1)));
    }
    Ok(Resolved { name: source.name(), curve, window })
}

fn s_grid(cfg: &RunConfig, window: (f64, f64)) -> Vec<f64> {
    linspace(window.0, window.1, cfg.s_count.unwrap_or(DEFAULT_S_COUNT))
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::io(path, e))
}

fn out_dir(cfg: &RunConfig) -> Result<PathBuf, CliError> {
    let dir = cfg.out_dir();
    fs::create_dir_all(&dir).map_err(|e| CliError::io(&dir, e))?;
    Ok(dir)
}

pub const ANALYSIS_HEADER: &str = "s\tdist_param\tgamma\tdelta\tgamma_bar_du\tradius_re\tradius_du\trho_re\trho_du\tdevelopable";

/// Curvature report along the curve, one row per sample.
pub fn analysis_table(cfg: &RunConfig) -> Result<String, CliError> {
    let r = resolve_curve(cfg)?;
    let mut out = format!("{ANALYSIS_HEADER}\n");
    for s in s_grid(cfg, r.window) {
        let f = darboux_frame(&r.curve, s)?;
        let c = curvature_data(&f);
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            cell(s),
            cell(c.dist_param),
            cell(c.gamma),
            cell(c.delta),
            cell(c.gamma_bar.du),
            cell(c.radius.re),
            cell(c.radius.du),
            cell(c.rho.re),
            cell(c.rho.du),
            c.dist_param.abs() <= DEVELOPABLE_TOL,
        );
    }
    Ok(out)
}

pub fn analyze(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let table = analysis_table(cfg)?;
    let path = out_dir(cfg)?.join("analysis.tsv");
    write(&path, &table)?;
    println!("wrote {} ({} samples)", path.display(), table.lines().count() - 1);
    Ok(Outcome::Success)
}

pub const KIND_HEADER: &str =
    "s\tregular\tgamma_closed_re\tgamma_closed_du\tgamma_oracle_re\tgamma_oracle_du\tradius_re\tradius_du\trho_re\trho_du";

fn opt_cell(x: Option<f64>) -> String {
    x.map_or_else(|| "-".into(), cell)
}

pub fn smarandache(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let r = resolve_curve(cfg)?;
    let dir = out_dir(cfg)?;
    let grid = s_grid(cfg, r.window);
    for kind in cfg.kinds() {
        let samples = ledger::kind_samples(&r.curve, kind, r.window, &grid)?;
        let mut table = format!("{KIND_HEADER}\n");
        let mut worst = (0.0f64, 0.0f64);
        for k in &samples {
            let _ = writeln!(
                table,
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                cell(k.s),
                k.regular,
                opt_cell(k.gamma_closed.map(|g| g.re)),
                opt_cell(k.gamma_closed.map(|g| g.du)),
                opt_cell(k.gamma_oracle.map(|g| g.re)),
                opt_cell(k.gamma_oracle.map(|g| g.du)),
                opt_cell(k.radius.map(|g| g.re)),
                opt_cell(k.radius.map(|g| g.du)),
                opt_cell(k.rho.map(|g| g.re)),
                opt_cell(k.rho.map(|g| g.du)),
            );
            if let (Some(a), Some(b)) = (k.gamma_closed, k.gamma_oracle) {
                worst = (worst.0.max((a.re - b.re).abs()), worst.1.max((a.du - b.du).abs()));
            }
        }
        let label = kind.label();
        write(&dir.join(format!("{label}.tsv")), &table)?;
        let rows: Vec<_> = samples.iter().map(|k| (k.s, k.point)).collect();
        write(&dir.join(format!("{label}_curve.txt")), &sampled_curve(&format!("{kind} curve of {}", r.name), &rows))?;
        if kind == SmarandacheKind::EG {
            let mut report = String::from("s\ttheta\ttheta_star\n");
            for k in &samples {
                match bertrand_offset_params(&r.curve, k.s).ok().filter(|_| k.regular) {
                    Some(a) => {
                        let _ = writeln!(report, "{}\t{}\t{}", cell(k.s), cell(a.theta), cell(a.theta_star));
                    }
                    None => {
                        let _ = writeln!(report, "{}\t-\t-", cell(k.s));
                    }
                }
            }
            write(&dir.join("eg_bertrand.tsv"), &report)?;
        }
        println!(
            "{kind}: {} samples, {} irregular, max |closed - oracle| = {:.3e} (re), {:.3e} (du)",
            samples.len(),
            samples.iter().filter(|k| !k.regular).count(),
            worst.0,
            worst.1
        );
    }
    Ok(Outcome::Success)
}

/// Ledger for the configured curve, or for the preset suite when none is set.
pub fn build_ledger(cfg: &RunConfig) -> Result<Ledger, CliError> {
    let targets = match &cfg.curve {
        Some(_) => {
            let r = resolve_curve(cfg)?;
            vec![Target { name: r.name, curve: r.curve, window: r.window }]
        }
        None => Preset::standard_suite().into_iter().map(Target::preset).collect::<Result<Vec<_>, _>>()?,
    };
    let defaults = LedgerConfig::default();
    let config = LedgerConfig {
        samples: cfg.s_count.unwrap_or(DEFAULT_LEDGER_SAMPLES),
        tol_re: cfg.tol_re.unwrap_or(defaults.tol_re),
        tol_du: cfg.tol_du.unwrap_or(defaults.tol_du),
    };
    Ok(ledger::build_ledger(&targets, &config)?)
}

pub fn verify(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let ledger = build_ledger(cfg)?;
    let path = out_dir(cfg)?.join("ledger.tsv");
    write(&path, &ledger.to_tsv())?;
    let count = |v: dualsurf::oracle::Verdict| ledger.rows.iter().filter(|r| r.report.verdict == v).count();
    use dualsurf::oracle::Verdict;
    println!(
        "wrote {}: {} rows, {} verified, {} suspect, {} hypothesis-not-met, {} out-of-scope",
        path.display(),
        ledger.rows.len(),
        count(Verdict::Verified),
        count(Verdict::Suspect),
        count(Verdict::HypothesisNotMet),
        count(Verdict::OutOfScope)
    );
    if ledger.passed() {
        return Ok(Outcome::Success);
    }
    for r in ledger.failures() {
        eprintln!(
            "must-verify claim {} failed on {}: residual {:.3e} (re), {:.3e} (du)",
            r.claim.id, r.curve, r.report.max_re, r.report.max_du
        );
    }
    Ok(Outcome::VerificationFailed)
}

/// The base surface followed by one patch per configured kind.
pub fn mesh_patches(cfg: &RunConfig) -> Result<Vec<(String, RuledPatch)>, CliError> {
    let r = resolve_curve(cfg)?;
    let (ulo, uhi) = cfg.u_range();
    let u = linspace(ulo, uhi, cfg.u_count.unwrap_or(DEFAULT_U_COUNT));
    let s = s_grid(cfg, r.window);
    let mut out = vec![("base".to_string(), sample_ruled_surface(&r.curve, s.clone(), u.clone())?)];
    for kind in cfg.kinds() {
        out.push((kind.label().to_string(), sample_smarandache_surface(&r.curve, kind, s.clone(), u.clone())?));
    }
    Ok(out)
}

pub fn mesh(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let name = resolve_curve(cfg)?.name;
    let dir = out_dir(cfg)?;
    for (label, patch) in mesh_patches(cfg)? {
        let path = dir.join(format!("{label}.obj"));
        write(&path, &obj(&patch, &format!("{label} surface of {name}")))?;
        println!("wrote {} ({}x{} vertices)", path.display(), patch.rows(), patch.cols());
    }
    Ok(Outcome::Success)
}

/// Base frame at `s`, exposed for reports and tests.
pub fn frame_at(cfg: &RunConfig, s: f64) -> Result<DarbouxFrame, CliError> {
    Ok(darboux_frame(&resolve_curve(cfg)?.curve, s)?)
}
