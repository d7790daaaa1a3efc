//! Command-line front end: curvature reports, Smarandache curve reports,
//! claim verification and OBJ export of ruled surfaces.

// `!(x > y)` also rejects NaN, which the plain negation would accept.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
pub mod error;
pub mod format;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use commands::Outcome;
pub use config::{CurveSource, RunConfig};
pub use error::{exit, CliError};

#[derive(Debug, Parser)]
#[command(name = "dualsurf", version, about = "Ruled surfaces as dual spherical curves")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub overrides: Overrides,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Tabulate distribution parameter, curvature and radii along the curve.
    Analyze,
    /// Report the Smarandache curves: closed-form vs recomputed curvature, samples.
    Smarandache,
    /// Measure every closed-form claim and write the discrepancy ledger.
    Verify,
    /// Write OBJ meshes of the base surface and the Smarandache surfaces.
    Mesh,
}

#[derive(Debug, Clone, Default, Args)]
pub struct Overrides {
    /// Configuration file of `key = value` lines.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Preset such as `helicoid`, `cone(0.8,0.6)`, or `file:<path>` for sampled input.
    #[arg(long, global = true)]
    pub curve: Option<String>,
    /// Start of the arc-length range (default: the curve's analysis window).
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub s_min: Option<f64>,
    /// End of the arc-length range.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub s_max: Option<f64>,
    /// Samples along the curve.
    #[arg(long, global = true)]
    pub s_count: Option<usize>,
    /// Start of the ruling parameter range for meshes (default -1).
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub u_min: Option<f64>,
    /// End of the ruling parameter range (default 1).
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub u_max: Option<f64>,
    /// Samples across each ruling.
    #[arg(long, global = true)]
    pub u_count: Option<usize>,
    /// Comma-separated subset of et, eg, tg, etg (or `all`).
    #[arg(long, global = true)]
    pub kinds: Option<String>,
    /// Output directory (created if missing).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Real-part tolerance for verify (default 1e-6).
    #[arg(long, global = true)]
    pub tol_re: Option<f64>,
    /// Dual-part tolerance for verify (default 1e-5).
    #[arg(long, global = true)]
    pub tol_du: Option<f64>,
}

impl Overrides {
    /// The file configuration (if any) with command-line values applied on top.
    pub fn resolve(&self) -> Result<RunConfig, CliError> {
        let file = match &self.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        let cli = RunConfig {
            curve: self.curve.as_deref().map(|c| CurveSource::parse(c, None)).transpose()?,
            s_min: self.s_min,
            s_max: self.s_max,
            s_count: self.s_count,
            u_min: self.u_min,
            u_max: self.u_max,
            u_count: self.u_count,
            kinds: self.kinds.as_deref().map(config::parse_kinds).transpose()?,
            out: self.out.clone(),
            tol_re: self.tol_re,
            tol_du: self.tol_du,
        };
        let merged = file.overridden_by(cli);
        merged.validate()?;
        Ok(merged)
    }
}

pub fn run(command: Command, cfg: &RunConfig) -> Result<Outcome, CliError> {
    match command {
        Command::Analyze => commands::analyze(cfg),
        Command::Smarandache => commands::smarandache(cfg),
        Command::Verify => commands::verify(cfg),
        Command::Mesh => commands::mesh(cfg),
    }
}

/// Runs a parsed command line and returns the process exit status.
pub fn main_with(cli: Cli) -> i32 {
    let result = cli.overrides.resolve().and_then(|cfg| run(cli.command, &cfg));
    match result {
        Ok(Outcome::Success) => exit::OK,
        Ok(Outcome::VerificationFailed) => exit::VERIFICATION_FAILED,
        Err(e) => {
            eprintln!("dualsurf: {e}");
            e.exit_code()
        }
    }
}
