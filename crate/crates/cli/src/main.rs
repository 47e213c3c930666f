//! `genmax` command-line front end.
//!
//! Exit codes: 0 when every check passed, 1 for a failed check or an invalid
//! value, 2 for unknown commands or flags.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use genmax::polarization::{Helicity, ProcaVariant};

const UNITS_BANNER: &str = "genmax: natural units, c = hbar = 1 (simulate takes c from its config)";

#[derive(Parser, Debug)]
#[command(name = "genmax", version, about = "Generalized Maxwell and Weyl equation toolkit")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct Common {
    /// Write output to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Emit JSON.
    #[arg(long, global = true, conflicts_with = "csv")]
    pub json: bool,
    /// Emit CSV (default).
    #[arg(long, global = true)]
    pub csv: bool,
    /// Seed for sampled inputs; echoed into every output.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub seed: Option<u64>,
    /// Worker threads (defaults to all cores). Output does not depend on it.
    #[arg(long, global = true, value_parser = parse_threads)]
    pub threads: Option<usize>,
}

impl Common {
    pub fn format(&self) -> output::Format {
        if self.json {
            output::Format::Json
        } else {
            output::Format::Csv
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Randomized residual checks of the operator identities.
    Identities(IdentitiesArgs),
    /// Energy branches of an equation family at given momenta.
    Dispersion(DispersionArgs),
    /// Polarization 4-vectors of a massive spin-1 field.
    Polarization(PolarizationArgs),
    /// Fitted exponents of |u^mu| against the mass as m goes to 0.
    Limits(LimitsArgs),
    /// Proca and Weinberg residuals of polarization vectors.
    Proca(ProcaArgs),
    /// Time-domain evolution on a periodic grid.
    Simulate(SimulateArgs),
}

#[derive(Args, Debug)]
pub struct IdentitiesArgs {
    #[arg(long, default_value_t = 200, value_parser = parse_count, allow_hyphen_values = true)]
    pub samples: usize,
    #[arg(long, default_value_t = 1e-12, value_parser = parse_positive, allow_hyphen_values = true)]
    pub tol: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    WeylR,
    WeylL,
    DiracTwoMass,
    GerstenChi,
}

#[derive(Args, Debug)]
pub struct DispersionArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    /// P+ mass of weyl-r and dirac-two-mass.
    #[arg(long, default_value_t = 1.0, value_parser = parse_non_negative, allow_hyphen_values = true)]
    pub m1: f64,
    /// Second mass of dirac-two-mass.
    #[arg(long, default_value_t = 1.0, value_parser = parse_non_negative, allow_hyphen_values = true)]
    pub m2: f64,
    /// P- mass of weyl-l.
    #[arg(long, default_value_t = 1.0, value_parser = parse_non_negative, allow_hyphen_values = true)]
    pub m3: f64,
    /// Momentum `kx,ky,kz`; repeatable.
    #[arg(long = "k", value_parser = parse_vec3, allow_hyphen_values = true)]
    pub momenta: Vec<[f64; 3]>,
    /// Additional momenta drawn uniformly from the ball of radius --kmax.
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub random: usize,
    #[arg(long, default_value_t = 10.0, value_parser = parse_positive, allow_hyphen_values = true)]
    pub kmax: f64,
    /// Also require every branch to satisfy E^2 = |p|^2.
    #[arg(long)]
    pub expect_massless: bool,
}

#[derive(Args, Debug)]
pub struct PolarizationArgs {
    /// One of +1, -1, 0, 0t, or `all`.
    #[arg(long, default_value = "all", value_parser = parse_sigmas, allow_hyphen_values = true)]
    pub sigma: Sigmas,
    #[arg(long, value_parser = parse_vec3, allow_hyphen_values = true)]
    pub p: [f64; 3],
    #[arg(long, value_parser = parse_positive, allow_hyphen_values = true)]
    pub m: f64,
    #[arg(long = "N", default_value_t = 1.0, value_parser = parse_positive, allow_hyphen_values = true)]
    pub normalization: f64,
}

#[derive(Args, Debug)]
pub struct LimitsArgs {
    #[arg(long, default_value = "all", value_parser = parse_sigmas, allow_hyphen_values = true)]
    pub sigma: Sigmas,
    #[arg(long, value_parser = parse_vec3, allow_hyphen_values = true)]
    pub p: [f64; 3],
    #[arg(long = "N", default_value_t = 1.0, value_parser = parse_positive, allow_hyphen_values = true)]
    pub normalization: f64,
    /// Strictly decreasing positive masses, at least four.
    #[arg(long, value_delimiter = ',', default_value = "1,0.1,0.01,0.001", value_parser = parse_positive, allow_hyphen_values = true)]
    pub masses: Vec<f64>,
    /// Fail unless every fitted exponent is within --tol of -1.
    #[arg(long)]
    pub check: bool,
    #[arg(long, default_value_t = 0.05, value_parser = parse_positive, allow_hyphen_values = true)]
    pub tol: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Standard,
    Modified,
    Both,
}

impl VariantArg {
    pub fn variants(self) -> Vec<ProcaVariant> {
        match self {
            VariantArg::Standard => vec![ProcaVariant::Standard],
            VariantArg::Modified => vec![ProcaVariant::Modified],
            VariantArg::Both => vec![ProcaVariant::Standard, ProcaVariant::Modified],
        }
    }
}

#[derive(Args, Debug)]
pub struct ProcaArgs {
    #[arg(long, value_enum, default_value_t = VariantArg::Both)]
    pub variant: VariantArg,
    /// One of +1, -1, 0, or `all` (the three physical helicities).
    #[arg(long, default_value = "all", value_parser = parse_physical_sigmas, allow_hyphen_values = true)]
    pub sigma: Sigmas,
    #[arg(long, value_parser = parse_vec3, allow_hyphen_values = true)]
    pub p: [f64; 3],
    #[arg(long, value_parser = parse_positive, allow_hyphen_values = true)]
    pub m: f64,
    /// Added to the on-shell energy. Residuals are only checked when it is 0.
    #[arg(long, default_value_t = 0.0, value_parser = parse_finite, allow_hyphen_values = true)]
    pub energy_offset: f64,
    #[arg(long, default_value_t = 1e-10, value_parser = parse_positive, allow_hyphen_values = true)]
    pub tol: f64,
}

#[derive(Args, Debug)]
pub struct SimulateArgs {
    /// Flat `key = value` config file.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Override a config key; repeatable, applied after the file.
    #[arg(long = "set", value_name = "KEY=VALUE", value_parser = parse_assignment)]
    pub overrides: Vec<(String, String)>,
}

#[derive(Clone, Debug)]
pub struct Sigmas(pub Vec<Helicity>);

fn parse_sigmas(s: &str) -> Result<Sigmas, String> {
    if s == "all" {
        return Ok(Sigmas(Helicity::ALL.to_vec()));
    }
    s.parse::<Helicity>().map(|h| Sigmas(vec![h])).map_err(|e| e.to_string())
}

fn parse_physical_sigmas(s: &str) -> Result<Sigmas, String> {
    let sigmas = parse_sigmas(s)?;
    if s == "all" {
        return Ok(Sigmas(vec![Helicity::Plus, Helicity::Minus, Helicity::Zero]));
    }
    if sigmas.0.contains(&Helicity::TimeLike) {
        return Err("the time-like vector is pure gauge; use +1, -1 or 0".into());
    }
    Ok(sigmas)
}

fn parse_finite(s: &str) -> Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|e| format!("{s:?}: {e}"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("{s:?} is not finite"))
    }
}

fn parse_positive(s: &str) -> Result<f64, String> {
    let v = parse_finite(s)?;
    if v > 0.0 {
        Ok(v)
    } else {
        Err(format!("{v} must be positive"))
    }
}

fn parse_non_negative(s: &str) -> Result<f64, String> {
    let v = parse_finite(s)?;
    if v >= 0.0 {
        Ok(v)
    } else {
        Err(format!("{v} must be non-negative"))
    }
}

fn parse_count(s: &str) -> Result<usize, String> {
    match s.trim().parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(format!("{s:?}: {e}")),
    }
}

fn parse_threads(s: &str) -> Result<usize, String> {
    let v = parse_count(s)?;
    if v > 1024 {
        return Err(format!("{v} threads is more than 1024"));
    }
    Ok(v)
}

fn parse_vec3(s: &str) -> Result<[f64; 3], String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(format!("expected x,y,z, got {s:?}"));
    }
    let mut out = [0.0; 3];
    for (o, p) in out.iter_mut().zip(parts) {
        *o = parse_finite(p)?;
    }
    Ok(out)
}

fn parse_assignment(s: &str) -> Result<(String, String), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected KEY=VALUE, got {s:?}"))?;
    Ok((k.trim().to_string(), v.trim().to_string()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                ErrorKind::InvalidValue | ErrorKind::ValueValidation | ErrorKind::MissingRequiredArgument => {
                    1
                }
                _ => 2,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    eprintln!("{UNITS_BANNER}");
    if let Some(n) = cli.common.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match commands::run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("genmax: one or more checks failed");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
