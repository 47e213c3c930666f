use std::fs;
use std::io::Write;

use genmax::dispersion::{self, EquationSpec, BRANCH_RESIDUAL_LIMIT};
use genmax::fieldsim::{self, Diagnostics, RunOptions, SimConfig};
use genmax::identities;
use genmax::polarization::{self as pol, Helicity, ProcaVariant};
use genmax::sampling;
use serde::Serialize;

use crate::output::{emit, json, seed_line, Format};
use crate::{
    Cli, Command, Common, DispersionArgs, Family, IdentitiesArgs, LimitsArgs, PolarizationArgs, ProcaArgs,
    SimulateArgs,
};

/// Tolerance on the mass-shell test of `--expect-massless`.
const MASSLESS_TOL: f64 = 1e-9;
/// Relative tolerance of the Lorentz-condition check.
const LORENTZ_TOL: f64 = 1e-12;

type Outcome = Result<bool, String>;

pub fn run(cli: &Cli) -> Outcome {
    let c = &cli.common;
    match &cli.command {
        Command::Identities(a) => identities_cmd(c, a),
        Command::Dispersion(a) => dispersion_cmd(c, a),
        Command::Polarization(a) => polarization_cmd(c, a),
        Command::Limits(a) => limits_cmd(c, a),
        Command::Proca(a) => proca_cmd(c, a),
        Command::Simulate(a) => simulate_cmd(c, a),
    }
}

fn seed(c: &Common) -> u64 {
    c.seed.unwrap_or(0)
}

fn csv(c: &Common, body: impl FnOnce(&mut Vec<u8>) -> std::io::Result<()>) -> Result<Vec<u8>, String> {
    let mut buf = Vec::new();
    seed_line(&mut buf, seed(c)).map_err(|e| e.to_string())?;
    body(&mut buf).map_err(|e| e.to_string())?;
    Ok(buf)
}

fn identities_cmd(c: &Common, a: &IdentitiesArgs) -> Outcome {
    let reports = identities::full_suite(a.samples, a.tol, seed(c)).map_err(|e| e.to_string())?;
    let bytes = match c.format() {
        Format::Json => json(&reports)?,
        Format::Csv => csv(c, |out| {
            writeln!(out, "name,samples,seed,tolerance,max_residual,passed")?;
            for r in &reports {
                writeln!(
                    out,
                    "{},{},{},{:e},{:e},{}",
                    r.name, r.samples, r.seed, r.tolerance, r.max_residual, r.passed
                )?;
            }
            Ok(())
        })?,
    };
    emit(c.out.as_deref(), &bytes)?;
    Ok(reports.iter().all(|r| r.passed))
}

#[derive(Serialize)]
struct DispersionRecord<'a> {
    seed: u64,
    family: &'a str,
    momentum: [f64; 3],
    branches: Vec<[f64; 2]>,
    residual: f64,
}

fn dispersion_cmd(c: &Common, a: &DispersionArgs) -> Outcome {
    let spec = match a.family {
        Family::WeylR => EquationSpec::GeneralizedWeylR { m1: a.m1 },
        Family::WeylL => EquationSpec::GeneralizedWeylL { m3: a.m3 },
        Family::DiracTwoMass => EquationSpec::DiracTwoMass { m1: a.m1, m2: a.m2 },
        Family::GerstenChi => EquationSpec::GerstenSpin1Chi,
    };
    spec.validate().map_err(|e| e.to_string())?;
    let mut momenta = a.momenta.clone();
    let mut rng = sampling::rng(seed(c));
    momenta.extend((0..a.random).map(|_| sampling::vector_in_ball(&mut rng, a.kmax)));
    if momenta.is_empty() {
        return Err("give at least one --k or a positive --random count".into());
    }
    let results = dispersion::sweep(&spec, &momenta).map_err(|e| e.to_string())?;
    let mut passed = results.iter().all(|r| r.residual <= BRANCH_RESIDUAL_LIMIT);
    if a.expect_massless {
        passed &= dispersion::is_massless(&spec, &momenta, MASSLESS_TOL).map_err(|e| e.to_string())?;
    }
    let bytes = match c.format() {
        Format::Json => {
            let records: Vec<DispersionRecord> = results
                .iter()
                .map(|r| DispersionRecord {
                    seed: seed(c),
                    family: spec.name(),
                    momentum: r.momentum,
                    branches: r.branches.iter().map(|e| [e.re, e.im]).collect(),
                    residual: r.residual,
                })
                .collect();
            json(&records)?
        }
        Format::Csv => csv(c, |out| dispersion::write_dispersion_csv(out, &results))?,
    };
    emit(c.out.as_deref(), &bytes)?;
    Ok(passed)
}

#[derive(Serialize)]
struct PolarizationRecord {
    seed: u64,
    sigma: &'static str,
    m: f64,
    #[serde(rename = "N")]
    n: f64,
    p: [f64; 3],
    u: [[f64; 2]; 4],
    lorentz_residual: f64,
}

fn polarization_cmd(c: &Common, a: &PolarizationArgs) -> Outcome {
    let vectors = a
        .sigma
        .0
        .iter()
        .map(|&s| pol::polarization_vector(a.p, a.m, a.normalization, s))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    let passed = vectors.iter().all(|pv| {
        let want = if pv.helicity == Helicity::TimeLike { pv.normalization * pv.mass } else { 0.0 };
        let scale = (pv.energy() * pv.u.max_abs()).max(1.0);
        (pol::lorentz_condition(pv).re - want).abs() + pol::lorentz_condition(pv).im.abs()
            < LORENTZ_TOL * scale
    });
    let bytes = match c.format() {
        Format::Json => {
            let records: Vec<PolarizationRecord> = vectors
                .iter()
                .map(|pv| PolarizationRecord {
                    seed: seed(c),
                    sigma: pv.helicity.label(),
                    m: pv.mass,
                    n: pv.normalization,
                    p: pv.p,
                    u: pv.u.0.map(|z| [z.re, z.im]),
                    lorentz_residual: pol::lorentz_condition(pv).norm(),
                })
                .collect();
            json(&records)?
        }
        Format::Csv => csv(c, |out| pol::write_polarization_csv(out, &vectors))?,
    };
    emit(c.out.as_deref(), &bytes)?;
    Ok(passed)
}

#[derive(Serialize)]
struct LimitRecord {
    seed: u64,
    sigma: &'static str,
    #[serde(rename = "N")]
    n: f64,
    p: [f64; 3],
    component: usize,
    /// `None` when the component vanishes identically.
    slope: Option<f64>,
}

fn limits_cmd(c: &Common, a: &LimitsArgs) -> Outcome {
    let mut records = Vec::new();
    for &s in &a.sigma.0 {
        let exps = pol::limit_scan(a.p, s, a.normalization, &a.masses).map_err(|e| e.to_string())?;
        for (component, e) in exps.iter().enumerate() {
            records.push(LimitRecord {
                seed: seed(c),
                sigma: s.label(),
                n: a.normalization,
                p: a.p,
                component,
                slope: e.slope(),
            });
        }
    }
    let passed = !a.check || records.iter().filter_map(|r| r.slope).all(|s| (s + 1.0).abs() <= a.tol);
    let bytes = match c.format() {
        Format::Json => json(&records)?,
        Format::Csv => csv(c, |out| {
            writeln!(out, "sigma,N,px,py,pz,component,slope")?;
            for r in &records {
                let slope = match r.slope {
                    Some(s) => s.to_string(),
                    None => "na".into(),
                };
                writeln!(
                    out,
                    "{},{},{},{},{},{},{slope}",
                    r.sigma, r.n, r.p[0], r.p[1], r.p[2], r.component
                )?;
            }
            Ok(())
        })?,
    };
    emit(c.out.as_deref(), &bytes)?;
    Ok(passed)
}

#[derive(Serialize)]
struct ProcaRecord {
    seed: u64,
    sigma: &'static str,
    variant: &'static str,
    m: f64,
    p: [f64; 3],
    energy: f64,
    residual: f64,
    weinberg_residual: f64,
    passed: bool,
}

fn variant_name(v: ProcaVariant) -> &'static str {
    match v {
        ProcaVariant::Standard => "standard",
        ProcaVariant::Modified => "modified",
    }
}

fn proca_cmd(c: &Common, a: &ProcaArgs) -> Outcome {
    let energy = pol::on_shell_energy(a.p, a.m) + a.energy_offset;
    let e = genmax::clinalg::real(energy);
    let on_shell = a.energy_offset == 0.0;
    let mut records = Vec::new();
    for &s in &a.sigma.0 {
        let u = pol::polarization_vector(a.p, a.m, 1.0, s).map_err(|e| e.to_string())?.u;
        let f =
            pol::proca_residual(ProcaVariant::Modified, a.p, e, &u, a.m).map_err(|e| e.to_string())?.field;
        let weinberg = pol::weinberg_residual(a.p, e, &f, a.m);
        let weinberg_scale = ((energy * energy + a.m * a.m) * f.max_abs()).max(1.0);
        for variant in a.variant.variants() {
            let r = pol::proca_residual(variant, a.p, e, &u, a.m).map_err(|e| e.to_string())?;
            let scale = ((1.0 + energy * energy) * u.max_abs() / a.m).max(1.0);
            let passed = !on_shell || (r.residual < a.tol * scale && weinberg < a.tol * weinberg_scale);
            records.push(ProcaRecord {
                seed: seed(c),
                sigma: s.label(),
                variant: variant_name(variant),
                m: a.m,
                p: a.p,
                energy,
                residual: r.residual,
                weinberg_residual: weinberg,
                passed,
            });
        }
    }
    let bytes = match c.format() {
        Format::Json => json(&records)?,
        Format::Csv => csv(c, |out| {
            writeln!(out, "sigma,variant,m,px,py,pz,E,residual,weinberg_residual,passed")?;
            for r in &records {
                writeln!(
                    out,
                    "{},{},{},{},{},{},{},{:e},{:e},{}",
                    r.sigma,
                    r.variant,
                    r.m,
                    r.p[0],
                    r.p[1],
                    r.p[2],
                    r.energy,
                    r.residual,
                    r.weinberg_residual,
                    r.passed
                )?;
            }
            Ok(())
        })?,
    };
    emit(c.out.as_deref(), &bytes)?;
    Ok(records.iter().all(|r| r.passed))
}

#[derive(Serialize)]
struct SimRecord {
    seed: u64,
    #[serde(flatten)]
    diagnostics: Diagnostics,
}

fn simulate_cmd(c: &Common, a: &SimulateArgs) -> Outcome {
    let mut pairs = match &a.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| format!("reading {}: {e}", path.display()))?;
            fieldsim::parse_pairs(&text).map_err(|e| e.to_string())?
        }
        None => Vec::new(),
    };
    pairs.extend(a.overrides.iter().cloned());
    if let Some(s) = c.seed {
        pairs.push(("seed".into(), s.to_string()));
    }
    let cfg = SimConfig::from_pairs(pairs).map_err(|e| e.to_string())?;
    let initial = fieldsim::init(&cfg.grid, &cfg.mode).map_err(|e| e.to_string())?;
    let opts = RunOptions { system: cfg.system, ..RunOptions::new(cfg.steps, cfg.cadence) };
    let out = fieldsim::run_from(&cfg.grid, &initial, &opts).map_err(|e| e.to_string())?;

    let bytes = match c.format() {
        Format::Json => {
            let records: Vec<SimRecord> =
                out.series.iter().map(|&d| SimRecord { seed: cfg.seed, diagnostics: d }).collect();
            json(&records)?
        }
        Format::Csv => {
            let mut buf = Vec::new();
            seed_line(&mut buf, cfg.seed).map_err(|e| e.to_string())?;
            fieldsim::write_diagnostics_csv(&mut buf, &out.series).map_err(|e| e.to_string())?;
            buf
        }
    };
    emit(c.out.as_deref().or(cfg.diagnostics_out.as_deref()), &bytes)?;
    if let Some(path) = &cfg.snapshot_out {
        let mut buf = Vec::new();
        fieldsim::write_snapshot(&mut buf, &cfg.grid, &out.final_state).map_err(|e| e.to_string())?;
        emit(Some(path), &buf)?;
    }
    let finite = |d: &Diagnostics| {
        [d.norm, d.max_abs_chi, d.max_div_psi, d.res_constraint_e, d.res_constraint_b]
            .iter()
            .all(|x| x.is_finite())
    };
    Ok(out.series.iter().all(finite) && out.final_state.is_finite())
}
