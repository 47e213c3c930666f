use serde::{Deserialize, Serialize};

use super::{diagnostics, init, step_system, Diagnostics, FieldState, GridSpec, Mode, System};
use crate::clinalg::Complex;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RunOptions {
    pub steps: usize,
    pub cadence: usize,
    pub system: System,
    pub keep_snapshots: bool,
}

impl RunOptions {
    pub fn new(steps: usize, cadence: usize) -> Self {
        RunOptions { steps, cadence, system: System::Unprimed, keep_snapshots: false }
    }
}

/// Projection of the current state on the initial one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProbeSample {
    pub t: f64,
    /// `<u(0), u(t)> / <u(0), u(0)>`, zero for a vanishing initial state.
    pub overlap: Complex,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunOutput {
    /// Every `cadence` steps and after the last step.
    pub series: Vec<Diagnostics>,
    /// At `t = 0` and at every diagnostics time.
    pub probe: Vec<ProbeSample>,
    /// States at the diagnostics times when requested.
    pub snapshots: Vec<FieldState>,
    pub final_state: FieldState,
}

pub fn run(grid: &GridSpec, mode: &Mode, steps: usize, cadence: usize) -> Result<RunOutput> {
    let initial = init(grid, mode)?;
    run_from(grid, &initial, &RunOptions::new(steps, cadence))
}

pub fn run_from(grid: &GridSpec, initial: &FieldState, opts: &RunOptions) -> Result<RunOutput> {
    if opts.steps == 0 {
        return Err(Error::Domain("steps must be at least 1".into()));
    }
    if opts.cadence == 0 {
        return Err(Error::Domain("cadence must be at least 1".into()));
    }
    grid.validate()?;
    initial.check_grid(grid)?;
    let weight = initial.inner(initial).re;
    let probe_at = |s: &FieldState| ProbeSample {
        t: s.t,
        overlap: if weight > 0.0 { initial.inner(s) / weight } else { Complex::new(0.0, 0.0) },
    };

    let mut series = Vec::new();
    let mut probe = vec![probe_at(initial)];
    let mut snapshots = Vec::new();
    let mut state = initial.clone();
    for k in 1..=opts.steps {
        let next = step_system(&state, grid, opts.system)?;
        if k % opts.cadence == 0 || k == opts.steps {
            series.push(diagnostics(&next, &state, grid)?);
            probe.push(probe_at(&next));
            if opts.keep_snapshots {
                snapshots.push(next.clone());
            }
        }
        state = next;
    }
    Ok(RunOutput { series, probe, snapshots, final_state: state })
}

/// Angular frequency `omega` of a probe series `~ exp(-i omega t)`, from a
/// least-squares fit of the unwrapped phase.
pub fn probe_frequency(probe: &[ProbeSample]) -> Result<f64> {
    if probe.len() < 2 {
        return Err(Error::Domain("frequency fit needs at least two probe samples".into()));
    }
    if probe.iter().any(|s| s.overlap.norm() == 0.0) {
        return Err(Error::Domain("probe overlap vanishes; phase undefined".into()));
    }
    let mut pts = Vec::with_capacity(probe.len());
    let mut prev = probe[0].overlap.arg();
    let mut unwrapped = prev;
    for s in probe {
        let a = s.overlap.arg();
        let mut d = a - prev;
        d -= std::f64::consts::TAU * (d / std::f64::consts::TAU).round();
        unwrapped += if pts.is_empty() { 0.0 } else { d };
        prev = a;
        pts.push((s.t, unwrapped));
    }
    Ok(-crate::polarization::least_squares_slope(&pts))
}
