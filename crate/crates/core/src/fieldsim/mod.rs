//! Time-domain evolution of the chi-coupled Maxwell system
//!
//! ```text
//! dPsi/dt =  s i c curl Psi - c grad chi
//! dchi/dt = -c div Psi
//! ```
//!
//! on a periodic collocated grid, with `Psi = E - iB`. The unprimed system
//! (`s = +1`) reproduces the Maxwell equations for `E - iB`; the primed
//! system (`s = -1`) governs the conjugate fields `(Psi*, chi*)`.
//!
//! Time stepping is classical RK4, space uses centered differences of order
//! 4 or 6. Every grid point is updated independently inside a stage, so the
//! result does not depend on the rayon pool size.

mod config;
mod diagnostics;
mod run;
mod snapshot;
mod stencil;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::clinalg::{Complex, I, ONE, ZERO};
use crate::error::{Error, Result};

pub use config::{parse_pairs, SimConfig, CONFIG_KEYS};
pub use diagnostics::{diagnostics, write_diagnostics_csv, Diagnostics, DIAGNOSTICS_CSV_HEADER};
pub use run::{probe_frequency, run, run_from, ProbeSample, RunOptions, RunOutput};
pub use snapshot::{read_snapshot, write_snapshot, Snapshot, SNAPSHOT_COLUMNS, SNAPSHOT_VERSION};

/// Largest allowed `c dt / dx`.
pub const MAX_COURANT: f64 = 0.5;
pub const MIN_POINTS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Dimensionality {
    /// `1 x 1 x n`, fields vary along z only.
    One,
    /// `n x n x n`.
    Three,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StencilOrder {
    Fourth,
    Sixth,
}

impl StencilOrder {
    pub fn order(self) -> usize {
        match self {
            StencilOrder::Fourth => 4,
            StencilOrder::Sixth => 6,
        }
    }

    pub fn from_order(order: usize) -> Result<Self> {
        match order {
            4 => Ok(StencilOrder::Fourth),
            6 => Ok(StencilOrder::Sixth),
            other => Err(Error::Domain(format!("unsupported stencil order {other}; use 4 or 6"))),
        }
    }

    /// Antisymmetric weights `a_j`: `f' ~ sum_j a_j (f(x+jh) - f(x-jh)) / h`.
    pub(crate) fn weights(self) -> &'static [f64] {
        match self {
            StencilOrder::Fourth => &[2.0 / 3.0, -1.0 / 12.0],
            StencilOrder::Sixth => &[3.0 / 4.0, -3.0 / 20.0, 1.0 / 60.0],
        }
    }
}

/// Sign of the curl term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum System {
    /// `Psi = E - iB`.
    Unprimed,
    /// `Psi' = E + iB`, `chi' = chi*`.
    Primed,
}

impl System {
    pub fn curl_sign(self) -> f64 {
        match self {
            System::Unprimed => 1.0,
            System::Primed => -1.0,
        }
    }

    pub fn mirror(self) -> Self {
        match self {
            System::Unprimed => System::Primed,
            System::Primed => System::Unprimed,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub dims: Dimensionality,
    pub n: usize,
    pub length: f64,
    pub dt: f64,
    pub c: f64,
    pub order: StencilOrder,
}

impl GridSpec {
    /// Sixth-order stencil by default.
    pub fn new(dims: Dimensionality, n: usize, length: f64, dt: f64, c: f64) -> Result<Self> {
        let grid = GridSpec { dims, n, length, dt, c, order: StencilOrder::Sixth };
        grid.validate()?;
        Ok(grid)
    }

    /// `dt = cfl * dx / c`.
    pub fn from_cfl(dims: Dimensionality, n: usize, length: f64, cfl: f64, c: f64) -> Result<Self> {
        if !(cfl.is_finite() && cfl > 0.0) {
            return Err(Error::Domain(format!("cfl must be positive, got {cfl}")));
        }
        if n == 0 {
            return Err(Error::Domain("n must be positive".into()));
        }
        Self::new(dims, n, length, cfl * length / n as f64 / c, c)
    }

    pub fn with_order(mut self, order: StencilOrder) -> Self {
        self.order = order;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < MIN_POINTS {
            return Err(Error::Domain(format!("n = {} is below the minimum {MIN_POINTS}", self.n)));
        }
        for (name, v) in [("L", self.length), ("dt", self.dt), ("c", self.c)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Domain(format!("{name} must be positive and finite, got {v}")));
            }
        }
        let courant = self.courant();
        if courant > MAX_COURANT * (1.0 + 1e-12) {
            return Err(Error::Cfl { courant, limit: MAX_COURANT });
        }
        Ok(())
    }

    pub fn spacing(&self) -> f64 {
        self.length / self.n as f64
    }

    pub fn courant(&self) -> f64 {
        self.c * self.dt / self.spacing()
    }

    /// Points along x, y, z.
    pub fn shape(&self) -> [usize; 3] {
        match self.dims {
            Dimensionality::One => [1, 1, self.n],
            Dimensionality::Three => [self.n; 3],
        }
    }

    pub fn points(&self) -> usize {
        self.shape().iter().product()
    }

    /// Volume element of the norm integral (length in 1D).
    pub fn cell_volume(&self) -> f64 {
        match self.dims {
            Dimensionality::One => self.spacing(),
            Dimensionality::Three => self.spacing().powi(3),
        }
    }

    pub fn position(&self, index: usize) -> [f64; 3] {
        let [_, ny, nz] = self.shape();
        let h = self.spacing();
        let (ix, rest) = (index / (ny * nz), index % (ny * nz));
        [ix as f64 * h, (rest / nz) as f64 * h, (rest % nz) as f64 * h]
    }

    /// `2 pi m / L` per component.
    pub fn lattice_wavevector(&self, k_index: [i64; 3]) -> [f64; 3] {
        k_index.map(|m| 2.0 * std::f64::consts::PI * m as f64 / self.length)
    }

    /// Checks that `k` is a lattice wave vector that the grid resolves.
    pub fn check_commensurate(&self, k: [f64; 3]) -> Result<()> {
        for (component, &value) in k.iter().enumerate() {
            let m = value * self.length / (2.0 * std::f64::consts::PI);
            let off_axis = self.dims == Dimensionality::One && component < 2;
            if !m.is_finite()
                || (m - m.round()).abs() > 1e-9 * m.abs().max(1.0)
                || (off_axis && m.round() != 0.0)
            {
                return Err(Error::Incommensurate { component, value });
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldState {
    pub psi: Vec<[Complex; 3]>,
    pub chi: Vec<Complex>,
    pub t: f64,
}

impl FieldState {
    pub fn zeros(grid: &GridSpec) -> Self {
        let n = grid.points();
        FieldState { psi: vec![[ZERO; 3]; n], chi: vec![ZERO; n], t: 0.0 }
    }

    pub fn len(&self) -> usize {
        self.chi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chi.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        let ok = |z: &Complex| z.re.is_finite() && z.im.is_finite();
        self.t.is_finite() && self.chi.iter().all(ok) && self.psi.iter().flatten().all(ok)
    }

    pub fn check_grid(&self, grid: &GridSpec) -> Result<()> {
        let n = grid.points();
        if self.psi.len() != n || self.chi.len() != n {
            return Err(Error::GridMismatch(format!(
                "state has {} / {} points, grid has {n}",
                self.psi.len(),
                self.chi.len()
            )));
        }
        Ok(())
    }

    /// Largest pointwise difference over all five components.
    pub fn max_abs_diff(&self, other: &FieldState) -> f64 {
        let psi =
            self.psi.iter().zip(&other.psi).flat_map(|(a, b)| (0..3).map(move |c| (a[c] - b[c]).norm()));
        let chi = self.chi.iter().zip(&other.chi).map(|(a, b)| (a - b).norm());
        psi.chain(chi).fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.psi.iter().flatten().chain(&self.chi).map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `<self, other>` summed in index order, without the volume element.
    pub fn inner(&self, other: &FieldState) -> Complex {
        let mut acc = ZERO;
        for i in 0..self.len() {
            for c in 0..3 {
                acc += self.psi[i][c].conj() * other.psi[i][c];
            }
            acc += self.chi[i].conj() * other.chi[i];
        }
        acc
    }

    pub fn scaled(&self, s: Complex) -> FieldState {
        FieldState {
            psi: self.psi.iter().map(|p| p.map(|z| z * s)).collect(),
            chi: self.chi.iter().map(|z| z * s).collect(),
            t: self.t,
        }
    }

    pub(crate) fn pack(&self) -> Vec<[Complex; 4]> {
        self.psi.iter().zip(&self.chi).map(|(p, &x)| [p[0], p[1], p[2], x]).collect()
    }

    pub(crate) fn unpack(packed: &[[Complex; 4]], t: f64) -> Self {
        FieldState {
            psi: packed.iter().map(|u| [u[0], u[1], u[2]]).collect(),
            chi: packed.iter().map(|u| u[3]).collect(),
            t,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum WaveHelicity {
    Plus,
    Minus,
}

impl WaveHelicity {
    pub fn sign(self) -> f64 {
        match self {
            WaveHelicity::Plus => 1.0,
            WaveHelicity::Minus => -1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PulseParams {
    /// Center as fractions of L.
    pub center: [f64; 3],
    pub width: f64,
    pub psi_amplitude: [Complex; 3],
    pub chi_amplitude: Complex,
}

impl PulseParams {
    /// Longitudinally polarized pulse along z at the box center; its
    /// divergence is nonzero so it sources chi.
    pub fn longitudinal(width: f64) -> Self {
        PulseParams { center: [0.5; 3], width, psi_amplitude: [ZERO, ZERO, ONE], chi_amplitude: ZERO }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Mode {
    Zero,
    /// `Psi = (e1 + i h e2) exp(ik.x)`, `chi = 0`, with `(e1, e2, k)` right handed.
    TransversePlaneWave {
        k: [f64; 3],
        helicity: WaveHelicity,
    },
    /// `Psi = k/|k| exp(ik.x)`, `chi = exp(ik.x)`.
    LongitudinalScalarWave {
        k: [f64; 3],
    },
    GaussianPulse(PulseParams),
}

impl Mode {
    /// Angular frequency `omega` of a plane-wave mode under `system`, with
    /// time dependence `exp(-i omega t)`.
    pub fn angular_frequency(&self, c: f64, system: System) -> Option<f64> {
        match *self {
            Mode::TransversePlaneWave { k, helicity } => {
                Some(-helicity.sign() * system.curl_sign() * c * norm3(k))
            }
            Mode::LongitudinalScalarWave { k } => Some(c * norm3(k)),
            Mode::Zero | Mode::GaussianPulse(_) => None,
        }
    }

    /// Complex amplitude `(Psi, chi)` of a plane-wave mode.
    pub fn plane_wave_amplitude(&self) -> Result<Option<([Complex; 3], Complex)>> {
        match *self {
            Mode::TransversePlaneWave { k, helicity } => {
                let (e1, e2) = transverse_basis(k)?;
                let s = helicity.sign();
                Ok(Some((std::array::from_fn(|i| Complex::new(e1[i], s * e2[i])), ZERO)))
            }
            Mode::LongitudinalScalarWave { k } => {
                let n = norm3(k);
                if n == 0.0 {
                    return Err(Error::Domain("longitudinal wave needs k != 0".into()));
                }
                Ok(Some((k.map(|x| Complex::new(x / n, 0.0)), ONE)))
            }
            Mode::Zero | Mode::GaussianPulse(_) => Ok(None),
        }
    }
}

fn norm3(v: [f64; 3]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

/// Orthonormal `(e1, e2)` with `e1 x e2 = k/|k|`; `e1 = x` for `k` along z.
fn transverse_basis(k: [f64; 3]) -> Result<([f64; 3], [f64; 3])> {
    let n = norm3(k);
    if n == 0.0 {
        return Err(Error::Domain("transverse wave needs k != 0".into()));
    }
    let khat = k.map(|x| x / n);
    let mut e1 = cross([0.0, 1.0, 0.0], khat);
    if norm3(e1) < 1e-8 {
        e1 = cross([0.0, 0.0, 1.0], khat);
    }
    let m = norm3(e1);
    let e1 = e1.map(|x| x / m);
    Ok((e1, cross(khat, e1)))
}

/// Samples the initial data of `mode` at `t = 0`.
pub fn init(grid: &GridSpec, mode: &Mode) -> Result<FieldState> {
    grid.validate()?;
    let mut state = FieldState::zeros(grid);
    match mode {
        Mode::Zero => {}
        Mode::TransversePlaneWave { k, .. } | Mode::LongitudinalScalarWave { k } => {
            grid.check_commensurate(*k)?;
            let (psi0, chi0) = mode.plane_wave_amplitude()?.expect("plane-wave mode");
            for i in 0..grid.points() {
                let x = grid.position(i);
                let phase = (I * (k[0] * x[0] + k[1] * x[1] + k[2] * x[2])).exp();
                state.psi[i] = psi0.map(|z| z * phase);
                state.chi[i] = chi0 * phase;
            }
        }
        Mode::GaussianPulse(p) => {
            if !(p.width.is_finite() && p.width > 0.0) {
                return Err(Error::Domain(format!("pulse width must be positive, got {}", p.width)));
            }
            let l = grid.length;
            let active: [bool; 3] = match grid.dims {
                Dimensionality::One => [false, false, true],
                Dimensionality::Three => [true; 3],
            };
            for i in 0..grid.points() {
                let x = grid.position(i);
                let mut r2 = 0.0;
                for a in (0..3).filter(|&a| active[a]) {
                    // minimum-image distance keeps the pulse periodic
                    let d = x[a] - p.center[a] * l;
                    let d = d - l * (d / l).round();
                    r2 += d * d;
                }
                let g = (-r2 / (2.0 * p.width * p.width)).exp();
                state.psi[i] = p.psi_amplitude.map(|z| z * g);
                state.chi[i] = p.chi_amplitude * g;
            }
        }
    }
    Ok(state)
}

/// One RK4 step of the unprimed system.
pub fn step(state: &FieldState, grid: &GridSpec) -> Result<FieldState> {
    step_system(state, grid, System::Unprimed)
}

pub fn step_system(state: &FieldState, grid: &GridSpec, system: System) -> Result<FieldState> {
    grid.validate()?;
    state.check_grid(grid)?;
    let ops = stencil::Stencil::new(grid);
    let u = state.pack();
    let dt = grid.dt;
    let rhs = |v: &[[Complex; 4]]| ops.rhs(v, system);
    let axpy = |base: &[[Complex; 4]], k: &[[Complex; 4]], h: f64| -> Vec<[Complex; 4]> {
        base.par_iter().zip(k).map(|(b, d)| std::array::from_fn(|c| b[c] + d[c] * h)).collect()
    };
    let k1 = rhs(&u);
    let k2 = rhs(&axpy(&u, &k1, dt / 2.0));
    let k3 = rhs(&axpy(&u, &k2, dt / 2.0));
    let k4 = rhs(&axpy(&u, &k3, dt));
    let next: Vec<[Complex; 4]> = (0..u.len())
        .into_par_iter()
        .map(|i| {
            std::array::from_fn(|c| {
                u[i][c] + (k1[i][c] + (k2[i][c] + k3[i][c]) * 2.0 + k4[i][c]) * (dt / 6.0)
            })
        })
        .collect();
    Ok(FieldState::unpack(&next, state.t + dt))
}

/// `(Psi*, chi*)`: maps solutions of one system onto the other.
pub fn conjugate_map(state: &FieldState) -> FieldState {
    FieldState {
        psi: state.psi.iter().map(|p| p.map(|z| z.conj())).collect(),
        chi: state.chi.iter().map(|z| z.conj()).collect(),
        t: state.t,
    }
}

/// Continuum solution of a plane-wave mode at time `t`, sampled on the grid.
pub fn exact_plane_wave(grid: &GridSpec, mode: &Mode, system: System, t: f64) -> Result<FieldState> {
    let omega = mode
        .angular_frequency(grid.c, system)
        .ok_or_else(|| Error::Domain("exact solution exists only for plane-wave modes".into()))?;
    let mut out = init(grid, mode)?.scaled((-I * omega * t).exp());
    out.t = t;
    Ok(out)
}
