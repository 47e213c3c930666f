//! Momentum-space operators of the equation families, their energy spectra
//! and plane-wave solution spinors.
//!
//! Every square family is written as a pencil `M(E, p) = E A - B(p)`, so the
//! dispersion branches are the eigenvalues of `A^-1 B`. The spin-s family is
//! an overdetermined stack (an evolution row plus subsidiary conditions)
//! and only supports kernel extraction.

use std::io::{self, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::clinalg::{
    determinant, fix_phase, hermitian_eigen, null_space, pencil_spectrum, real, Complex, ComplexMatrix,
    ComplexVector, ONE,
};
use crate::error::{Error, Result};
use crate::reps::{chiral_projector, gamma, gamma5, pauli_lubanski, spin_dot, Chirality, Momentum, Spin};

/// Relative singular-value threshold deciding that `M(E, p)` has a kernel.
pub const ON_SHELL_TOL: f64 = 1e-8;

/// Upper bound on the normalized determinant at a computed branch.
pub const BRANCH_RESIDUAL_LIMIT: f64 = 1e-8;

/// One of the wave-equation families, with its mass parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum EquationSpec {
    /// `gamma^0 E - gamma.p - (m2^2/m1) P- - m1 P+`.
    DiracTwoMass { m1: f64, m2: f64 },
    /// `gamma^0 E - gamma.p - m1 P+`.
    GeneralizedWeylR { m1: f64 },
    /// `gamma^0 E - gamma.p - m3 P-`.
    GeneralizedWeylL { m3: f64 },
    /// `gamma^0 E - gamma.p - B` for a user-supplied 4x4 mass matrix.
    ChiralMassMatrix { mass: ComplexMatrix },
    /// Spin-1 field coupled to a scalar: `[[E + S.p, -p], [p^T, -E]]` on `(Psi, chi)`.
    GerstenSpin1Chi,
    /// `(S.p - s E) Psi = 0` stacked with `(S E + i S x p - s p) Psi = 0`.
    SpinS { spin: Spin },
}

impl EquationSpec {
    pub fn name(&self) -> &'static str {
        match self {
            EquationSpec::DiracTwoMass { .. } => "dirac-two-mass",
            EquationSpec::GeneralizedWeylR { .. } => "weyl-r",
            EquationSpec::GeneralizedWeylL { .. } => "weyl-l",
            EquationSpec::ChiralMassMatrix { .. } => "chiral-mass",
            EquationSpec::GerstenSpin1Chi => "gersten-chi",
            EquationSpec::SpinS { .. } => "spin-s",
        }
    }

    pub fn validate(&self) -> Result<()> {
        let finite_nonneg = |name: &str, v: f64| {
            if v.is_finite() && v >= 0.0 {
                Ok(())
            } else {
                Err(Error::InvalidSpec(format!("{name} must be finite and non-negative, got {v}")))
            }
        };
        match self {
            EquationSpec::DiracTwoMass { m1, m2 } => {
                if !(m1.is_finite() && *m1 > 0.0) {
                    return Err(Error::InvalidSpec(format!("m1 must be positive, got {m1}")));
                }
                finite_nonneg("m2", *m2)
            }
            EquationSpec::GeneralizedWeylR { m1 } => finite_nonneg("m1", *m1),
            EquationSpec::GeneralizedWeylL { m3 } => finite_nonneg("m3", *m3),
            EquationSpec::ChiralMassMatrix { mass } => {
                if mass.rows() != 4 || mass.cols() != 4 {
                    return Err(Error::InvalidSpec(format!(
                        "mass matrix must be 4x4, got {}x{}",
                        mass.rows(),
                        mass.cols()
                    )));
                }
                if !mass.is_finite() {
                    return Err(Error::InvalidSpec("mass matrix has non-finite entries".into()));
                }
                Ok(())
            }
            EquationSpec::GerstenSpin1Chi | EquationSpec::SpinS { .. } => Ok(()),
        }
    }

    /// Number of unknowns of the plane-wave system.
    pub fn dim(&self) -> usize {
        match self {
            EquationSpec::SpinS { spin } => spin.dim(),
            _ => 4,
        }
    }

    /// Families acting on Dirac 4-spinors.
    pub fn is_spinor_family(&self) -> bool {
        matches!(
            self,
            EquationSpec::DiracTwoMass { .. }
                | EquationSpec::GeneralizedWeylR { .. }
                | EquationSpec::GeneralizedWeylL { .. }
                | EquationSpec::ChiralMassMatrix { .. }
        )
    }

    fn spinor_mass_term(&self) -> Option<ComplexMatrix> {
        let pl = || chiral_projector(Chirality::Left);
        let pr = || chiral_projector(Chirality::Right);
        match self {
            EquationSpec::DiracTwoMass { m1, m2 } => Some(pl() * (m2 * m2 / m1) + pr() * *m1),
            EquationSpec::GeneralizedWeylR { m1 } => Some(pr() * *m1),
            EquationSpec::GeneralizedWeylL { m3 } => Some(pl() * *m3),
            EquationSpec::ChiralMassMatrix { mass } => Some(mass.clone()),
            _ => None,
        }
    }
}

fn column(p: [f64; 3]) -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[[p[0]], [p[1]], [p[2]]])
}

/// The pencil `(A, B)` with `M(E, p) = E A - B`.
pub fn pencil(spec: &EquationSpec, p: [f64; 3]) -> Result<(ComplexMatrix, ComplexMatrix)> {
    spec.validate()?;
    if let Some(mass) = spec.spinor_mass_term() {
        let mut b = mass;
        for (i, &pi) in p.iter().enumerate() {
            b = b + gamma(i + 1)? * pi;
        }
        return Ok((gamma(0)?, b));
    }
    match spec {
        EquationSpec::GerstenSpin1Chi => {
            let a = ComplexMatrix::diag(&[ONE, ONE, ONE, -ONE]);
            let pc = column(p);
            let b = ComplexMatrix::block2(
                &-spin_dot(Spin::One, p),
                &pc,
                &-pc.transpose(),
                &ComplexMatrix::zeros(1, 1),
            )?;
            Ok((a, b))
        }
        EquationSpec::SpinS { .. } => Err(Error::NotSquarePencil("spin-s")),
        _ => unreachable!("spinor families handled above"),
    }
}

/// The linear-in-E operator whose kernel is the plane-wave solution space.
/// Square for every family except `SpinS`, which returns the `4(2s+1) x (2s+1)`
/// stacked system.
pub fn momentum_operator(spec: &EquationSpec, energy: Complex, p: [f64; 3]) -> Result<ComplexMatrix> {
    spec.validate()?;
    if let EquationSpec::SpinS { spin } = spec {
        let pm = Momentum::new(energy, p);
        let w = pauli_lubanski(*spin, &pm);
        let s = spin.value();
        let id = ComplexMatrix::identity(spin.dim());
        let pmu = [energy, real(p[0]), real(p[1]), real(p[2])];
        let rows: Vec<ComplexMatrix> = (0..4).map(|mu| &w.components[mu] - &id.scale(pmu[mu] * s)).collect();
        let refs: Vec<&ComplexMatrix> = rows.iter().collect();
        return ComplexMatrix::vstack(&refs);
    }
    let (a, b) = pencil(spec, p)?;
    Ok(a.scale(energy) - b)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DispersionResult {
    pub momentum: [f64; 3],
    /// Ascending by real part, then imaginary part.
    pub branches: Vec<Complex>,
    /// Largest `|det M(E_branch)| / |M|_F^n` over the branches.
    pub residual: f64,
}

pub fn spectrum(spec: &EquationSpec, p: [f64; 3]) -> Result<DispersionResult> {
    if p.iter().any(|x| !x.is_finite()) {
        return Err(Error::Domain(format!("non-finite momentum {p:?}")));
    }
    let (a, b) = pencil(spec, p)?;
    let branches = pencil_spectrum(&a, &b)?;
    let n = a.rows() as i32;
    let mut residual: f64 = 0.0;
    for &e in &branches {
        let m = a.scale(e) - &b;
        let scale = m.frobenius().powi(n);
        let det = determinant(&m)?.norm();
        residual = residual.max(if scale > 0.0 { det / scale } else { 0.0 });
    }
    Ok(DispersionResult { momentum: p, branches, residual })
}

/// Spectra at many momenta, in input order.
pub fn sweep(spec: &EquationSpec, momenta: &[[f64; 3]]) -> Result<Vec<DispersionResult>> {
    momenta.par_iter().map(|&p| spectrum(spec, p)).collect()
}

/// True when every branch at every sample obeys `|E^2 - |p|^2| < tol (1 + |p|^2)`.
pub fn is_massless(spec: &EquationSpec, sample_momenta: &[[f64; 3]], tol: f64) -> Result<bool> {
    if sample_momenta.is_empty() {
        return Err(Error::Domain("is_massless needs at least one momentum".into()));
    }
    for r in sweep(spec, sample_momenta)? {
        let p2: f64 = r.momentum.iter().map(|x| x * x).sum();
        if r.branches.iter().any(|e| (e * e - p2).norm() >= tol * (1.0 + p2)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Orthonormal kernel of `M(E, p)`.
///
/// For the 4-spinor families the basis is rotated to diagonalize `gamma5`
/// inside the kernel, so each returned vector has extremal chirality. Each
/// vector's first significant component is real and positive.
pub fn solution_space(spec: &EquationSpec, energy: Complex, p: [f64; 3]) -> Result<Vec<ComplexVector>> {
    let m = momentum_operator(spec, energy, p)?;
    let kernel = null_space(&m, ON_SHELL_TOL)?;
    if kernel.is_empty() {
        return Err(Error::OffShell { energy: format!("{energy}") });
    }
    if !spec.is_spinor_family() || kernel.len() < 2 {
        return Ok(kernel);
    }
    let k = kernel.len();
    let g5 = gamma5();
    let mut basis = ComplexMatrix::zeros(4, k);
    for (j, v) in kernel.iter().enumerate() {
        for i in 0..4 {
            basis[(i, j)] = v[i];
        }
    }
    let restricted = &(&basis.adjoint() * &g5) * &basis;
    let eig = hermitian_eigen(&restricted)?;
    let rotated = &basis * &eig.vectors;
    Ok((0..k)
        .map(|j| {
            let mut v = rotated.column(j);
            fix_phase(&mut v);
            v
        })
        .collect())
}

/// Left/right weights `|P- psi|^2 / |psi|^2`, `|P+ psi|^2 / |psi|^2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChiralContent {
    pub left_weight: f64,
    pub right_weight: f64,
}

impl ChiralContent {
    /// `min(left, right)`: zero for a chirality eigenstate.
    pub fn mixing(&self) -> f64 {
        self.left_weight.min(self.right_weight)
    }
}

pub fn chiral_content(psi: &ComplexVector) -> Result<ChiralContent> {
    if psi.dim() != 4 {
        return Err(Error::Dimension(format!("expected a 4-spinor, got {} components", psi.dim())));
    }
    let total = psi.norm().powi(2);
    if total == 0.0 {
        return Err(Error::Domain("chiral content of the zero spinor".into()));
    }
    let left = (&chiral_projector(Chirality::Left) * psi).norm().powi(2) / total;
    let right = (&chiral_projector(Chirality::Right) * psi).norm().powi(2) / total;
    Ok(ChiralContent { left_weight: left, right_weight: right })
}

/// Largest chiral mixing among the solution spinors at `(E, p)`.
pub fn solution_mixing(spec: &EquationSpec, energy: Complex, p: [f64; 3]) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for v in solution_space(spec, energy, p)? {
        worst = worst.max(chiral_content(&v)?.mixing());
    }
    Ok(worst)
}

pub const DISPERSION_CSV_HEADER: &str = "kx,ky,kz,branch_index,re_E,im_E,residual";

/// CSV rows `kx,ky,kz,branch_index,re_E,im_E,residual`, one per branch.
pub fn write_dispersion_csv<W: Write>(out: &mut W, results: &[DispersionResult]) -> io::Result<()> {
    writeln!(out, "{DISPERSION_CSV_HEADER}")?;
    for r in results {
        for (i, e) in r.branches.iter().enumerate() {
            let [kx, ky, kz] = r.momentum;
            writeln!(out, "{kx},{ky},{kz},{i},{},{},{}", e.re, e.im, r.residual)?;
        }
    }
    Ok(())
}
