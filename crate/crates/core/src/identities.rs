//! Randomized residual checks of the operator identities behind the
//! Dirac, spin-1 and Pauli-Lubanski factorizations.
//!
//! A residual is the largest entry modulus of the matrix that should vanish.

use serde::{Deserialize, Serialize};

use crate::clinalg::{real, Complex, ComplexMatrix, ComplexVector};
use crate::error::{Error, Result};
use crate::reps::{gamma5, gammas, pauli_lubanski, sigma_dot, slash, spin_dot, Momentum, Spin, METRIC};
use crate::sampling::{self, SeededRng};

/// Magnitude bound on sampled energies, momenta and masses.
pub const SAMPLE_SCALE: f64 = 10.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub name: String,
    pub samples: usize,
    pub seed: u64,
    pub tolerance: f64,
    pub max_residual: f64,
    pub passed: bool,
}

impl IdentityReport {
    fn new(name: impl Into<String>, samples: usize, seed: u64, tolerance: f64, max_residual: f64) -> Self {
        Self { name: name.into(), samples, seed, tolerance, max_residual, passed: max_residual < tolerance }
    }
}

fn run(
    name: impl Into<String>,
    samples: usize,
    seed: u64,
    tol: f64,
    mut residual: impl FnMut(&mut SeededRng) -> f64,
) -> Result<IdentityReport> {
    if samples == 0 {
        return Err(Error::Domain("at least one sample is required".into()));
    }
    let mut rng = sampling::rng(seed);
    let max = (0..samples).map(|_| residual(&mut rng)).fold(0.0, f64::max);
    Ok(IdentityReport::new(name, samples, seed, tol, max))
}

fn random_momentum(rng: &mut SeededRng) -> Momentum {
    let e = sampling::uniform(rng, -SAMPLE_SCALE, SAMPLE_SCALE);
    Momentum::real(e, sampling::vector_in_ball(rng, SAMPLE_SCALE))
}

/// `(E - sigma.p)(E + sigma.p) - (E^2 - |p|^2) I`.
pub fn kg_residual(pm: &Momentum) -> f64 {
    let sp = sigma_dot(pm.p);
    let e = ComplexMatrix::identity(2).scale(pm.energy);
    let lhs = &(&e - &sp) * &(&e + &sp);
    (lhs - ComplexMatrix::identity(2).scale(pm.invariant())).max_abs()
}

/// `(E - S.p)(E + S.p) - p p^T - (E^2 - |p|^2) I` for spin 1.
pub fn gersten_residual(pm: &Momentum) -> f64 {
    let sp = spin_dot(Spin::One, pm.p);
    let e = ComplexMatrix::identity(3).scale(pm.energy);
    let lhs = &(&e - &sp) * &(&e + &sp);
    let mut ppt = ComplexMatrix::zeros(3, 3);
    for i in 0..3 {
        for j in 0..3 {
            ppt[(i, j)] = real(pm.p[i] * pm.p[j]);
        }
    }
    (lhs - ppt - ComplexMatrix::identity(3).scale(pm.invariant())).max_abs()
}

/// `sum_mu g_mu (W^mu - s p^mu)(W^mu + s p^mu) + s(2s+1) p.p I`.
pub fn pl_factorization_residual(spin: Spin, pm: &Momentum) -> f64 {
    let w = pauli_lubanski(spin, pm);
    let s = spin.value();
    let d = spin.dim();
    let id = ComplexMatrix::identity(d);
    let pmu = [pm.energy, real(pm.p[0]), real(pm.p[1]), real(pm.p[2])];
    let mut acc = id.scale(pm.invariant() * (s * (2.0 * s + 1.0)));
    for mu in 0..4 {
        let minus = &w.components[mu] - &id.scale(pmu[mu] * s);
        let plus = &w.components[mu] + &id.scale(pmu[mu] * s);
        acc = acc + (&minus * &plus) * METRIC[mu];
    }
    acc.max_abs()
}

/// `W^mu p_mu`, which vanishes for any `p^0`.
pub fn pl_transversality_residual(spin: Spin, pm: &Momentum) -> f64 {
    pauli_lubanski(spin, pm).contract_momentum().max_abs()
}

/// `W_mu W^mu + s(s+1) p.p I`.
pub fn pl_casimir_residual(spin: Spin, pm: &Momentum) -> f64 {
    let s = spin.value();
    let w = pauli_lubanski(spin, pm);
    (w.square() + ComplexMatrix::identity(spin.dim()).scale(pm.invariant() * (s * (s + 1.0)))).max_abs()
}

/// `(sigma.p)^2 - |p|^2 I`.
pub fn sigma_square_residual(p: [f64; 3]) -> f64 {
    let sp = sigma_dot(p);
    let p2: f64 = p.iter().map(|x| x * x).sum();
    (&sp * &sp - ComplexMatrix::identity(2) * p2).max_abs()
}

/// `(S.p)^3 - |p|^2 (S.p)` for spin 1.
pub fn spin1_cubic_residual(p: [f64; 3]) -> f64 {
    let sp = spin_dot(Spin::One, p);
    let p2: f64 = p.iter().map(|x| x * x).sum();
    (sp.pow(3) - &sp * p2).max_abs()
}

/// Largest violation of `{gamma^mu, gamma^nu} = 2 g^{mu nu}`.
pub fn clifford_residual() -> f64 {
    let g = gammas();
    let mut worst: f64 = 0.0;
    for mu in 0..4 {
        for nu in 0..4 {
            let mut r = g[mu].anticommutator(&g[nu]);
            if mu == nu {
                r = r - ComplexMatrix::identity(4) * (2.0 * METRIC[mu]);
            }
            worst = worst.max(r.max_abs());
        }
    }
    worst
}

/// Largest violation of `[S^i, S^j] = i eps_{ijk} S^k`.
pub fn spin_algebra_residual(spin: Spin) -> f64 {
    let s = spin.generators();
    let mut worst: f64 = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            let mut r = s[i].commutator(&s[j]);
            for (k, sk) in s.iter().enumerate() {
                let e = crate::reps::levi_civita(i, j, k);
                if e != 0.0 {
                    r = r - sk.scale(Complex::new(0.0, e));
                }
            }
            worst = worst.max(r.max_abs());
        }
    }
    worst
}

pub fn check_kg_factorization(samples: usize, tol: f64, seed: u64) -> Result<IdentityReport> {
    run("kg_factorization", samples, seed, tol, |rng| kg_residual(&random_momentum(rng)))
}

pub fn check_gersten_decomposition(samples: usize, tol: f64, seed: u64) -> Result<IdentityReport> {
    run("gersten_decomposition", samples, seed, tol, |rng| gersten_residual(&random_momentum(rng)))
}

pub fn check_pl_factorization(spin: Spin, samples: usize, tol: f64, seed: u64) -> Result<IdentityReport> {
    run(format!("pl_factorization_{}", spin_tag(spin)), samples, seed, tol, |rng| {
        pl_factorization_residual(spin, &random_momentum(rng))
    })
}

pub fn check_pl_transversality(spin: Spin, samples: usize, tol: f64, seed: u64) -> Result<IdentityReport> {
    run(format!("pl_transversality_{}", spin_tag(spin)), samples, seed, tol, |rng| {
        pl_transversality_residual(spin, &random_momentum(rng))
    })
}

pub fn check_pl_casimir(spin: Spin, samples: usize, tol: f64, seed: u64) -> Result<IdentityReport> {
    run(format!("pl_casimir_{}", spin_tag(spin)), samples, seed, tol, |rng| {
        pl_casimir_residual(spin, &random_momentum(rng))
    })
}

pub fn check_sigma_square(samples: usize, tol: f64, seed: u64) -> Result<IdentityReport> {
    run("sigma_dot_p_squared", samples, seed, tol, |rng| {
        sigma_square_residual(sampling::vector_in_ball(rng, SAMPLE_SCALE))
    })
}

pub fn check_spin1_cubic(samples: usize, tol: f64, seed: u64) -> Result<IdentityReport> {
    run("spin1_dot_p_cubed", samples, seed, tol, |rng| {
        spin1_cubic_residual(sampling::vector_in_ball(rng, SAMPLE_SCALE))
    })
}

fn spin_tag(spin: Spin) -> &'static str {
    match spin {
        Spin::Half => "s1_2",
        Spin::One => "s1",
    }
}

/// Every identity check, in a fixed order.
pub fn full_suite(samples: usize, tol: f64, seed: u64) -> Result<Vec<IdentityReport>> {
    let mut out =
        vec![check_kg_factorization(samples, tol, seed)?, check_gersten_decomposition(samples, tol, seed)?];
    for spin in [Spin::Half, Spin::One] {
        out.push(check_pl_factorization(spin, samples, tol, seed)?);
        out.push(check_pl_transversality(spin, samples, tol, seed)?);
        out.push(check_pl_casimir(spin, samples, tol, seed)?);
    }
    out.push(check_sigma_square(samples, tol, seed)?);
    out.push(check_spin1_cubic(samples, tol, seed)?);
    out.push(IdentityReport::new("clifford_anticommutator", 1, seed, tol, clifford_residual()));
    for spin in [Spin::Half, Spin::One] {
        out.push(IdentityReport::new(
            format!("spin_commutator_{}", spin_tag(spin)),
            1,
            seed,
            tol,
            spin_algebra_residual(spin),
        ));
    }
    Ok(out)
}

/// Frobenius norm of `[gamma^mu p_mu, gamma5]`. Equals `4 sqrt(|E|^2 + |p|^2)`
/// in this basis, so it vanishes only for `p^mu = 0`.
pub fn check_chirality_commutator(pm: &Momentum) -> f64 {
    slash(pm).commutator(&gamma5()).frobenius()
}

/// Momentum-space density `-c psi^dag (E/c + S.p) psi` with `c = 1`.
pub fn gersten_lagrangian_density(pm: &Momentum, psi: &ComplexVector) -> Result<Complex> {
    if psi.dim() != 3 {
        return Err(Error::Dimension(format!("expected a 3-component field, got {}", psi.dim())));
    }
    let op = ComplexMatrix::identity(3).scale(pm.energy) + spin_dot(Spin::One, pm.p);
    Ok(-psi.dot(&(&op * psi)))
}
