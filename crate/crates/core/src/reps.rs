//! Representation matrices: Pauli, spin-1, Dirac gammas in the chiral
//! basis, chiral projectors and Pauli-Lubanski components.
//!
//! Conventions: metric (+,-,-,-), natural units, plane waves
//! `exp(i(k.x - E t))` so that `E -> i d/dt` and `p -> -i grad`.
//!
//! Chiral basis: `gamma^0 = [[0, 1], [1, 0]]`, `gamma^i = [[0, sigma_i], [-sigma_i, 0]]`,
//! `gamma5 = diag(-1, -1, 1, 1)`. The upper two components are left-handed
//! (`P- = (1 - gamma5)/2`), the lower two right-handed.

use serde::{Deserialize, Serialize};

use crate::clinalg::{c64, real, Complex, ComplexMatrix, I, ONE, ZERO};
use crate::error::{Error, Result};

/// Levi-Civita symbol on 0-based indices.
pub fn levi_civita(i: usize, j: usize, k: usize) -> f64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
        _ => 0.0,
    }
}

/// Metric diagonal `g^{mu mu}`.
pub const METRIC: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

/// Spin of the generators used by Pauli-Lubanski and spin-s equations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Spin {
    Half,
    One,
}

impl Spin {
    pub fn value(self) -> f64 {
        match self {
            Spin::Half => 0.5,
            Spin::One => 1.0,
        }
    }

    /// Dimension `2s + 1` of the generators.
    pub fn dim(self) -> usize {
        match self {
            Spin::Half => 2,
            Spin::One => 3,
        }
    }

    /// Generator `S^i` for 1-based axis `i`: `sigma_i / 2` or the spin-1 matrix.
    pub fn generator(self, axis: usize) -> Result<ComplexMatrix> {
        match self {
            Spin::Half => Ok(pauli(axis)?.scale(real(0.5))),
            Spin::One => spin1(axis),
        }
    }

    pub fn generators(self) -> [ComplexMatrix; 3] {
        [1, 2, 3].map(|i| self.generator(i).expect("axis in range"))
    }

    /// Parse "1/2", "0.5", "1".
    pub fn parse(s: &str) -> Option<Spin> {
        match s.trim() {
            "1/2" | "0.5" | "half" => Some(Spin::Half),
            "1" | "1.0" | "one" => Some(Spin::One),
            _ => None,
        }
    }
}

/// Energy-momentum of a plane wave: real 3-momentum and (possibly complex)
/// energy `p^0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Momentum {
    pub p: [f64; 3],
    pub energy: Complex,
}

impl Momentum {
    pub fn new(energy: Complex, p: [f64; 3]) -> Self {
        Self { p, energy }
    }

    pub fn real(energy: f64, p: [f64; 3]) -> Self {
        Self { p, energy: real(energy) }
    }

    pub fn norm_sq(&self) -> f64 {
        self.p.iter().map(|x| x * x).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// `p_r = p_1 + i p_2`.
    pub fn p_r(&self) -> Complex {
        c64(self.p[0], self.p[1])
    }

    /// `p_l = p_1 - i p_2`.
    pub fn p_l(&self) -> Complex {
        c64(self.p[0], -self.p[1])
    }

    /// `p_mu p^mu = E^2 - |p|^2`.
    pub fn invariant(&self) -> Complex {
        self.energy * self.energy - self.norm_sq()
    }

    pub fn is_finite(&self) -> bool {
        self.p.iter().all(|x| x.is_finite()) && self.energy.re.is_finite() && self.energy.im.is_finite()
    }
}

fn check_axis(i: usize) -> Result<()> {
    if (1..=3).contains(&i) {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange { index: i, range: "1..=3" })
    }
}

/// Pauli matrix `sigma_i`, `i` in 1..=3.
pub fn pauli(i: usize) -> Result<ComplexMatrix> {
    check_axis(i)?;
    Ok(match i {
        1 => ComplexMatrix::from_rows(&[[ZERO, ONE], [ONE, ZERO]]),
        2 => ComplexMatrix::from_rows(&[[ZERO, -I], [I, ZERO]]),
        _ => ComplexMatrix::from_rows(&[[ONE, ZERO], [ZERO, -ONE]]),
    })
}

/// Spin-1 generator with `(S^i)_{jk} = -i eps_{ijk}`.
pub fn spin1(i: usize) -> Result<ComplexMatrix> {
    check_axis(i)?;
    let mut m = ComplexMatrix::zeros(3, 3);
    for j in 0..3 {
        for k in 0..3 {
            m[(j, k)] = c64(0.0, -levi_civita(i - 1, j, k));
        }
    }
    Ok(m)
}

/// `sum_i S^i p_i` for the given spin.
pub fn spin_dot(spin: Spin, p: [f64; 3]) -> ComplexMatrix {
    let gens = spin.generators();
    let mut acc = ComplexMatrix::zeros(spin.dim(), spin.dim());
    for (g, &pi) in gens.iter().zip(&p) {
        acc = acc + g * pi;
    }
    acc
}

/// `sigma . p`.
pub fn sigma_dot(p: [f64; 3]) -> ComplexMatrix {
    let mut acc = ComplexMatrix::zeros(2, 2);
    for (i, &pi) in p.iter().enumerate() {
        acc = acc + pauli(i + 1).expect("axis") * pi;
    }
    acc
}

/// Dirac matrix `gamma^mu`, chiral basis.
pub fn gamma(mu: usize) -> Result<ComplexMatrix> {
    let z = ComplexMatrix::zeros(2, 2);
    match mu {
        0 => {
            let one = ComplexMatrix::identity(2);
            ComplexMatrix::block2(&z, &one, &one, &z)
        }
        1..=3 => {
            let s = pauli(mu)?;
            ComplexMatrix::block2(&z, &s, &-&s, &z)
        }
        _ => Err(Error::IndexOutOfRange { index: mu, range: "0..=3" }),
    }
}

pub fn gammas() -> [ComplexMatrix; 4] {
    [0, 1, 2, 3].map(|mu| gamma(mu).expect("index in range"))
}

/// `gamma5 = i gamma^0 gamma^1 gamma^2 gamma^3`.
pub fn gamma5() -> ComplexMatrix {
    let [g0, g1, g2, g3] = gammas();
    (&(&(&g0 * &g1) * &g2) * &g3).scale(I)
}

/// Handedness selector for chiral projectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Chirality {
    /// `P- = (1 - gamma5)/2`
    Left,
    /// `P+ = (1 + gamma5)/2`
    Right,
}

pub fn chiral_projector(which: Chirality) -> ComplexMatrix {
    let sign = match which {
        Chirality::Left => -1.0,
        Chirality::Right => 1.0,
    };
    (ComplexMatrix::identity(4) + gamma5() * sign) * 0.5
}

/// `gamma^mu p_mu = gamma^0 E - gamma . p`.
pub fn slash(pm: &Momentum) -> ComplexMatrix {
    let g = gammas();
    let mut m = g[0].scale(pm.energy);
    for i in 0..3 {
        m = m - &g[i + 1] * pm.p[i];
    }
    m
}

/// Momentum-space Pauli-Lubanski components `W^0 .. W^3`.
#[derive(Debug, Clone)]
pub struct PauliLubanski {
    pub spin: Spin,
    pub momentum: Momentum,
    pub components: [ComplexMatrix; 4],
}

impl PauliLubanski {
    /// `W_mu W^mu`.
    pub fn square(&self) -> ComplexMatrix {
        let mut acc = ComplexMatrix::zeros(self.spin.dim(), self.spin.dim());
        for mu in 0..4 {
            acc = acc + (&self.components[mu] * &self.components[mu]) * METRIC[mu];
        }
        acc
    }

    /// `W^mu p_mu`.
    pub fn contract_momentum(&self) -> ComplexMatrix {
        let pm = &self.momentum;
        let mut acc = self.components[0].scale(pm.energy);
        for i in 0..3 {
            acc = acc - &self.components[i + 1] * pm.p[i];
        }
        acc
    }
}

/// `W^0 = S.p`, `W^i = p^0 S^i + i eps_{ijk} S^j p^k`.
pub fn pauli_lubanski(spin: Spin, pm: &Momentum) -> PauliLubanski {
    let s = spin.generators();
    let d = spin.dim();
    let w0 = spin_dot(spin, pm.p);
    let spatial: [ComplexMatrix; 3] = std::array::from_fn(|i| {
        let mut cross = ComplexMatrix::zeros(d, d);
        for j in 0..3 {
            for k in 0..3 {
                let e = levi_civita(i, j, k);
                if e != 0.0 {
                    cross = cross + &s[j] * (e * pm.p[k]);
                }
            }
        }
        s[i].scale(pm.energy) + cross.scale(I)
    });
    let [w1, w2, w3] = spatial;
    PauliLubanski { spin, momentum: *pm, components: [w0, w1, w2, w3] }
}
