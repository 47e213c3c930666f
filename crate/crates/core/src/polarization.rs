//! Polarization 4-vectors of the (1/2,1/2) representation, the Lorentz
//! condition, massless-limit scans and plane-wave residuals of the Proca-like
//! and Weinberg field equations.
//!
//! Plane waves are `exp(-i p.x)` with `p^mu = (E, p)`, so `d_mu -> -i p_mu`.

use std::fmt;
use std::io::{self, Write};
use std::ops::{Add, Index, Mul, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::clinalg::{real, Complex, I, ZERO};
use crate::error::{Error, Result};
use crate::reps::METRIC;

/// Contravariant 4-vector with complex components.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FourVector(pub [Complex; 4]);

impl FourVector {
    pub const ZERO: FourVector = FourVector([ZERO; 4]);

    /// `p^mu = (E, p)`.
    pub fn momentum(energy: Complex, p: [f64; 3]) -> Self {
        FourVector([energy, real(p[0]), real(p[1]), real(p[2])])
    }

    pub fn lower(&self) -> Self {
        FourVector(std::array::from_fn(|mu| self.0[mu] * METRIC[mu]))
    }

    /// Bilinear `a_mu b^mu`, no complex conjugation.
    pub fn minkowski_dot(&self, other: &Self) -> Complex {
        (0..4).map(|mu| self.0[mu] * other.0[mu] * METRIC[mu]).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn scale(&self, s: Complex) -> Self {
        FourVector(self.0.map(|z| z * s))
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

impl Index<usize> for FourVector {
    type Output = Complex;
    fn index(&self, mu: usize) -> &Complex {
        &self.0[mu]
    }
}

impl Add for FourVector {
    type Output = FourVector;
    fn add(self, rhs: Self) -> Self {
        FourVector(std::array::from_fn(|mu| self.0[mu] + rhs.0[mu]))
    }
}

impl Sub for FourVector {
    type Output = FourVector;
    fn sub(self, rhs: Self) -> Self {
        FourVector(std::array::from_fn(|mu| self.0[mu] - rhs.0[mu]))
    }
}

impl Mul<f64> for FourVector {
    type Output = FourVector;
    fn mul(self, s: f64) -> Self {
        FourVector(self.0.map(|z| z * s))
    }
}

/// Helicity label of a (1/2,1/2) state. `TimeLike` is the fourth state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Helicity {
    Plus,
    Minus,
    Zero,
    TimeLike,
}

impl Helicity {
    pub const ALL: [Helicity; 4] = [Helicity::Plus, Helicity::Minus, Helicity::Zero, Helicity::TimeLike];

    pub fn label(self) -> &'static str {
        match self {
            Helicity::Plus => "+1",
            Helicity::Minus => "-1",
            Helicity::Zero => "0",
            Helicity::TimeLike => "0t",
        }
    }
}

impl fmt::Display for Helicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Helicity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "+1" | "1" | "+" | "plus" => Ok(Helicity::Plus),
            "-1" | "-" | "minus" => Ok(Helicity::Minus),
            "0" | "zero" => Ok(Helicity::Zero),
            "0t" | "0_t" | "t" | "timelike" => Ok(Helicity::TimeLike),
            other => Err(Error::Domain(format!("unknown helicity label {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolarizationVector {
    pub u: FourVector,
    pub helicity: Helicity,
    pub mass: f64,
    pub normalization: f64,
    pub p: [f64; 3],
}

impl PolarizationVector {
    /// `E_p = sqrt(|p|^2 + m^2)`.
    pub fn energy(&self) -> f64 {
        on_shell_energy(self.p, self.mass)
    }

    pub fn four_momentum(&self) -> FourVector {
        FourVector::momentum(real(self.energy()), self.p)
    }
}

pub fn on_shell_energy(p: [f64; 3], m: f64) -> f64 {
    (p.iter().map(|x| x * x).sum::<f64>() + m * m).sqrt()
}

fn check_mass(m: f64) -> Result<()> {
    if m.is_finite() && m > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("mass must be positive and finite, got {m}")))
    }
}

/// `u^mu(p, sigma)` from the closed-form boosted basis vectors.
pub fn polarization_vector(p: [f64; 3], m: f64, n: f64, sigma: Helicity) -> Result<PolarizationVector> {
    check_mass(m)?;
    if !n.is_finite() || p.iter().any(|x| !x.is_finite()) {
        return Err(Error::Domain("non-finite momentum or normalization".into()));
    }
    let e = on_shell_energy(p, m);
    let [p1, p2, p3] = p;
    let d = e + m;
    let pr = Complex::new(p1, p2);
    let pl = Complex::new(p1, -p2);
    let sqrt2 = std::f64::consts::SQRT_2;
    let u = match sigma {
        Helicity::Plus => {
            let f = real(-n / (sqrt2 * m));
            FourVector([
                pr * f,
                (real(m) + pr * (p1 / d)) * f,
                (I * m + pr * (p2 / d)) * f,
                pr * (p3 / d) * f,
            ])
        }
        Helicity::Minus => {
            let f = real(n / (sqrt2 * m));
            FourVector([
                pl * f,
                (real(m) + pl * (p1 / d)) * f,
                (-I * m + pl * (p2 / d)) * f,
                pl * (p3 / d) * f,
            ])
        }
        Helicity::Zero => {
            let f = n / m;
            FourVector([
                real(p3 * f),
                real(p1 * p3 / d * f),
                real(p2 * p3 / d * f),
                real((m + p3 * p3 / d) * f),
            ])
        }
        Helicity::TimeLike => {
            let f = n / m;
            FourVector([real(e * f), real(p1 * f), real(p2 * f), real(p3 * f)])
        }
    };
    Ok(PolarizationVector { u, helicity: sigma, mass: m, normalization: n, p })
}

/// `p_mu u^mu = E_p u^0 - p.u`.
pub fn lorentz_condition(pv: &PolarizationVector) -> Complex {
    pv.four_momentum().minkowski_dot(&pv.u)
}

/// Fitted `d log|u^mu| / d log m` for one component.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum GrowthExponent {
    Slope(f64),
    /// The component vanishes at every scanned mass.
    NotApplicable,
}

impl GrowthExponent {
    pub fn slope(self) -> Option<f64> {
        match self {
            GrowthExponent::Slope(s) => Some(s),
            GrowthExponent::NotApplicable => None,
        }
    }
}

/// Least-squares slope of `log|u^mu(m)|` against `log m`, per component. A
/// slope near -1 flags a `1/m` divergence as `m -> 0`.
pub fn limit_scan(p: [f64; 3], sigma: Helicity, n: f64, masses: &[f64]) -> Result<[GrowthExponent; 4]> {
    if masses.len() < 4 {
        return Err(Error::Domain(format!("limit scan needs at least 4 masses, got {}", masses.len())));
    }
    if masses.iter().any(|&m| !(m.is_finite() && m > 0.0)) {
        return Err(Error::Domain("scan masses must be positive".into()));
    }
    if masses.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::Domain("scan masses must be strictly decreasing".into()));
    }
    let vectors = masses.iter().map(|&m| polarization_vector(p, m, n, sigma)).collect::<Result<Vec<_>>>()?;
    Ok(std::array::from_fn(|mu| {
        let mut pts = Vec::with_capacity(masses.len());
        for (pv, &m) in vectors.iter().zip(masses) {
            let scale = pv.u.max_abs();
            let v = pv.u[mu].norm();
            if v <= 1e-14 * scale || v == 0.0 {
                return GrowthExponent::NotApplicable;
            }
            pts.push((m.ln(), v.ln()));
        }
        GrowthExponent::Slope(least_squares_slope(&pts))
    }))
}

pub(crate) fn least_squares_slope(pts: &[(f64, f64)]) -> f64 {
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

/// Antisymmetric `F^{mu nu}` with upper indices.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FieldStrength(pub [[Complex; 4]; 4]);

impl FieldStrength {
    pub const ZERO: FieldStrength = FieldStrength([[ZERO; 4]; 4]);

    /// `scale * (-i)(p^mu A^nu - p^nu A^mu)`, the plane-wave curl of `A`.
    pub fn from_potential(p: &FourVector, a: &FourVector, scale: f64) -> Self {
        FieldStrength(std::array::from_fn(|mu| {
            std::array::from_fn(|nu| -I * (p[mu] * a[nu] - p[nu] * a[mu]) * scale)
        }))
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..4).all(|mu| (0..4).all(|nu| self.0[mu][nu] == -self.0[nu][mu]))
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `J^nu = p_alpha F^{alpha nu}`.
    pub fn contract_lower(&self, p: &FourVector) -> FourVector {
        let pl = p.lower();
        FourVector(std::array::from_fn(|nu| (0..4).map(|a| pl[a] * self.0[a][nu]).sum()))
    }
}

impl Index<(usize, usize)> for FieldStrength {
    type Output = Complex;
    fn index(&self, (mu, nu): (usize, usize)) -> &Complex {
        &self.0[mu][nu]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ProcaVariant {
    /// `d_a F^{a mu} + m^2 A^mu = 0`, `F = dA - dA`.
    Standard,
    /// `d_a F^{a mu} + (m/2) A^mu = 0`, `2m F = dA - dA`.
    Modified,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProcaCheck {
    pub field: FieldStrength,
    pub residual_vector: FourVector,
    /// Max-entry norm of `residual_vector`.
    pub residual: f64,
}

/// Plane-wave residual of a Proca-like pair for the potential `A` at
/// momentum `(E, p)`.
pub fn proca_residual(
    variant: ProcaVariant,
    p: [f64; 3],
    energy: Complex,
    a: &FourVector,
    m: f64,
) -> Result<ProcaCheck> {
    check_mass(m)?;
    let pm = FourVector::momentum(energy, p);
    let (scale, mass_coef) = match variant {
        ProcaVariant::Standard => (1.0, m * m),
        ProcaVariant::Modified => (1.0 / (2.0 * m), m / 2.0),
    };
    let field = FieldStrength::from_potential(&pm, a, scale);
    let j = field.contract_lower(&pm);
    let residual_vector = FourVector(std::array::from_fn(|mu| -I * j[mu] + a[mu] * mass_coef));
    Ok(ProcaCheck { field, residual_vector, residual: residual_vector.max_abs() })
}

/// Plane-wave residual of
/// `d_mu d^a F_a^nu - d^nu d^a F_{a mu} + m^2 F_mu^nu`, max-entry norm.
pub fn weinberg_residual(p: [f64; 3], energy: Complex, f: &FieldStrength, m: f64) -> f64 {
    let up = FourVector::momentum(energy, p);
    let down = up.lower();
    // F_a^nu and F_{a mu}
    let mixed = |a: usize, nu: usize| f.0[a][nu] * METRIC[a];
    let lower = |a: usize, b: usize| f.0[a][b] * METRIC[a] * METRIC[b];
    let mut worst: f64 = 0.0;
    for mu in 0..4 {
        for nu in 0..4 {
            let first: Complex = (0..4).map(|a| -down[mu] * up[a] * mixed(a, nu)).sum();
            let second: Complex = (0..4).map(|a| -up[nu] * up[a] * lower(a, mu)).sum();
            let r = first - second + mixed(mu, nu) * (m * m);
            worst = worst.max(r.norm());
        }
    }
    worst
}

fn massless_momentum(p: [f64; 3]) -> Result<FourVector> {
    let norm = p.iter().map(|x| x * x).sum::<f64>().sqrt();
    if !(norm > 0.0) || !norm.is_finite() {
        return Err(Error::Domain("massless-limit check needs a nonzero finite momentum".into()));
    }
    Ok(FourVector::momentum(real(norm), p))
}

/// Max-entry residual of `-i p_a F^{a mu} + i p^mu chi` on the massless
/// shell `p^0 = |p|`.
pub fn massless_limit_residual(p: [f64; 3], chi: Complex, f: &FieldStrength) -> Result<f64> {
    let pm = massless_momentum(p)?;
    let j = f.contract_lower(&pm);
    Ok(FourVector(std::array::from_fn(|mu| -I * j[mu] + I * pm[mu] * chi)).max_abs())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MasslessLimitFit {
    /// Amplitude `f` of the ansatz `F^{0j} = f p^j/|p|`.
    pub coefficient: Complex,
    pub field: FieldStrength,
    pub residual: f64,
}

/// Least-squares solution of the chi-sourced massless equation
/// `p_a F^{a mu} = p^mu chi` within the longitudinal-temporal ansatz
/// `F^{0j} = -F^{j0} = f p^j/|p|`, together with its residual.
pub fn massless_limit_equation_check(p: [f64; 3], chi: Complex) -> Result<MasslessLimitFit> {
    let pm = massless_momentum(p)?;
    let norm = pm[0].re;
    let unit = FieldStrength(std::array::from_fn(|mu| {
        std::array::from_fn(|nu| match (mu, nu) {
            (0, j) if j > 0 => real(p[j - 1] / norm),
            (j, 0) if j > 0 => real(-p[j - 1] / norm),
            _ => ZERO,
        })
    }));
    let a = unit.contract_lower(&pm);
    let target = pm.scale(chi);
    let denom: f64 = a.0.iter().map(|z| z.norm_sqr()).sum();
    let coefficient =
        if denom > 0.0 { (0..4).map(|mu| a[mu].conj() * target[mu]).sum::<Complex>() / denom } else { ZERO };
    let field = FieldStrength(unit.0.map(|row| row.map(|z| z * coefficient)));
    let residual = massless_limit_residual(p, chi, &field)?;
    Ok(MasslessLimitFit { coefficient, field, residual })
}

pub const POLARIZATION_CSV_HEADER: &str =
    "sigma,m,N,px,py,pz,re_u0,im_u0,re_u1,im_u1,re_u2,im_u2,re_u3,im_u3,lorentz_residual";

/// One row per vector; `lorentz_residual` is `|p_mu u^mu|`.
pub fn write_polarization_csv<W: Write>(out: &mut W, vectors: &[PolarizationVector]) -> io::Result<()> {
    writeln!(out, "{POLARIZATION_CSV_HEADER}")?;
    for pv in vectors {
        write!(out, "{},{},{},{},{},{}", pv.helicity, pv.mass, pv.normalization, pv.p[0], pv.p[1], pv.p[2])?;
        for z in pv.u.0 {
            write!(out, ",{},{}", z.re, z.im)?;
        }
        writeln!(out, ",{}", lorentz_condition(pv).norm())?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clinalg::c64;

    fn close4(a: &FourVector, b: &FourVector, tol: f64) -> bool {
        (*a - *b).max_abs() < tol
    }

    #[test]
    fn rest_frame_vectors() {
        let t = polarization_vector([0.0; 3], 1.0, 1.0, Helicity::TimeLike).unwrap();
        assert_eq!(t.u, FourVector([real(1.0), ZERO, ZERO, ZERO]));
        let plus = polarization_vector([0.0; 3], 1.0, 1.0, Helicity::Plus).unwrap();
        let s = -1.0 / 2f64.sqrt();
        assert!(close4(&plus.u, &FourVector([ZERO, real(s), c64(0.0, s), ZERO]), 1e-15));
    }

    #[test]
    fn longitudinal_along_z() {
        let z = polarization_vector([0.0, 0.0, 1.0], 1.0, 1.0, Helicity::Zero).unwrap();
        assert!(close4(&z.u, &FourVector([real(1.0), ZERO, ZERO, real(2f64.sqrt())]), 1e-15));
    }

    #[test]
    fn timelike_violates_lorentz_condition() {
        let t = polarization_vector([0.0, 0.0, 1.0], 1.0, 1.0, Helicity::TimeLike).unwrap();
        assert!((lorentz_condition(&t) - real(1.0)).norm() < 1e-15);
    }

    #[test]
    fn mass_must_be_positive() {
        assert!(polarization_vector([1.0, 0.0, 0.0], 0.0, 1.0, Helicity::Plus).is_err());
        assert!(proca_residual(ProcaVariant::Standard, [0.0; 3], ZERO, &FourVector::ZERO, -1.0).is_err());
    }

    #[test]
    fn helicity_labels_round_trip() {
        for h in Helicity::ALL {
            assert_eq!(h.label().parse::<Helicity>().unwrap(), h);
        }
        assert!("2".parse::<Helicity>().is_err());
    }

    #[test]
    fn limit_scan_rejects_bad_mass_lists() {
        let p = [1.0, 0.0, 0.0];
        assert!(limit_scan(p, Helicity::Plus, 1.0, &[1.0, 0.1, 0.01]).is_err());
        assert!(limit_scan(p, Helicity::Plus, 1.0, &[1.0, 0.1, 0.2, 0.01]).is_err());
        assert!(limit_scan(p, Helicity::Plus, 1.0, &[1.0, 0.1, 0.0, -1.0]).is_err());
    }

    #[test]
    fn limit_scan_along_z_has_vanishing_components() {
        let e = limit_scan([0.0, 0.0, 1.0], Helicity::Plus, 1.0, &[1.0, 0.1, 0.01, 0.001]).unwrap();
        assert_eq!(e[0], GrowthExponent::NotApplicable);
        assert_eq!(e[3], GrowthExponent::NotApplicable);
        assert!(e[1].slope().is_some() && e[2].slope().is_some());
    }

    #[test]
    fn pure_gauge_potential() {
        let p = [0.3, 0.4, 1.2];
        let m = 0.7;
        let e = real(2.0);
        let a = FourVector::momentum(e, p);
        let std = proca_residual(ProcaVariant::Standard, p, e, &a, m).unwrap();
        assert_eq!(std.field.max_abs(), 0.0);
        assert!((std.residual - m * m * a.max_abs()).abs() < 1e-14);
        let md = proca_residual(ProcaVariant::Modified, p, e, &a, m).unwrap();
        assert!((md.residual - m / 2.0 * a.max_abs()).abs() < 1e-14);
        assert!(std.field.is_antisymmetric());
    }

    #[test]
    fn zero_field_weinberg() {
        assert_eq!(weinberg_residual([1.0, 2.0, 3.0], real(4.0), &FieldStrength::ZERO, 1.0), 0.0);
    }

    #[test]
    fn massless_limit_examples() {
        let z = [0.0, 0.0, 1.0];
        assert_eq!(massless_limit_equation_check(z, ZERO).unwrap().residual, 0.0);
        // transverse field cannot carry the chi source
        let pm = FourVector::momentum(real(1.0), z);
        let a = FourVector([ZERO, real(1.0), I, ZERO]);
        let f = FieldStrength::from_potential(&pm, &a, 1.0);
        assert!((massless_limit_residual(z, real(1.0), &f).unwrap() - 1.0).abs() < 1e-15);
        let fit = massless_limit_equation_check(z, real(1.0)).unwrap();
        assert!(fit.residual < 1e-10);
        assert!(fit.field.is_antisymmetric());
        assert!(massless_limit_equation_check([0.0; 3], real(1.0)).is_err());
    }

    #[test]
    fn csv_row_for_timelike() {
        let t = polarization_vector([0.0, 0.0, 1.0], 1.0, 1.0, Helicity::TimeLike).unwrap();
        let mut buf = Vec::new();
        write_polarization_csv(&mut buf, &[t]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let row = text.lines().nth(1).unwrap();
        assert!(row.starts_with("0t,1,1,0,0,1,"));
        let last: f64 = row.rsplit(',').next().unwrap().parse().unwrap();
        assert!((last - 1.0).abs() < 1e-14);
    }
}
