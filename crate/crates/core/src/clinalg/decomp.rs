use std::cmp::Ordering;

use super::{real, Complex, ComplexMatrix, ComplexVector, ONE, ZERO};
use crate::error::{Error, Result};

/// Default kernel tolerance, relative to the largest singular value.
pub const DEFAULT_KERNEL_TOL: f64 = 1e-10;

/// Pencils whose leading coefficient has a larger condition estimate are
/// rejected as singular.
pub const PENCIL_CONDITION_LIMIT: f64 = 1e12;

const MAX_JACOBI_SWEEPS: usize = 80;
const QR_ITERS_PER_EIGENVALUE: usize = 60;

struct Lu {
    lu: ComplexMatrix,
    perm: Vec<usize>,
    swaps: usize,
    singular: bool,
}

fn lu_decompose(m: &ComplexMatrix) -> Result<Lu> {
    let n = m.require_square()?;
    let mut lu = m.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut swaps = 0;
    let mut singular = false;
    for k in 0..n {
        let (p, pmax) =
            (k..n)
                .map(|i| (i, lu[(i, k)].norm()))
                .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        if pmax == 0.0 {
            singular = true;
            continue;
        }
        if p != k {
            for j in 0..n {
                let tmp = lu[(k, j)];
                lu[(k, j)] = lu[(p, j)];
                lu[(p, j)] = tmp;
            }
            perm.swap(k, p);
            swaps += 1;
        }
        let pivot = lu[(k, k)];
        for i in k + 1..n {
            let f = lu[(i, k)] / pivot;
            lu[(i, k)] = f;
            if f == ZERO {
                continue;
            }
            for j in k + 1..n {
                let u = lu[(k, j)];
                lu[(i, j)] -= f * u;
            }
        }
    }
    Ok(Lu { lu, perm, swaps, singular })
}

/// Determinant by partially pivoted elimination. A matrix with an all-zero
/// pivot column returns exactly zero.
pub fn determinant(m: &ComplexMatrix) -> Result<Complex> {
    let lu = lu_decompose(m)?;
    if lu.singular {
        return Ok(ZERO);
    }
    let n = m.rows();
    let mut det: Complex = (0..n).map(|i| lu.lu[(i, i)]).product();
    if lu.swaps % 2 == 1 {
        det = -det;
    }
    Ok(det)
}

/// Solve `A X = B` for square `A`.
pub fn solve(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = a.require_square()?;
    if b.rows() != n {
        return Err(Error::Dimension(format!("rhs has {} rows, expected {n}", b.rows())));
    }
    let lu = lu_decompose(a)?;
    if lu.singular {
        return Err(Error::SingularPencil { condition: f64::INFINITY, limit: PENCIL_CONDITION_LIMIT });
    }
    let mut x = ComplexMatrix::zeros(n, b.cols());
    for col in 0..b.cols() {
        let mut y: Vec<Complex> = lu.perm.iter().map(|&p| b[(p, col)]).collect();
        for i in 0..n {
            for k in 0..i {
                let l = lu.lu[(i, k)];
                let yk = y[k];
                y[i] -= l * yk;
            }
        }
        for i in (0..n).rev() {
            for k in i + 1..n {
                let u = lu.lu[(i, k)];
                let yk = y[k];
                y[i] -= u * yk;
            }
            y[i] /= lu.lu[(i, i)];
        }
        for i in 0..n {
            x[(i, col)] = y[i];
        }
    }
    Ok(x)
}

/// Singular values (descending) and the matching right singular vectors.
#[derive(Debug, Clone)]
pub struct Svd {
    pub singular_values: Vec<f64>,
    /// Columns are right singular vectors, ordered like `singular_values`.
    pub v: ComplexMatrix,
}

/// One-sided Jacobi SVD. Tall and square inputs are handled directly; wide
/// inputs are padded with zero rows.
pub fn svd(m: &ComplexMatrix) -> Result<Svd> {
    let (rows, cols) = (m.rows(), m.cols());
    let work_rows = rows.max(cols);
    // Column-major working copy.
    let mut a: Vec<Vec<Complex>> = (0..cols)
        .map(|j| (0..work_rows).map(|i| if i < rows { m[(i, j)] } else { ZERO }).collect())
        .collect();
    let mut v: Vec<Vec<Complex>> =
        (0..cols).map(|j| (0..cols).map(|i| if i == j { ONE } else { ZERO }).collect()).collect();

    // Columns below this squared norm are numerically zero; rotating them only shuffles roundoff.
    let negligible = (f64::EPSILON * m.frobenius()).powi(2);
    let mut converged = cols < 2;
    for _ in 0..MAX_JACOBI_SWEEPS {
        let mut rotated = false;
        for p in 0..cols {
            for q in p + 1..cols {
                let alpha: f64 = a[p].iter().map(|z| z.norm_sqr()).sum();
                let beta: f64 = a[q].iter().map(|z| z.norm_sqr()).sum();
                let gamma: Complex = a[p].iter().zip(&a[q]).map(|(x, y)| x.conj() * y).sum();
                let g = gamma.norm();
                if g == 0.0 || g <= f64::EPSILON * (alpha * beta).sqrt() || alpha.min(beta) <= negligible {
                    continue;
                }
                rotated = true;
                // Remove the phase of gamma from column q, then apply a real rotation.
                let phase = (gamma / g).conj();
                let zeta = (beta - alpha) / (2.0 * g);
                let sign = if zeta >= 0.0 { 1.0 } else { -1.0 };
                let t = sign / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for cols_of in [&mut a, &mut v] {
                    let (lo, hi) = cols_of.split_at_mut(q);
                    let (colp, colq) = (&mut lo[p], &mut hi[0]);
                    for (x, y) in colp.iter_mut().zip(colq.iter_mut()) {
                        let yq = *y * phase;
                        let xp = *x;
                        *x = xp * c - yq * s;
                        *y = xp * s + yq * c;
                    }
                }
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence(MAX_JACOBI_SWEEPS));
    }

    let norms: Vec<f64> = a.iter().map(|col| col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()).collect();
    let mut order: Vec<usize> = (0..cols).collect();
    order.sort_by(|&i, &j| norms[j].partial_cmp(&norms[i]).unwrap_or(Ordering::Equal).then(i.cmp(&j)));
    let mut vm = ComplexMatrix::zeros(cols, cols);
    for (new_j, &old_j) in order.iter().enumerate() {
        for i in 0..cols {
            vm[(i, new_j)] = v[old_j][i];
        }
    }
    Ok(Svd { singular_values: order.iter().map(|&j| norms[j]).collect(), v: vm })
}

/// Ratio of extreme singular values; infinite for a singular matrix.
pub fn condition_estimate(m: &ComplexMatrix) -> Result<f64> {
    m.require_square()?;
    let s = svd(m)?;
    let max = s.singular_values[0];
    let min = *s.singular_values.last().expect("non-empty");
    Ok(if min == 0.0 { f64::INFINITY } else { max / min })
}

/// Rotate `v` so its first significant component is real and positive.
pub fn fix_phase(v: &mut ComplexVector) {
    let scale = v.max_abs();
    if scale == 0.0 {
        return;
    }
    if let Some(z) = v.entries().iter().find(|z| z.norm() > 1e-8 * scale).copied() {
        let rot = z.conj() / z.norm();
        for e in v.entries_mut() {
            *e *= rot;
        }
    }
}

/// Orthonormal basis of the numerical kernel: right singular vectors whose
/// singular value is at most `tol` times the largest one.
pub fn null_space(m: &ComplexMatrix, tol: f64) -> Result<Vec<ComplexVector>> {
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("kernel tolerance must be positive, got {tol}")));
    }
    let s = svd(m)?;
    let threshold = tol * s.singular_values[0];
    Ok(s.singular_values
        .iter()
        .enumerate()
        .filter(|(_, &sv)| sv <= threshold)
        .map(|(j, _)| {
            let mut v = s.v.column(j);
            fix_phase(&mut v);
            v
        })
        .collect())
}

pub fn null_space_default(m: &ComplexMatrix) -> Result<Vec<ComplexVector>> {
    null_space(m, DEFAULT_KERNEL_TOL)
}

/// Eigen-decomposition of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    /// Ascending.
    pub values: Vec<f64>,
    /// Columns are the matching orthonormal eigenvectors.
    pub vectors: ComplexMatrix,
}

/// Cyclic Jacobi on a Hermitian matrix. Only the upper triangle is trusted.
pub fn hermitian_eigen(m: &ComplexMatrix) -> Result<HermitianEigen> {
    let n = m.require_square()?;
    let mut a = m.clone();
    // Symmetrize from the upper triangle.
    for i in 0..n {
        a[(i, i)] = real(a[(i, i)].re);
        for j in i + 1..n {
            a[(j, i)] = a[(i, j)].conj();
        }
    }
    let mut vecs = ComplexMatrix::identity(n);
    let mut converged = n < 2;
    for _ in 0..MAX_JACOBI_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)].norm_sqr())
            .sum();
        if off <= (f64::EPSILON * a.frobenius()).powi(2) {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let g = a[(p, q)].norm();
                if g == 0.0 {
                    continue;
                }
                let phase = (a[(p, q)] / g).conj();
                let zeta = (a[(q, q)].re - a[(p, p)].re) / (2.0 * g);
                let sign = if zeta >= 0.0 { 1.0 } else { -1.0 };
                let t = sign / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                // J acts on columns p, q: col_p' = c e_p - s phase e_q, col_q' = s e_p + c phase e_q.
                let mut j = ComplexMatrix::identity(n);
                j[(p, p)] = real(c);
                j[(q, p)] = -phase * s;
                j[(p, q)] = real(s);
                j[(q, q)] = phase * c;
                a = &(&j.adjoint() * &a) * &j;
                a[(p, q)] = ZERO;
                a[(q, p)] = ZERO;
                vecs = &vecs * &j;
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence(MAX_JACOBI_SWEEPS));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order
        .sort_by(|&i, &j| a[(i, i)].re.partial_cmp(&a[(j, j)].re).unwrap_or(Ordering::Equal).then(i.cmp(&j)));
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (new_j, &old_j) in order.iter().enumerate() {
        for i in 0..n {
            vectors[(i, new_j)] = vecs[(i, old_j)];
        }
    }
    Ok(HermitianEigen { values: order.iter().map(|&i| a[(i, i)].re).collect(), vectors })
}

fn hessenberg(m: &ComplexMatrix) -> ComplexMatrix {
    let n = m.rows();
    let mut h = m.clone();
    for k in 0..n.saturating_sub(2) {
        let x: Vec<Complex> = (k + 1..n).map(|i| h[(i, k)]).collect();
        let xnorm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if xnorm == 0.0 {
            continue;
        }
        let lead_phase = if x[0].norm() == 0.0 { ONE } else { x[0] / x[0].norm() };
        let alpha = -lead_phase * xnorm;
        let mut v = x;
        v[0] -= alpha;
        let vnorm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if vnorm == 0.0 {
            continue;
        }
        for z in v.iter_mut() {
            *z /= vnorm;
        }
        // H <- (I - 2 v v^H) H
        for j in 0..n {
            let dot: Complex = v.iter().enumerate().map(|(r, vr)| vr.conj() * h[(k + 1 + r, j)]).sum();
            for (r, vr) in v.iter().enumerate() {
                h[(k + 1 + r, j)] -= *vr * dot * 2.0;
            }
        }
        // H <- H (I - 2 v v^H)
        for i in 0..n {
            let dot: Complex = v.iter().enumerate().map(|(r, vr)| h[(i, k + 1 + r)] * vr).sum();
            for (r, vr) in v.iter().enumerate() {
                h[(i, k + 1 + r)] -= dot * vr.conj() * 2.0;
            }
        }
        for i in k + 2..n {
            h[(i, k)] = ZERO;
        }
    }
    h
}

/// Eigenvalues of a general complex matrix by Hessenberg reduction and
/// Wilkinson-shifted QR. Ordered ascending by real part, then imaginary.
pub fn eigenvalues(m: &ComplexMatrix) -> Result<Vec<Complex>> {
    let n = m.require_square()?;
    let mut h = hessenberg(m);
    let mut eig = vec![ZERO; n];
    let mut hi = n - 1;
    let mut iter = 0usize;
    let mut total = 0usize;
    while hi > 0 {
        let mut l = hi;
        while l > 0 {
            let sub = h[(l, l - 1)].norm();
            let scale = h[(l - 1, l - 1)].norm() + h[(l, l)].norm();
            if sub <= f64::EPSILON * scale || sub < f64::MIN_POSITIVE {
                h[(l, l - 1)] = ZERO;
                break;
            }
            l -= 1;
        }
        if l == hi {
            eig[hi] = h[(hi, hi)];
            hi -= 1;
            iter = 0;
            continue;
        }
        iter += 1;
        total += 1;
        if total > QR_ITERS_PER_EIGENVALUE * n {
            return Err(Error::NoConvergence(total));
        }
        let a = h[(hi - 1, hi - 1)];
        let b = h[(hi - 1, hi)];
        let c = h[(hi, hi - 1)];
        let d = h[(hi, hi)];
        let mu = if iter % 11 == 10 {
            // exceptional shift
            d + real(0.75 * h[(hi, hi - 1)].norm())
        } else {
            let half = (a - d) * 0.5;
            let disc = (half * half + b * c).sqrt();
            let m1 = (a + d) * 0.5 + disc;
            let m2 = (a + d) * 0.5 - disc;
            if (m1 - d).norm() < (m2 - d).norm() {
                m1
            } else {
                m2
            }
        };
        for i in l..=hi {
            h[(i, i)] -= mu;
        }
        let mut rots = Vec::with_capacity(hi - l);
        for k in l..hi {
            let x = h[(k, k)];
            let y = h[(k + 1, k)];
            let r = (x.norm_sqr() + y.norm_sqr()).sqrt();
            let (cr, sr) = if r == 0.0 { (ONE, ZERO) } else { (x / r, y / r) };
            for j in k..=hi {
                let t1 = h[(k, j)];
                let t2 = h[(k + 1, j)];
                h[(k, j)] = cr.conj() * t1 + sr.conj() * t2;
                h[(k + 1, j)] = -sr * t1 + cr * t2;
            }
            rots.push((k, cr, sr));
        }
        for (k, cr, sr) in rots {
            for i in l..=(k + 1).min(hi) {
                let t1 = h[(i, k)];
                let t2 = h[(i, k + 1)];
                h[(i, k)] = t1 * cr + t2 * sr;
                h[(i, k + 1)] = -t1 * sr.conj() + t2 * cr.conj();
            }
        }
        for i in l..=hi {
            h[(i, i)] += mu;
        }
    }
    eig[0] = h[(0, 0)];
    sort_spectrum(&mut eig);
    Ok(eig)
}

pub(crate) fn sort_spectrum(eig: &mut [Complex]) {
    eig.sort_by(|x, y| {
        x.re.partial_cmp(&y.re)
            .unwrap_or(Ordering::Equal)
            .then(x.im.partial_cmp(&y.im).unwrap_or(Ordering::Equal))
    });
}

/// Generalized eigenvalues of the pencil `E A - B`, i.e. the eigenvalues of
/// `A^-1 B`, ordered ascending by real part then imaginary part.
pub fn pencil_spectrum(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<Vec<Complex>> {
    let n = a.require_square()?;
    if b.rows() != n || b.cols() != n {
        return Err(Error::Dimension(format!(
            "pencil blocks {}x{} and {}x{} differ",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let condition = condition_estimate(a)?;
    if !(condition <= PENCIL_CONDITION_LIMIT) {
        return Err(Error::SingularPencil { condition, limit: PENCIL_CONDITION_LIMIT });
    }
    eigenvalues(&solve(a, b)?)
}
