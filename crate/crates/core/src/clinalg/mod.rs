//! Small dense complex linear algebra.
//!
//! Everything here targets n <= 16: representation matrices, spinor
//! operators and their pencils. Storage is row-major `Complex64`.

mod decomp;

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub use decomp::{
    condition_estimate, determinant, eigenvalues, fix_phase, hermitian_eigen, null_space, null_space_default,
    pencil_spectrum, solve, svd, HermitianEigen, Svd, DEFAULT_KERNEL_TOL, PENCIL_CONDITION_LIMIT,
};

pub type Complex = Complex64;

pub const ZERO: Complex = Complex::new(0.0, 0.0);
pub const ONE: Complex = Complex::new(1.0, 0.0);
pub const I: Complex = Complex::new(0.0, 1.0);

#[inline]
pub fn c64(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

#[inline]
pub fn real(re: f64) -> Complex {
    Complex::new(re, 0.0)
}

/// Dense complex matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows >= 1 && cols >= 1, "matrix dimensions must be positive");
        Self { rows, cols, data: vec![ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Complex>) -> Result<Self> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(Error::Dimension(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        Ok(Self { rows, cols, data })
    }

    /// Panics on ragged input; intended for literal tables.
    pub fn from_rows<R: AsRef<[Complex]>>(rows: &[R]) -> Self {
        let r = rows.len();
        let c = rows[0].as_ref().len();
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.as_ref().len(), c, "ragged rows");
            data.extend_from_slice(row.as_ref());
        }
        Self::from_vec(r, c, data).expect("non-empty literal")
    }

    pub fn from_real_rows<R: AsRef<[f64]>>(rows: &[R]) -> Self {
        let converted: Vec<Vec<Complex>> =
            rows.iter().map(|r| r.as_ref().iter().map(|&x| real(x)).collect()).collect();
        Self::from_rows(&converted)
    }

    pub fn diag(entries: &[Complex]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, &e) in entries.iter().enumerate() {
            m[(i, i)] = e;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Complex] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Complex] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> ComplexVector {
        ComplexVector::new((0..self.rows).map(|i| self[(i, j)]).collect())
    }

    pub fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare { rows: self.rows, cols: self.cols })
        }
    }

    pub fn scale(&self, s: Complex) -> Self {
        self.map(|z| z * s)
    }

    pub fn map(&self, f: impl Fn(Complex) -> Complex) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&z| f(z)).collect() }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn conj(&self) -> Self {
        self.map(|z| z.conj())
    }

    pub fn adjoint(&self) -> Self {
        self.transpose().conj()
    }

    pub fn trace(&self) -> Complex {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// Largest entry modulus; the "residual" norm used by the identity checks.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn try_apply(&self, v: &ComplexVector) -> Result<ComplexVector> {
        if self.cols != v.dim() {
            return Err(Error::Dimension(format!(
                "cannot apply {}x{} matrix to vector of length {}",
                self.rows,
                self.cols,
                v.dim()
            )));
        }
        Ok(ComplexVector::new(
            (0..self.rows).map(|i| self.row(i).iter().zip(v.entries()).map(|(a, b)| a * b).sum()).collect(),
        ))
    }

    pub fn commutator(&self, rhs: &Self) -> Self {
        self * rhs - rhs * self
    }

    pub fn anticommutator(&self, rhs: &Self) -> Self {
        self * rhs + rhs * self
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::identity(self.rows);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Stack matrices with equal column counts on top of each other.
    pub fn vstack(blocks: &[&Self]) -> Result<Self> {
        let cols = blocks.first().map(|b| b.cols).ok_or_else(|| Error::Dimension("empty stack".into()))?;
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            if b.cols != cols {
                return Err(Error::Dimension("vstack column mismatch".into()));
            }
            data.extend_from_slice(&b.data);
            rows += b.rows;
        }
        Self::from_vec(rows, cols, data)
    }

    /// Assemble a 2x2 block matrix.
    pub fn block2(a: &Self, b: &Self, c: &Self, d: &Self) -> Result<Self> {
        if a.rows != b.rows || c.rows != d.rows || a.cols != c.cols || b.cols != d.cols {
            return Err(Error::Dimension("incompatible blocks".into()));
        }
        let (r, c_) = (a.rows + c.rows, a.cols + b.cols);
        let mut m = Self::zeros(r, c_);
        for (blk, r0, c0) in [(a, 0, 0), (b, 0, a.cols), (c, a.rows, 0), (d, a.rows, a.cols)] {
            for i in 0..blk.rows {
                for j in 0..blk.cols {
                    m[(r0 + i, c0 + j)] = blk[(i, j)];
                }
            }
        }
        Ok(m)
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = self[(r0 + i, c0 + j)];
            }
        }
        m
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for z in self.row(i) {
                write!(f, "{:>10.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

// Operator impls panic on shape mismatch, like indexing does. Use the
// `try_*` methods where shapes come from user input.
macro_rules! elementwise {
    ($tr:ident, $method:ident, $op:tt) => {
        impl $tr<&ComplexMatrix> for &ComplexMatrix {
            type Output = ComplexMatrix;
            fn $method(self, rhs: &ComplexMatrix) -> ComplexMatrix {
                assert!(
                    self.rows == rhs.rows && self.cols == rhs.cols,
                    "shape mismatch {}x{} vs {}x{}",
                    self.rows, self.cols, rhs.rows, rhs.cols
                );
                ComplexMatrix {
                    rows: self.rows,
                    cols: self.cols,
                    data: self.data.iter().zip(&rhs.data).map(|(a, b)| a $op b).collect(),
                }
            }
        }
        impl $tr<ComplexMatrix> for ComplexMatrix {
            type Output = ComplexMatrix;
            fn $method(self, rhs: ComplexMatrix) -> ComplexMatrix {
                &self $op &rhs
            }
        }
        impl $tr<&ComplexMatrix> for ComplexMatrix {
            type Output = ComplexMatrix;
            fn $method(self, rhs: &ComplexMatrix) -> ComplexMatrix {
                &self $op rhs
            }
        }
        impl $tr<ComplexMatrix> for &ComplexMatrix {
            type Output = ComplexMatrix;
            fn $method(self, rhs: ComplexMatrix) -> ComplexMatrix {
                self $op &rhs
            }
        }
    };
}

elementwise!(Add, add, +);
elementwise!(Sub, sub, -);

impl Mul<&ComplexMatrix> for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.try_mul(rhs).expect("matrix product shape mismatch")
    }
}

impl Mul<ComplexMatrix> for ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: ComplexMatrix) -> ComplexMatrix {
        &self * &rhs
    }
}

impl Mul<&ComplexMatrix> for ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        &self * rhs
    }
}

impl Mul<ComplexMatrix> for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: ComplexMatrix) -> ComplexMatrix {
        self * &rhs
    }
}

impl Mul<Complex> for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, s: Complex) -> ComplexMatrix {
        self.scale(s)
    }
}

impl Mul<Complex> for ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, s: Complex) -> ComplexMatrix {
        self.scale(s)
    }
}

impl Mul<f64> for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, s: f64) -> ComplexMatrix {
        self.map(|z| z * s)
    }
}

impl Mul<f64> for ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, s: f64) -> ComplexMatrix {
        self.map(|z| z * s)
    }
}

impl Mul<&ComplexVector> for &ComplexMatrix {
    type Output = ComplexVector;
    fn mul(self, v: &ComplexVector) -> ComplexVector {
        self.try_apply(v).expect("matrix-vector shape mismatch")
    }
}

impl Neg for ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        self.map(|z| -z)
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        self.map(|z| -z)
    }
}

/// Dense complex column vector.
#[derive(Clone, PartialEq)]
pub struct ComplexVector {
    data: Vec<Complex>,
}

impl ComplexVector {
    pub fn new(data: Vec<Complex>) -> Self {
        Self { data }
    }

    pub fn zeros(dim: usize) -> Self {
        Self { data: vec![ZERO; dim] }
    }

    pub fn from_real(xs: &[f64]) -> Self {
        Self { data: xs.iter().map(|&x| real(x)).collect() }
    }

    pub fn dim(&self) -> usize {
        self.data.len()
    }

    pub fn entries(&self) -> &[Complex] {
        &self.data
    }

    pub fn entries_mut(&mut self) -> &mut [Complex] {
        &mut self.data
    }

    pub fn into_entries(self) -> Vec<Complex> {
        self.data
    }

    /// Hermitian inner product, conjugate-linear in `self`.
    pub fn dot(&self, other: &Self) -> Complex {
        self.data.iter().zip(&other.data).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn scale(&self, s: Complex) -> Self {
        Self { data: self.data.iter().map(|z| z * s).collect() }
    }

    pub fn normalized(&self) -> Option<Self> {
        let n = self.norm();
        (n > 0.0).then(|| self.scale(real(1.0 / n)))
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

impl Index<usize> for ComplexVector {
    type Output = Complex;
    fn index(&self, i: usize) -> &Complex {
        &self.data[i]
    }
}

impl IndexMut<usize> for ComplexVector {
    fn index_mut(&mut self, i: usize) -> &mut Complex {
        &mut self.data[i]
    }
}

impl Add<&ComplexVector> for &ComplexVector {
    type Output = ComplexVector;
    fn add(self, rhs: &ComplexVector) -> ComplexVector {
        assert_eq!(self.dim(), rhs.dim());
        ComplexVector::new(self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect())
    }
}

impl Sub<&ComplexVector> for &ComplexVector {
    type Output = ComplexVector;
    fn sub(self, rhs: &ComplexVector) -> ComplexVector {
        assert_eq!(self.dim(), rhs.dim());
        ComplexVector::new(self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Debug for ComplexVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.data.iter()).finish()
    }
}
