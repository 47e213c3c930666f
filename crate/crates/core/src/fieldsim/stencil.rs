use rayon::prelude::*;

use super::{GridSpec, System};
use crate::clinalg::{Complex, I, ZERO};

/// Periodic centered differences on the grid of a `GridSpec`.
pub(crate) struct Stencil {
    shape: [usize; 3],
    strides: [usize; 3],
    /// Weights already divided by `h`.
    weights: Vec<f64>,
    c: f64,
}

impl Stencil {
    pub(crate) fn new(grid: &GridSpec) -> Self {
        let shape = grid.shape();
        let h = grid.spacing();
        Stencil {
            shape,
            strides: [shape[1] * shape[2], shape[2], 1],
            weights: grid.order.weights().iter().map(|a| a / h).collect(),
            c: grid.c,
        }
    }

    fn offset(&self, index: usize, axis: usize, shift: isize) -> usize {
        let n = self.shape[axis] as isize;
        let coord = ((index / self.strides[axis]) % self.shape[axis]) as isize;
        let moved = (coord + shift).rem_euclid(n);
        (index as isize + (moved - coord) * self.strides[axis] as isize) as usize
    }

    /// `d/dx_axis` of the scalar field `f` at `index`; zero along axes of
    /// extent one.
    pub(crate) fn diff<F: Fn(usize) -> Complex>(&self, f: F, index: usize, axis: usize) -> Complex {
        if self.shape[axis] == 1 {
            return ZERO;
        }
        let mut acc = ZERO;
        for (j, a) in self.weights.iter().enumerate() {
            let s = j as isize + 1;
            acc += (f(self.offset(index, axis, s)) - f(self.offset(index, axis, -s))) * *a;
        }
        acc
    }

    /// `D_axis u_comp` for all axes and components at `index`.
    fn jacobian(&self, u: &[[Complex; 4]], index: usize) -> [[Complex; 4]; 3] {
        std::array::from_fn(|axis| {
            if self.shape[axis] == 1 {
                return [ZERO; 4];
            }
            let mut acc = [ZERO; 4];
            for (j, a) in self.weights.iter().enumerate() {
                let s = j as isize + 1;
                let (p, m) = (&u[self.offset(index, axis, s)], &u[self.offset(index, axis, -s)]);
                for c in 0..4 {
                    acc[c] += (p[c] - m[c]) * *a;
                }
            }
            acc
        })
    }

    /// Right-hand side of the evolution system on packed `(Psi, chi)` data.
    pub(crate) fn rhs(&self, u: &[[Complex; 4]], system: System) -> Vec<[Complex; 4]> {
        let isc = I * (system.curl_sign() * self.c);
        let c = self.c;
        (0..u.len())
            .into_par_iter()
            .map(|i| {
                let d = self.jacobian(u, i);
                let curl = [d[1][2] - d[2][1], d[2][0] - d[0][2], d[0][1] - d[1][0]];
                let div = d[0][0] + d[1][1] + d[2][2];
                [
                    isc * curl[0] - d[0][3] * c,
                    isc * curl[1] - d[1][3] * c,
                    isc * curl[2] - d[2][3] * c,
                    -div * c,
                ]
            })
            .collect()
    }

    pub(crate) fn divergence(&self, psi: &[[Complex; 3]], index: usize) -> Complex {
        (0..3).map(|a| self.diff(|j| psi[j][a], index, a)).fold(ZERO, |x, y| x + y)
    }

    /// `D.D chi` as the divergence of the discrete gradient.
    pub(crate) fn div_grad(&self, chi: &[Complex]) -> Vec<Complex> {
        let grad: Vec<[Complex; 3]> = (0..chi.len())
            .into_par_iter()
            .map(|i| std::array::from_fn(|a| self.diff(|j| chi[j], i, a)))
            .collect();
        (0..chi.len()).into_par_iter().map(|i| self.divergence(&grad, i)).collect()
    }
}
