use nalgebra::{DMatrix, DVector};

use super::{PerturbationVector, VppInstance};

/// Real-valued form of the perturbation search.
///
/// With `d = u + tau v` stacked as `x = [Re d; Im d]` and the precoder stacked
/// as `B = [[Re P, -Im P], [Im P, Re P]]`, the transmit power is
/// `‖B (x_u + tau z)‖²` for the integer vector `z = [Re v; Im v]`.
#[derive(Debug, Clone)]
pub struct RealLattice {
    pub basis: DMatrix<f64>,
    pub gram: DMatrix<f64>,
    pub data: DVector<f64>,
    pub tau: f64,
}

impl RealLattice {
    pub fn new(inst: &VppInstance) -> Self {
        let p = inst.channel.precoder();
        let (rows, cols) = (p.rows(), p.cols());
        let basis = DMatrix::from_fn(2 * rows, 2 * cols, |i, j| {
            let z = p[(i % rows, j % cols)];
            match (i < rows, j < cols) {
                (true, true) | (false, false) => z.re,
                (true, false) => -z.im,
                (false, true) => z.im,
            }
        });
        let gram = basis.transpose() * &basis;
        let u = &inst.symbols.entries;
        let data = DVector::from_fn(2 * cols, |i, _| if i < cols { u[i].re } else { u[i - cols].im });
        Self {
            basis,
            gram,
            data,
            tau: inst.constellation.tau(),
        }
    }

    pub fn dim(&self) -> usize {
        self.data.len()
    }

    /// `‖B (x_u + tau z)‖²` evaluated through the Gram matrix.
    pub fn objective(&self, z: &[i64]) -> f64 {
        let x = DVector::from_fn(self.dim(), |i, _| self.data[i] + self.tau * z[i] as f64);
        x.dot(&(&self.gram * &x))
    }

    pub fn stack(v: &PerturbationVector) -> Vec<i64> {
        v.0.iter().map(|c| c.re).chain(v.0.iter().map(|c| c.im)).collect()
    }

    pub fn unstack(z: &[i64]) -> PerturbationVector {
        let n = z.len() / 2;
        PerturbationVector((0..n).map(|k| num_complex::Complex::new(z[k], z[n + k])).collect())
    }
}
