//! Numerical engine: symmetric eigendecomposition, matrix exponential, and
//! matrix norms.

mod eigen;
mod expm;

pub use eigen::{eig_sym, eig_sym_mat, EigenDecomposition, JACOBI_MAX_DIM};
pub use expm::{expm, expm_mat};

use crate::matrix::Mat;
use crate::operator::Operator;

const POWER_ITERATIONS: usize = 80;

/// Frobenius norm, max-abs entry, and a power-method spectral-norm estimate.
#[derive(Debug, Clone, Copy)]
pub struct MatrixNorms {
    pub frobenius: f64,
    pub max_abs: f64,
    /// Largest singular value estimated by power iteration on `A^T A`;
    /// an estimate, not a guaranteed bound.
    pub spectral_est: f64,
}

pub fn norms(op: &Operator) -> MatrixNorms {
    norms_mat(op.mat())
}

pub fn norms_mat(mat: &Mat) -> MatrixNorms {
    MatrixNorms {
        frobenius: mat.frobenius(),
        max_abs: mat.max_abs(),
        spectral_est: spectral_estimate(mat),
    }
}

fn spectral_estimate(mat: &Mat) -> f64 {
    let n = mat.dim();
    if n == 0 || mat.max_abs() == 0.0 {
        return 0.0;
    }
    let at = mat.transpose();
    // Deterministic start vector, slightly tilted to avoid landing exactly
    // in a non-dominant invariant subspace.
    let mut v: Vec<f64> = (0..n).map(|i| 1.0 + 1e-3 * i as f64).collect();
    normalize(&mut v);
    for _ in 0..POWER_ITERATIONS {
        let mut w = at.matvec(&mat.matvec(&v));
        if normalize(&mut w) == 0.0 {
            return 0.0;
        }
        v = w;
    }
    let av = mat.matvec(&v);
    av.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn normalize(v: &mut [f64]) -> f64 {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm > 0.0 {
        for x in v.iter_mut() {
            *x /= norm;
        }
    }
    norm
}
