//! Dense real-symmetric eigendecomposition.
//!
//! Two textbook paths, picked by dimension: cyclic Jacobi up to
//! [`JACOBI_MAX_DIM`], Householder tridiagonalization followed by
//! implicit-shift QL above it (the EISPACK `tred2`/`tql2` pair). Both run a
//! fixed sweep order and a fixed convergence schedule, so identical input
//! yields identical output.

// Index-style loops below mirror the classic EISPACK control flow.
#![allow(clippy::needless_range_loop)]

use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::operator::{Operator, Symmetry};

/// Largest dimension handled by the Jacobi path.
pub const JACOBI_MAX_DIM: usize = 64;

const JACOBI_MAX_SWEEPS: usize = 60;
const QL_MAX_ITER: usize = 60;

/// Sorted spectrum of a symmetric operator: ascending eigenvalues with
/// orthonormal eigenvectors stored as matrix columns.
///
/// Within a degenerate cluster the eigenvector basis is solver-defined;
/// consumers must work with overlaps or subspace projectors, never with the
/// identity of individual degenerate eigenvectors.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    eigenvalues: Vec<f64>,
    eigenvectors: Mat,
}

impl EigenDecomposition {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvalue(&self, i: usize) -> f64 {
        self.eigenvalues[i]
    }

    /// Matrix whose `i`-th column is the eigenvector of `eigenvalue(i)`.
    pub fn eigenvectors(&self) -> &Mat {
        &self.eigenvectors
    }

    pub fn eigenvector(&self, i: usize) -> Vec<f64> {
        self.eigenvectors.column(i)
    }

    /// Squared component of eigenvector `i` on canonical basis state `b`.
    pub fn overlap_sq(&self, i: usize, b: usize) -> f64 {
        let v = self.eigenvectors[(b, i)];
        v * v
    }
}

/// Full spectrum of a symmetric operator.
pub fn eig_sym(op: &Operator) -> Result<EigenDecomposition> {
    if op.symmetry() != Symmetry::Symmetric {
        return Err(Error::NotSymmetric);
    }
    if !op.mat().is_finite() {
        return Err(Error::NonFinite);
    }
    eig_sym_mat(op.mat())
}

/// Full spectrum of a symmetric matrix (no operator metadata).
pub fn eig_sym_mat(mat: &Mat) -> Result<EigenDecomposition> {
    let n = mat.dim();
    let (values, vectors) = if n <= JACOBI_MAX_DIM {
        jacobi(mat)?
    } else {
        householder_ql(mat)?
    };
    Ok(sorted_decomposition(values, vectors))
}

/// Sort ascending, then canonicalize each eigenvector's sign so the entry of
/// largest magnitude (first such entry on ties) is positive.
fn sorted_decomposition(values: Vec<f64>, vectors: Mat) -> EigenDecomposition {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));

    let eigenvalues: Vec<f64> = order.iter().map(|&i| values[i]).collect();
    let mut eigenvectors = Mat::zeros(n);
    for (new_col, &old_col) in order.iter().enumerate() {
        let mut pivot = 0usize;
        let mut best = -1.0f64;
        for row in 0..n {
            let a = vectors[(row, old_col)].abs();
            if a > best {
                best = a;
                pivot = row;
            }
        }
        let flip = if vectors[(pivot, old_col)] < 0.0 {
            -1.0
        } else {
            1.0
        };
        for row in 0..n {
            eigenvectors[(row, new_col)] = flip * vectors[(row, old_col)];
        }
    }
    EigenDecomposition {
        eigenvalues,
        eigenvectors,
    }
}

/// Cyclic Jacobi: sweeps over the upper triangle in row order, rotating away
/// each off-diagonal element, until the off-diagonal mass is negligible.
fn jacobi(mat: &Mat) -> Result<(Vec<f64>, Mat)> {
    let n = mat.dim();
    let mut a = mat.clone();
    let mut v = Mat::identity(n);
    if n <= 1 {
        return Ok(((0..n).map(|i| a[(i, i)]).collect(), v));
    }

    let scale = mat.frobenius().max(f64::MIN_POSITIVE);
    let tol = 1e-15 * scale;

    for _sweep in 0..JACOBI_MAX_SWEEPS {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a[(p, q)] * a[(p, q)];
            }
        }
        if (2.0 * off).sqrt() <= tol {
            return Ok(((0..n).map(|i| a[(i, i)]).collect(), v));
        }

        for p in 0..(n - 1) {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                // Stable rotation angle (Golub & Van Loan).
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    -1.0 / (-theta + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
                a[(p, q)] = 0.0;
                a[(q, p)] = 0.0;
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }

    let mut max_off = 0.0f64;
    for p in 0..n {
        for q in (p + 1)..n {
            max_off = max_off.max(a[(p, q)].abs());
        }
    }
    Err(Error::EigenNonConvergence {
        iterations: JACOBI_MAX_SWEEPS,
        max_off_diagonal: max_off,
    })
}

/// Householder reduction to tridiagonal form with accumulated
/// transformations, then implicit-shift QL. Classic EISPACK/JAMA routine.
fn householder_ql(mat: &Mat) -> Result<(Vec<f64>, Mat)> {
    let n = mat.dim();
    let mut v = mat.clone();
    let mut d = vec![0.0f64; n];
    let mut e = vec![0.0f64; n];

    // --- tred2: reduce to tridiagonal, accumulating transformations in v.
    for j in 0..n {
        d[j] = v[(n - 1, j)];
    }

    for i in (1..n).rev() {
        let mut scale = 0.0f64;
        let mut h = 0.0f64;
        for k in 0..i {
            scale += d[k].abs();
        }
        if scale == 0.0 {
            e[i] = d[i - 1];
            for j in 0..i {
                d[j] = v[(i - 1, j)];
                v[(i, j)] = 0.0;
                v[(j, i)] = 0.0;
            }
        } else {
            for k in 0..i {
                d[k] /= scale;
                h += d[k] * d[k];
            }
            let f = d[i - 1];
            let mut g = h.sqrt();
            if f > 0.0 {
                g = -g;
            }
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            for j in 0..i {
                e[j] = 0.0;
            }

            for j in 0..i {
                let f = d[j];
                v[(j, i)] = f;
                let mut g = e[j] + v[(j, j)] * f;
                for k in (j + 1)..i {
                    g += v[(k, j)] * d[k];
                    e[k] += v[(k, j)] * f;
                }
                e[j] = g;
            }
            let mut f = 0.0f64;
            for j in 0..i {
                e[j] /= h;
                f += e[j] * d[j];
            }
            let hh = f / (h + h);
            for j in 0..i {
                e[j] -= hh * d[j];
            }
            for j in 0..i {
                let f = d[j];
                let g = e[j];
                for k in j..i {
                    v[(k, j)] -= f * e[k] + g * d[k];
                }
                d[j] = v[(i - 1, j)];
                v[(i, j)] = 0.0;
            }
        }
        d[i] = h;
    }

    for i in 0..(n - 1) {
        v[(n - 1, i)] = v[(i, i)];
        v[(i, i)] = 1.0;
        let h = d[i + 1];
        if h != 0.0 {
            for k in 0..=i {
                d[k] = v[(k, i + 1)] / h;
            }
            for j in 0..=i {
                let mut g = 0.0f64;
                for k in 0..=i {
                    g += v[(k, i + 1)] * v[(k, j)];
                }
                for k in 0..=i {
                    v[(k, j)] -= g * d[k];
                }
            }
        }
        for k in 0..=i {
            v[(k, i + 1)] = 0.0;
        }
    }
    for j in 0..n {
        d[j] = v[(n - 1, j)];
        v[(n - 1, j)] = 0.0;
    }
    v[(n - 1, n - 1)] = 1.0;
    e[0] = 0.0;

    // --- tql2: implicit-shift QL on the tridiagonal matrix.
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;

    let eps = f64::EPSILON;
    let mut f = 0.0f64;
    let mut tst1 = 0.0f64;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n {
            if e[m].abs() <= eps * tst1 {
                break;
            }
            m += 1;
        }
        if m >= n {
            m = n - 1;
        }

        if m > l {
            let mut iter = 0usize;
            loop {
                iter += 1;
                if iter > QL_MAX_ITER {
                    return Err(Error::EigenNonConvergence {
                        iterations: QL_MAX_ITER,
                        max_off_diagonal: e[l].abs(),
                    });
                }

                // Implicit shift from the 2x2 leading block.
                let g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for i in (l + 2)..n {
                    d[i] -= h;
                }
                f += h;

                p = d[m];
                let mut c = 1.0f64;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0f64;
                let mut s2 = 0.0f64;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g = c * e[i];
                    h = c * p;
                    let r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);

                    for k in 0..n {
                        let h = v[(k, i + 1)];
                        v[(k, i + 1)] = s * v[(k, i)] + c * h;
                        v[(k, i)] = c * v[(k, i)] - s * h;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;

                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }

    Ok((d, v))
}
