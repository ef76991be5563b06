//! Real matrix exponential by scaling and squaring around a truncated
//! Taylor core.
//!
//! The argument is scaled until its 1-norm is at most 0.5, the exponential
//! of the scaled matrix is evaluated with a degree-13 Taylor polynomial in
//! Horner form (truncation error below 1e-15 at that norm), and the result
//! is squared back up.

use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::operator::Operator;

const SCALING_THRESHOLD: f64 = 0.5;
const TAYLOR_ORDER: usize = 13;

/// `exp(G)` for any real square operator. For an antisymmetric generator the
/// result is orthogonal to within roughly 1e-14.
pub fn expm(op: &Operator) -> Result<Operator> {
    Ok(Operator::from_mat(op.basis(), expm_mat(op.mat())?))
}

/// `exp(G)` on a bare matrix.
pub fn expm_mat(g: &Mat) -> Result<Mat> {
    if !g.is_finite() {
        return Err(Error::NonFinite);
    }
    let n = g.dim();
    let norm = g.one_norm();

    let squarings = if norm <= SCALING_THRESHOLD {
        0u32
    } else {
        (norm / SCALING_THRESHOLD).log2().ceil() as u32
    };
    let scaled = g.scaled(0.5f64.powi(squarings as i32));

    // Horner evaluation of I + X + X^2/2! + ... + X^13/13!.
    let identity = Mat::identity(n);
    let mut acc = identity.clone();
    for k in (1..=TAYLOR_ORDER).rev() {
        let mut next = scaled.matmul(&acc).scaled(1.0 / k as f64);
        next = next.add(&identity);
        acc = next;
    }

    for _ in 0..squarings {
        acc = acc.matmul(&acc);
    }
    Ok(acc)
}
