//! Qubit and oscillator operators on a truncated tensor-product basis.
//!
//! Everything in scope is a real matrix: `sigma_x`, `sigma_z`, the ladder
//! combinations `sigma_plus`/`sigma_minus`, and the oscillator operators all
//! have real entries in the chosen basis. A request for a lone `sigma_y` is
//! rejected rather than silently approximated.
//!
//! Symmetric and antisymmetric constructions are exact: mirrored entries are
//! assigned from the same floating-point value, so the symmetry flag is a
//! bitwise guarantee, not a tolerance.

use crate::basis::{BasisSpec, PauliAxis, Spin};
use crate::error::{Error, Result};
use crate::matrix::Mat;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Symmetry {
    Symmetric,
    Antisymmetric,
    General,
}

/// Dense real operator over a [`BasisSpec`], tagged with its exact symmetry.
#[derive(Debug, Clone, PartialEq)]
pub struct Operator {
    basis: BasisSpec,
    mat: Mat,
    symmetry: Symmetry,
}

fn classify(mat: &Mat) -> Symmetry {
    if mat.is_symmetric_exact() {
        Symmetry::Symmetric
    } else if mat.is_antisymmetric_exact() {
        Symmetry::Antisymmetric
    } else {
        Symmetry::General
    }
}

impl Operator {
    pub fn from_mat(basis: BasisSpec, mat: Mat) -> Self {
        assert_eq!(
            mat.dim(),
            basis.dimension(),
            "matrix dimension must match basis"
        );
        let symmetry = classify(&mat);
        Self {
            basis,
            mat,
            symmetry,
        }
    }

    pub fn zero(basis: BasisSpec) -> Self {
        Self {
            mat: Mat::zeros(basis.dimension()),
            basis,
            symmetry: Symmetry::Symmetric,
        }
    }

    pub fn identity(basis: BasisSpec) -> Self {
        Self {
            mat: Mat::identity(basis.dimension()),
            basis,
            symmetry: Symmetry::Symmetric,
        }
    }

    pub fn basis(&self) -> BasisSpec {
        self.basis
    }

    pub fn mat(&self) -> &Mat {
        &self.mat
    }

    pub fn into_mat(self) -> Mat {
        self.mat
    }

    pub fn symmetry(&self) -> Symmetry {
        self.symmetry
    }

    pub fn dimension(&self) -> usize {
        self.mat.dim()
    }

    /// Annihilation operator `a`: `<n-1|a|n> = sqrt(n)`, identity on qubits.
    pub fn annihilator(basis: BasisSpec) -> Self {
        let dim = basis.dimension();
        let mut mat = Mat::zeros(dim);
        for idx in 0..dim {
            let n = basis.fock_at(idx);
            if n >= 1 {
                mat[(idx - 1, idx)] = (n as f64).sqrt();
            }
        }
        Self {
            basis,
            mat,
            symmetry: Symmetry::General,
        }
    }

    /// Creation operator `a^T` (transpose of [`Operator::annihilator`]).
    pub fn creator(basis: BasisSpec) -> Self {
        let a = Self::annihilator(basis);
        Self {
            basis,
            mat: a.mat.transpose(),
            symmetry: Symmetry::General,
        }
    }

    /// Number operator `a^T a`, diagonal with entries `0..fock_levels`.
    pub fn number(basis: BasisSpec) -> Self {
        let dim = basis.dimension();
        let mut mat = Mat::zeros(dim);
        for idx in 0..dim {
            mat[(idx, idx)] = basis.fock_at(idx) as f64;
        }
        Self {
            basis,
            mat,
            symmetry: Symmetry::Symmetric,
        }
    }

    /// Field quadrature `a + a^T`, exactly symmetric by construction.
    pub fn quadrature(basis: BasisSpec) -> Self {
        let dim = basis.dimension();
        let mut mat = Mat::zeros(dim);
        for idx in 0..dim {
            let n = basis.fock_at(idx);
            if n >= 1 {
                let v = (n as f64).sqrt();
                mat[(idx - 1, idx)] = v;
                mat[(idx, idx - 1)] = v;
            }
        }
        Self {
            basis,
            mat,
            symmetry: Symmetry::Symmetric,
        }
    }

    /// Pauli operator on qubit `j`, identity elsewhere.
    ///
    /// Conventions: `sigma_z |up> = +|up>`, and the ladder operators are the
    /// real matrices with a single unit entry, `sigma_plus |down> = |up>`.
    /// A lone `sigma_y` has imaginary entries and is rejected.
    pub fn pauli(basis: BasisSpec, j: usize, axis: PauliAxis) -> Result<Self> {
        if j >= basis.n_qubits() {
            return Err(Error::QubitIndexOutOfRange {
                index: j,
                n_qubits: basis.n_qubits(),
            });
        }
        let dim = basis.dimension();
        let mut mat = Mat::zeros(dim);
        for idx in 0..dim {
            let spin = basis.spin_at(idx, j);
            match axis {
                PauliAxis::Z => {
                    mat[(idx, idx)] = spin.sign();
                }
                PauliAxis::X => {
                    mat[(basis.flip_qubit(idx, j), idx)] = 1.0;
                }
                PauliAxis::Plus => {
                    if spin == Spin::Down {
                        mat[(basis.flip_qubit(idx, j), idx)] = 1.0;
                    }
                }
                PauliAxis::Minus => {
                    if spin == Spin::Up {
                        mat[(basis.flip_qubit(idx, j), idx)] = 1.0;
                    }
                }
                PauliAxis::Y => return Err(Error::ComplexOperatorUnsupported),
            }
        }
        let symmetry = match axis {
            PauliAxis::Z | PauliAxis::X => Symmetry::Symmetric,
            _ => Symmetry::General,
        };
        Ok(Self {
            basis,
            mat,
            symmetry,
        })
    }

    /// Co-rotating coupling `sigma_minus a^T + sigma_plus a` for qubit `j`
    /// (the excitation-conserving pair). Exactly symmetric.
    pub fn co_rotating_sum(basis: BasisSpec, j: usize) -> Result<Self> {
        Self::co_rotating(basis, j, 1.0)
    }

    /// Antisymmetric co-rotating combination
    /// `sigma_minus a^T - sigma_plus a` for qubit `j`.
    pub fn co_rotating_diff(basis: BasisSpec, j: usize) -> Result<Self> {
        Self::co_rotating(basis, j, -1.0)
    }

    /// Counter-rotating coupling `sigma_plus a^T + sigma_minus a` for qubit
    /// `j` (creates or destroys two excitations). Exactly symmetric.
    pub fn counter_rotating_sum(basis: BasisSpec, j: usize) -> Result<Self> {
        Self::counter_rotating(basis, j, 1.0)
    }

    /// Antisymmetric counter-rotating combination
    /// `sigma_minus a - sigma_plus a^T` for qubit `j`.
    pub fn counter_rotating_diff(basis: BasisSpec, j: usize) -> Result<Self> {
        Self::counter_rotating(basis, j, -1.0)
    }

    fn co_rotating(basis: BasisSpec, j: usize, sign: f64) -> Result<Self> {
        if j >= basis.n_qubits() {
            return Err(Error::QubitIndexOutOfRange {
                index: j,
                n_qubits: basis.n_qubits(),
            });
        }
        let dim = basis.dimension();
        let nf = basis.fock_levels();
        let mut mat = Mat::zeros(dim);
        for idx in 0..dim {
            // |up, n> couples to |down, n+1> with amplitude sqrt(n+1).
            if basis.spin_at(idx, j) == Spin::Up {
                let n = basis.fock_at(idx);
                if n + 1 < nf {
                    let partner = basis.flip_qubit(idx, j) + 1;
                    let v = ((n + 1) as f64).sqrt();
                    mat[(partner, idx)] = v; // sigma_minus a^T
                    mat[(idx, partner)] = sign * v; // +- sigma_plus a
                }
            }
        }
        let symmetry = if sign > 0.0 {
            Symmetry::Symmetric
        } else {
            Symmetry::Antisymmetric
        };
        Ok(Self {
            basis,
            mat,
            symmetry,
        })
    }

    fn counter_rotating(basis: BasisSpec, j: usize, sign: f64) -> Result<Self> {
        if j >= basis.n_qubits() {
            return Err(Error::QubitIndexOutOfRange {
                index: j,
                n_qubits: basis.n_qubits(),
            });
        }
        let dim = basis.dimension();
        let nf = basis.fock_levels();
        let mut mat = Mat::zeros(dim);
        for idx in 0..dim {
            // |down, n> couples to |up, n+1> with amplitude sqrt(n+1).
            if basis.spin_at(idx, j) == Spin::Down {
                let n = basis.fock_at(idx);
                if n + 1 < nf {
                    let partner = basis.flip_qubit(idx, j) + 1;
                    let v = ((n + 1) as f64).sqrt();
                    if sign > 0.0 {
                        // sigma_plus a^T + sigma_minus a
                        mat[(partner, idx)] = v;
                        mat[(idx, partner)] = v;
                    } else {
                        // sigma_minus a - sigma_plus a^T
                        mat[(idx, partner)] = v;
                        mat[(partner, idx)] = -v;
                    }
                }
            }
        }
        let symmetry = if sign > 0.0 {
            Symmetry::Symmetric
        } else {
            Symmetry::Antisymmetric
        };
        Ok(Self {
            basis,
            mat,
            symmetry,
        })
    }

    /// Commutator `AB - BA`.
    pub fn commutator(&self, other: &Operator) -> Result<Operator> {
        if self.basis != other.basis {
            return Err(Error::BasisMismatch);
        }
        let ab = self.mat.matmul(&other.mat);
        let ba = other.mat.matmul(&self.mat);
        Ok(Operator::from_mat(self.basis, ab.sub(&ba)))
    }

    /// Weighted sum of operators over a shared basis; the symmetry flag of
    /// the result is recomputed from the entries.
    pub fn weighted_sum(terms: &[(f64, &Operator)]) -> Result<Operator> {
        let (_, first) = terms.first().ok_or(Error::EmptyCombination)?;
        let basis = first.basis;
        let mut mat = Mat::zeros(basis.dimension());
        for (coeff, op) in terms {
            if op.basis != basis {
                return Err(Error::BasisMismatch);
            }
            mat.add_scaled(*coeff, &op.mat);
        }
        Ok(Operator::from_mat(basis, mat))
    }

    pub fn matmul(&self, other: &Operator) -> Result<Operator> {
        if self.basis != other.basis {
            return Err(Error::BasisMismatch);
        }
        Ok(Operator::from_mat(self.basis, self.mat.matmul(&other.mat)))
    }

    pub fn scaled(&self, c: f64) -> Operator {
        Operator::from_mat(self.basis, self.mat.scaled(c))
    }

    pub fn add(&self, other: &Operator) -> Result<Operator> {
        if self.basis != other.basis {
            return Err(Error::BasisMismatch);
        }
        Ok(Operator::from_mat(self.basis, self.mat.add(&other.mat)))
    }

    pub fn sub(&self, other: &Operator) -> Result<Operator> {
        if self.basis != other.basis {
            return Err(Error::BasisMismatch);
        }
        Ok(Operator::from_mat(self.basis, self.mat.sub(&other.mat)))
    }

    pub fn transpose(&self) -> Operator {
        Operator::from_mat(self.basis, self.mat.transpose())
    }

    /// `(A + A^T)/2` with the symmetric flag set; used after frame
    /// transformations that are symmetric up to rounding.
    pub fn symmetrized(&self) -> Operator {
        Operator {
            basis: self.basis,
            mat: self.mat.symmetrized(),
            symmetry: Symmetry::Symmetric,
        }
    }

    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        self.mat.matvec(v)
    }

    pub fn max_abs(&self) -> f64 {
        self.mat.max_abs()
    }

    pub fn max_abs_diff(&self, other: &Operator) -> f64 {
        self.mat.max_abs_diff(&other.mat)
    }
}

/// Max-abs difference restricted to matrix entries whose row and column both
/// carry a Fock index of at most `max_fock`. Truncation corrupts the top
/// Fock levels, so identity checks compare on this interior block only.
pub fn interior_max_abs_diff(a: &Operator, b: &Operator, max_fock: usize) -> f64 {
    assert_eq!(a.basis(), b.basis(), "basis mismatch");
    let basis = a.basis();
    let dim = basis.dimension();
    let mut worst = 0.0f64;
    for i in 0..dim {
        if basis.fock_at(i) > max_fock {
            continue;
        }
        for j in 0..dim {
            if basis.fock_at(j) > max_fock {
                continue;
            }
            worst = worst.max((a.mat()[(i, j)] - b.mat()[(i, j)]).abs());
        }
    }
    worst
}
