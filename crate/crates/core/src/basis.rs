//! Tensor-product basis bookkeeping for qubits coupled to one oscillator mode.
//!
//! Basis ordering: qubit factors first (qubit 0 slowest), the truncated Fock
//! factor last. A basis index decodes as `(spins, n)` with
//! `index = q * fock_levels + n`, where `q` is the binary word formed by the
//! spins (up = 0, down = 1) and `n` is the Fock quantum number.

use crate::error::{Error, Result};

/// Spin-1/2 state in the `sigma_z` eigenbasis; `Up` has eigenvalue +1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Spin {
    Up,
    Down,
}

impl Spin {
    /// `sigma_z` eigenvalue: +1 for up, -1 for down.
    pub fn sign(self) -> f64 {
        match self {
            Spin::Up => 1.0,
            Spin::Down => -1.0,
        }
    }

    /// Position of the state inside one qubit factor (up first).
    pub fn slot(self) -> usize {
        match self {
            Spin::Up => 0,
            Spin::Down => 1,
        }
    }

    pub fn flipped(self) -> Spin {
        match self {
            Spin::Up => Spin::Down,
            Spin::Down => Spin::Up,
        }
    }

    /// Single-character tag used in labels and CSV output.
    pub fn tag(self) -> char {
        match self {
            Spin::Up => 'u',
            Spin::Down => 'd',
        }
    }
}

/// Pauli operator selector. `Y` alone is complex and therefore rejected by
/// the real-matrix operator constructors; `Plus`/`Minus` are the real ladder
/// combinations `(sigma_x +- i sigma_y)/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PauliAxis {
    X,
    Y,
    Z,
    Plus,
    Minus,
}

/// Shape of the truncated Hilbert space: `n_qubits` two-level systems and one
/// oscillator mode keeping Fock levels `0..fock_levels`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BasisSpec {
    n_qubits: usize,
    fock_levels: usize,
}

impl BasisSpec {
    /// A pure-oscillator basis (`n_qubits = 0`) is allowed so ladder
    /// operators can be built and tested in isolation.
    pub fn new(n_qubits: usize, fock_levels: usize) -> Result<Self> {
        if fock_levels == 0 {
            return Err(Error::InvalidBasis("fock_levels must be at least 1".into()));
        }
        if n_qubits >= usize::BITS as usize - 1 {
            return Err(Error::InvalidBasis(format!(
                "n_qubits = {n_qubits} is unreasonably large"
            )));
        }
        let dim = (1usize << n_qubits).checked_mul(fock_levels);
        match dim {
            Some(d) if d <= 1 << 24 => Ok(Self {
                n_qubits,
                fock_levels,
            }),
            _ => Err(Error::InvalidBasis("basis dimension overflow".into())),
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn fock_levels(&self) -> usize {
        self.fock_levels
    }

    /// Total dimension `2^n_qubits * fock_levels`.
    pub fn dimension(&self) -> usize {
        (1 << self.n_qubits) * self.fock_levels
    }

    /// Index of the product state `|spins> x |n>`.
    pub fn index_of(&self, spins: &[Spin], n: usize) -> usize {
        assert_eq!(spins.len(), self.n_qubits, "spin count mismatch");
        assert!(n < self.fock_levels, "Fock level out of range");
        let mut q = 0usize;
        for s in spins {
            q = (q << 1) | s.slot();
        }
        q * self.fock_levels + n
    }

    /// Decode a basis index into `(spins, fock_level)`.
    pub fn decode(&self, index: usize) -> (Vec<Spin>, usize) {
        assert!(index < self.dimension(), "basis index out of range");
        let n = index % self.fock_levels;
        let mut q = index / self.fock_levels;
        let mut spins = vec![Spin::Up; self.n_qubits];
        for j in (0..self.n_qubits).rev() {
            spins[j] = if q & 1 == 1 { Spin::Down } else { Spin::Up };
            q >>= 1;
        }
        (spins, n)
    }

    /// Spin of qubit `j` encoded in basis index `index`.
    pub fn spin_at(&self, index: usize, j: usize) -> Spin {
        debug_assert!(j < self.n_qubits);
        let q = index / self.fock_levels;
        let bit = (q >> (self.n_qubits - 1 - j)) & 1;
        if bit == 1 {
            Spin::Down
        } else {
            Spin::Up
        }
    }

    /// Fock level encoded in basis index `index`.
    pub fn fock_at(&self, index: usize) -> usize {
        index % self.fock_levels
    }

    /// Index obtained from `index` by flipping the spin of qubit `j`.
    pub fn flip_qubit(&self, index: usize, j: usize) -> usize {
        debug_assert!(j < self.n_qubits);
        let n = index % self.fock_levels;
        let q = index / self.fock_levels;
        let flipped = q ^ (1 << (self.n_qubits - 1 - j));
        flipped * self.fock_levels + n
    }
}
