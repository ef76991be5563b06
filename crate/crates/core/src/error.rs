use thiserror::Error;

/// Errors from operator construction, linear algebra, and spectral analysis.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("invalid basis: {0}")]
    InvalidBasis(String),

    #[error("basis mismatch between operands")]
    BasisMismatch,

    #[error("qubit index {index} out of range for {n_qubits} qubit(s)")]
    QubitIndexOutOfRange { index: usize, n_qubits: usize },

    #[error("complex operator unsupported")]
    ComplexOperatorUnsupported,

    #[error("empty operator combination")]
    EmptyCombination,

    #[error("operator is not flagged symmetric")]
    NotSymmetric,

    #[error("eigensolver did not converge after {iterations} iterations (max off-diagonal {max_off_diagonal:e})")]
    EigenNonConvergence {
        iterations: usize,
        max_off_diagonal: f64,
    },

    #[error("matrix contains non-finite entries")]
    NonFinite,

    #[error("invalid system: {0}")]
    InvalidSystem(String),

    #[error("zero detuning on qubit {qubit}: epsilon equals omega")]
    ZeroDetuning { qubit: usize },

    #[error("model {model} requires {expected}, got {actual} qubit(s)")]
    QubitCountMismatch {
        model: &'static str,
        expected: &'static str,
        actual: usize,
    },

    #[error("state vector length {len} does not match basis dimension {dim}")]
    StateDimensionMismatch { len: usize, dim: usize },

    #[error("invalid density matrix: {0}")]
    InvalidDensityMatrix(String),

    #[error("branch classification failed: {0}")]
    ClassificationFailed(String),

    #[error("spectrum not converged at Fock cutoff cap {cap} (last change {last_change:e})")]
    CutoffCapExceeded { cap: usize, last_change: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
