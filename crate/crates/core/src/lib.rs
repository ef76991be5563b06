//! Dispersive theory of qubit-oscillator systems in truncated Fock space.
//!
//! The crate builds the full qubit-oscillator Hamiltonian and its
//! rotating-wave and dispersive effective models as dense real matrices,
//! diagonalizes them exactly, and compares the numerically measured
//! qubit-state dependent oscillator frequency shifts against the closed-form
//! predictions, both within the rotating-wave approximation and beyond it.
//! For several qubits in one resonator it exposes the oscillator-mediated
//! qubit-qubit couplings (XY type within the rotating wave, Ising type
//! beyond) and the resulting ground-state entanglement.
//!
//! Conventions: `hbar = 1`, all energies in units of the oscillator
//! frequency, and every operator is a real matrix over the ordered basis
//! of qubit states tensor Fock levels.

pub mod basis;
pub mod dispersive;
pub mod error;
pub mod linalg;
pub mod matrix;
pub mod model;
pub mod operator;
pub mod spectral;

pub use basis::{BasisSpec, PauliAxis, Spin};
pub use dispersive::{
    coupling_matrix, dispersive_params, shift_prediction, validity_report, DispersiveParams,
    QubitValidity, ShiftPrediction, ValidityReport, ValidityThresholds,
};
pub use error::{Error, Result};
pub use linalg::{eig_sym, expm, norms, EigenDecomposition, MatrixNorms};
pub use matrix::Mat;
pub use model::{
    build_generator, build_hamiltonian, excitation_number, transform_frame, EffectiveModelKind,
    QubitParams, SystemSpec,
};
pub use operator::{interior_max_abs_diff, Operator, Symmetry};
pub use spectral::{
    classify_branches, converged_spectrum, converged_spectrum_of, frame_residual, numeric_shift,
    numeric_shift_with_cutoff, reduced_two_qubit_state, BranchLabel, Classification,
    ClassifiedState, Cutoff, DispersiveChain, FrameResidual, NumericShift, ShiftRecord,
    TwoQubitState,
};
