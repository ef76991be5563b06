//! Hamiltonians and frame-transformation generators for qubits coupled to a
//! single oscillator mode, with hbar = 1 and energies in units of the
//! oscillator frequency.
//!
//! Five model kinds are built as exact term-by-term transcriptions:
//! the full multi-qubit model with both rotating and counter-rotating
//! coupling, its rotating-wave truncations (Jaynes-Cummings for one qubit,
//! Tavis-Cummings for several), and the two effective dispersive models
//! obtained by the second-order frame transformation with and without the
//! counter-rotating generator terms.

use crate::basis::{BasisSpec, PauliAxis};
use crate::error::{Error, Result};
use crate::linalg::expm;
use crate::operator::{Operator, Symmetry};

/// Physical parameters of one qubit: level splitting and dipole coupling,
/// both in units of the oscillator frequency unless stated otherwise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitParams {
    pub epsilon: f64,
    pub g: f64,
}

impl QubitParams {
    pub fn new(epsilon: f64, g: f64) -> Result<Self> {
        if !epsilon.is_finite() || epsilon < 0.0 {
            return Err(Error::InvalidSystem(format!(
                "qubit splitting must be finite and non-negative, got {epsilon}"
            )));
        }
        if !g.is_finite() || g < 0.0 {
            return Err(Error::InvalidSystem(format!(
                "coupling must be finite and non-negative, got {g}"
            )));
        }
        Ok(Self { epsilon, g })
    }
}

/// Full description of a model instance: qubit list, oscillator frequency,
/// and the Fock truncation. The single source of truth for builders and
/// spectral analysis.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemSpec {
    qubits: Vec<QubitParams>,
    omega: f64,
    fock_levels: usize,
}

impl SystemSpec {
    pub fn new(qubits: Vec<QubitParams>, omega: f64, fock_levels: usize) -> Result<Self> {
        if qubits.is_empty() {
            return Err(Error::InvalidSystem("at least one qubit required".into()));
        }
        if !(omega.is_finite() && omega > 0.0) {
            return Err(Error::InvalidSystem(format!(
                "oscillator frequency must be positive, got {omega}"
            )));
        }
        if fock_levels < 2 {
            return Err(Error::InvalidSystem(
                "at least two Fock levels required".into(),
            ));
        }
        for q in &qubits {
            QubitParams::new(q.epsilon, q.g)?;
        }
        Ok(Self {
            qubits,
            omega,
            fock_levels,
        })
    }

    pub fn single(epsilon: f64, g: f64, omega: f64, fock_levels: usize) -> Result<Self> {
        Self::new(vec![QubitParams::new(epsilon, g)?], omega, fock_levels)
    }

    pub fn qubits(&self) -> &[QubitParams] {
        &self.qubits
    }

    pub fn n_qubits(&self) -> usize {
        self.qubits.len()
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn fock_levels(&self) -> usize {
        self.fock_levels
    }

    pub fn basis(&self) -> BasisSpec {
        BasisSpec::new(self.qubits.len(), self.fock_levels).expect("validated on construction")
    }

    /// Detuning of qubit `j`: `epsilon_j - omega`.
    pub fn detuning(&self, j: usize) -> f64 {
        self.qubits[j].epsilon - self.omega
    }

    /// Counter-rotating denominator of qubit `j`: `epsilon_j + omega`.
    pub fn nu(&self, j: usize) -> f64 {
        self.qubits[j].epsilon + self.omega
    }

    pub fn with_fock_levels(&self, fock_levels: usize) -> Result<Self> {
        Self::new(self.qubits.clone(), self.omega, fock_levels)
    }

    pub fn with_couplings_scaled(&self, factor: f64) -> Result<Self> {
        let qubits = self
            .qubits
            .iter()
            .map(|q| QubitParams::new(q.epsilon, q.g * factor))
            .collect::<Result<Vec<_>>>()?;
        Self::new(qubits, self.omega, self.fock_levels)
    }

    fn require_nonzero_detunings(&self) -> Result<()> {
        for j in 0..self.qubits.len() {
            if self.detuning(j) == 0.0 {
                return Err(Error::ZeroDetuning { qubit: j });
            }
        }
        Ok(())
    }
}

/// Selects which Hamiltonian to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EffectiveModelKind {
    /// Full qubit-oscillator model with both coupling sectors.
    FullRabi,
    /// Rotating-wave model for exactly one qubit.
    JaynesCummingsRwa,
    /// Rotating-wave model for any number of qubits.
    TavisCummingsRwa,
    /// Second-order dispersive model derived within the rotating-wave
    /// approximation; effective qubit-qubit coupling is of XY type.
    DispersiveRwa,
    /// Second-order dispersive model keeping counter-rotating terms;
    /// effective qubit-qubit coupling is of Ising type.
    DispersiveNonRwa,
}

impl EffectiveModelKind {
    pub const ALL: [EffectiveModelKind; 5] = [
        EffectiveModelKind::FullRabi,
        EffectiveModelKind::JaynesCummingsRwa,
        EffectiveModelKind::TavisCummingsRwa,
        EffectiveModelKind::DispersiveRwa,
        EffectiveModelKind::DispersiveNonRwa,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            EffectiveModelKind::FullRabi => "full_rabi",
            EffectiveModelKind::JaynesCummingsRwa => "jaynes_cummings_rwa",
            EffectiveModelKind::TavisCummingsRwa => "tavis_cummings_rwa",
            EffectiveModelKind::DispersiveRwa => "dispersive_rwa",
            EffectiveModelKind::DispersiveNonRwa => "dispersive_nonrwa",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|k| k.name() == name)
    }
}

impl std::fmt::Display for EffectiveModelKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Uncoupled part: sum of qubit splittings plus the oscillator energy.
fn bare_hamiltonian(spec: &SystemSpec) -> Operator {
    let basis = spec.basis();
    let mut terms: Vec<(f64, Operator)> = vec![(spec.omega, Operator::number(basis))];
    for (j, q) in spec.qubits.iter().enumerate() {
        terms.push((
            0.5 * q.epsilon,
            Operator::pauli(basis, j, PauliAxis::Z).expect("validated index"),
        ));
    }
    let refs: Vec<(f64, &Operator)> = terms.iter().map(|(c, op)| (*c, op)).collect();
    Operator::weighted_sum(&refs).expect("shared basis")
}

/// Build the requested Hamiltonian for `spec`. The result is exactly
/// symmetric; dispersive kinds require nonzero detuning on every qubit.
pub fn build_hamiltonian(spec: &SystemSpec, kind: EffectiveModelKind) -> Result<Operator> {
    let basis = spec.basis();
    let n_qubits = spec.n_qubits();

    let h =
        match kind {
            EffectiveModelKind::FullRabi => {
                let mut terms: Vec<(f64, Operator)> = vec![(1.0, bare_hamiltonian(spec))];
                for (j, q) in spec.qubits.iter().enumerate() {
                    // sigma_x (a^T + a) = X_plus + Y_plus, both exactly symmetric.
                    terms.push((q.g, Operator::co_rotating_sum(basis, j)?));
                    terms.push((q.g, Operator::counter_rotating_sum(basis, j)?));
                }
                weighted(&terms)
            }
            EffectiveModelKind::JaynesCummingsRwa => {
                if n_qubits != 1 {
                    return Err(Error::QubitCountMismatch {
                        model: "jaynes_cummings_rwa",
                        expected: "exactly one qubit",
                        actual: n_qubits,
                    });
                }
                let terms = vec![
                    (1.0, bare_hamiltonian(spec)),
                    (spec.qubits[0].g, Operator::co_rotating_sum(basis, 0)?),
                ];
                weighted(&terms)
            }
            EffectiveModelKind::TavisCummingsRwa => {
                let mut terms: Vec<(f64, Operator)> = vec![(1.0, bare_hamiltonian(spec))];
                for (j, q) in spec.qubits.iter().enumerate() {
                    terms.push((q.g, Operator::co_rotating_sum(basis, j)?));
                }
                weighted(&terms)
            }
            EffectiveModelKind::DispersiveRwa => {
                spec.require_nonzero_detunings()?;
                let number = Operator::number(basis);
                let mut terms: Vec<(f64, Operator)> = vec![(spec.omega, number.clone())];
                for (j, q) in spec.qubits.iter().enumerate() {
                    let z = Operator::pauli(basis, j, PauliAxis::Z)?;
                    let chi = q.g * q.g / spec.detuning(j);
                    terms.push((0.5 * (q.epsilon + chi), z.clone()));
                    terms.push((chi, z.matmul(&number)?));
                }
                for j in 1..n_qubits {
                    for k in 0..j {
                        let coupling = xy_exchange(basis, j, k)?;
                        terms.push((coupling_strength_rwa(spec, j, k), coupling));
                    }
                }
                weighted(&terms)
            }
            EffectiveModelKind::DispersiveNonRwa => {
                spec.require_nonzero_detunings()?;
                let quad = Operator::quadrature(basis);
                let quad_sq = quad.matmul(&quad)?;
                let mut terms: Vec<(f64, Operator)> = vec![(1.0, bare_hamiltonian(spec))];
                for (j, q) in spec.qubits.iter().enumerate() {
                    let z = Operator::pauli(basis, j, PauliAxis::Z)?;
                    let coeff = 0.5 * q.g * q.g * (1.0 / spec.detuning(j) + 1.0 / spec.nu(j));
                    terms.push((coeff, z.matmul(&quad_sq)?));
                }
                for j in 1..n_qubits {
                    for k in 0..j {
                        let xx = Operator::pauli(basis, j, PauliAxis::X)?
                            .matmul(&Operator::pauli(basis, k, PauliAxis::X)?)?;
                        terms.push((coupling_strength_nonrwa(spec, j, k), xx));
                    }
                }
                weighted(&terms)
            }
        };

    debug_assert_eq!(h.symmetry(), Symmetry::Symmetric);
    Ok(h)
}

/// `sigma_minus_j sigma_plus_k + sigma_plus_j sigma_minus_k`, exactly
/// symmetric.
fn xy_exchange(basis: BasisSpec, j: usize, k: usize) -> Result<Operator> {
    let sm_j = Operator::pauli(basis, j, PauliAxis::Minus)?;
    let sp_j = Operator::pauli(basis, j, PauliAxis::Plus)?;
    let sm_k = Operator::pauli(basis, k, PauliAxis::Minus)?;
    let sp_k = Operator::pauli(basis, k, PauliAxis::Plus)?;
    let a = sm_j.matmul(&sp_k)?;
    let b = sp_j.matmul(&sm_k)?;
    a.add(&b)
}

/// Oscillator-mediated qubit-qubit coupling within the rotating-wave chain:
/// `g_j g_k (1/Delta_j + 1/Delta_k)`.
pub fn coupling_strength_rwa(spec: &SystemSpec, j: usize, k: usize) -> f64 {
    spec.qubits[j].g * spec.qubits[k].g * (1.0 / spec.detuning(j) + 1.0 / spec.detuning(k))
}

/// Coupling beyond the rotating wave:
/// `g_j g_k (1/Delta_j + 1/Delta_k - 1/nu_j - 1/nu_k)`.
pub fn coupling_strength_nonrwa(spec: &SystemSpec, j: usize, k: usize) -> f64 {
    spec.qubits[j].g
        * spec.qubits[k].g
        * (1.0 / spec.detuning(j) + 1.0 / spec.detuning(k) - 1.0 / spec.nu(j) - 1.0 / spec.nu(k))
}

/// Antisymmetric generator of the dispersive frame transformation:
/// `sum_j lambda_j X_minus_j` when `rwa_only`, otherwise
/// `sum_j lambda_j X_minus_j + lambda_bar_j Y_minus_j`, with
/// `lambda_j = g_j / Delta_j` and `lambda_bar_j = g_j / nu_j`.
pub fn build_generator(spec: &SystemSpec, rwa_only: bool) -> Result<Operator> {
    spec.require_nonzero_detunings()?;
    let basis = spec.basis();
    let mut terms: Vec<(f64, Operator)> = Vec::new();
    for (j, q) in spec.qubits.iter().enumerate() {
        let lambda = q.g / spec.detuning(j);
        terms.push((lambda, Operator::co_rotating_diff(basis, j)?));
        if !rwa_only {
            let lambda_bar = q.g / spec.nu(j);
            terms.push((lambda_bar, Operator::counter_rotating_diff(basis, j)?));
        }
    }
    weighted_res(&terms)
}

/// Conjugate `H` by the exponential of the (not yet exponentiated)
/// generator: `exp(G)^T H exp(G)`. Unitary similarity, so the spectrum is
/// preserved; the result is re-symmetrized to keep the flag exact.
pub fn transform_frame(h: &Operator, generator: &Operator) -> Result<Operator> {
    if h.basis() != generator.basis() {
        return Err(Error::BasisMismatch);
    }
    let d = expm(generator)?;
    let product = d.transpose().matmul(h)?.matmul(&d)?;
    if h.symmetry() == Symmetry::Symmetric {
        Ok(product.symmetrized())
    } else {
        Ok(product)
    }
}

/// Total excitation number `sum_j (sigma_z_j + 1)/2 + a^T a`.
pub fn excitation_number(basis: BasisSpec) -> Operator {
    let dim = basis.dimension();
    let mut mat = crate::matrix::Mat::zeros(dim);
    for idx in 0..dim {
        let mut count = basis.fock_at(idx) as f64;
        for j in 0..basis.n_qubits() {
            if basis.spin_at(idx, j) == crate::basis::Spin::Up {
                count += 1.0;
            }
        }
        mat[(idx, idx)] = count;
    }
    Operator::from_mat(basis, mat)
}

fn weighted(terms: &[(f64, Operator)]) -> Operator {
    let refs: Vec<(f64, &Operator)> = terms.iter().map(|(c, op)| (*c, op)).collect();
    Operator::weighted_sum(&refs).expect("shared basis by construction")
}

fn weighted_res(terms: &[(f64, Operator)]) -> Result<Operator> {
    let refs: Vec<(f64, &Operator)> = terms.iter().map(|(c, op)| (*c, op)).collect();
    Operator::weighted_sum(&refs)
}
