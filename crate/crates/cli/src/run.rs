//! Sweep execution: one function per mode, each producing the complete CSV
//! as a string. Grid points are evaluated strictly in grid order; a failed
//! point never aborts a sweep, it leaves its numeric fields blank and sets
//! the flag column.

use qdisp_core::spectral::RELIABLE_OVERLAP;
use qdisp_core::{
    build_hamiltonian, classify_branches, converged_spectrum_of, coupling_matrix, eig_sym,
    excitation_number, frame_residual, numeric_shift_with_cutoff, reduced_two_qubit_state, Cutoff,
    DispersiveChain, EffectiveModelKind, Error as CoreError, QubitParams, Spin, SystemSpec,
};

use crate::config::{CutoffChoice, ModePayload, SweepConfig};
use crate::csv::{float_cell, int_cell, opt_float_cell, opt_int_cell, CsvTable};

/// Outcome of one run: the CSV bytes plus the number of grid points that
/// failed numerically (non-convergence at the cutoff cap).
pub struct RunOutput {
    pub csv: String,
    pub numerical_failures: usize,
}

/// Errors that abort a run outright.
#[derive(Debug)]
pub enum RunError {
    /// Invalid configuration or physics parameters; exit code 1.
    Config(String),
    /// Numerical failure in a single-result mode; exit code 2.
    Numerical(String),
}

impl std::fmt::Display for RunError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RunError::Config(m) => write!(f, "configuration error: {m}"),
            RunError::Numerical(m) => write!(f, "numerical failure: {m}"),
        }
    }
}

impl std::error::Error for RunError {}

fn classify_core_error(e: &CoreError) -> RunError {
    match e {
        CoreError::CutoffCapExceeded { .. } | CoreError::EigenNonConvergence { .. } => {
            RunError::Numerical(e.to_string())
        }
        _ => RunError::Config(e.to_string()),
    }
}

pub fn run(config: &SweepConfig) -> Result<RunOutput, RunError> {
    match &config.payload {
        ModePayload::ShiftSweep { .. } => run_shift_sweep(config),
        ModePayload::Spectrum { .. } => run_spectrum(config),
        ModePayload::EffectiveModel { .. } => run_effective_model(config),
        ModePayload::GroundState { .. } => run_ground_state(config),
        ModePayload::ResidualScan { .. } => run_residual_scan(config),
    }
}

fn cutoff_of(choice: CutoffChoice) -> Cutoff {
    match choice {
        CutoffChoice::Fixed(n) => Cutoff::Fixed(n),
        CutoffChoice::Auto => Cutoff::Auto,
    }
}

pub const SHIFT_SWEEP_HEADER: [&str; 13] = [
    "epsilon",
    "delta",
    "g",
    "spin",
    "shift_rwa",
    "shift_nonrwa",
    "shift_sqrt",
    "shift_numeric",
    "err_rwa",
    "err_nonrwa",
    "overlap_min",
    "n_used",
    "flag",
];

/// Frequency-shift sweep over the qubit-splitting grid: analytic
/// predictions for every point, numeric shift from exact diagonalization,
/// absolute errors, and the minimal branch overlap.
pub fn run_shift_sweep(config: &SweepConfig) -> Result<RunOutput, RunError> {
    let (grid, couplings, spin_choice) = match &config.payload {
        ModePayload::ShiftSweep {
            grid,
            couplings,
            spin,
        } => (grid, couplings, *spin),
        _ => unreachable!("payload checked by caller"),
    };
    let omega = config.omega;
    let cutoff = cutoff_of(config.cutoff);

    let mut table = CsvTable::new(&SHIFT_SWEEP_HEADER);
    let mut numerical_failures = 0usize;

    for epsilon in grid.points() {
        for &g in couplings {
            for spin in spin_choice.spins() {
                let mut flags: Vec<&str> = Vec::new();

                let prediction = qdisp_core::dispersive::shift_prediction(epsilon, omega, g, spin);
                let (rwa, nonrwa, sqrt) = match &prediction {
                    Ok(p) => {
                        if p.omega_bar_sqrt.is_none() {
                            flags.push("sqrt_undefined");
                        }
                        (
                            Some(p.omega_bar_rwa),
                            Some(p.omega_bar_nonrwa),
                            p.omega_bar_sqrt,
                        )
                    }
                    Err(_) => {
                        flags.push("zero_detuning");
                        (None, None, None)
                    }
                };

                let numeric = numeric_shift_with_cutoff(epsilon, g, omega, spin, cutoff);
                let (shift_numeric, overlap_min, n_used) = match &numeric {
                    Ok(n) => {
                        if !n.reliable {
                            flags.push("low_overlap");
                        }
                        (
                            Some(n.omega_bar),
                            Some(n.overlap_min),
                            Some(n.fock_levels_used),
                        )
                    }
                    Err(CoreError::CutoffCapExceeded { .. })
                    | Err(CoreError::EigenNonConvergence { .. }) => {
                        numerical_failures += 1;
                        flags.push("not_converged");
                        (None, None, None)
                    }
                    Err(CoreError::ClassificationFailed(_)) => {
                        flags.push("classification_failed");
                        (None, None, None)
                    }
                    Err(e) => return Err(classify_core_error(e)),
                };

                let err_rwa = match (rwa, shift_numeric) {
                    (Some(a), Some(n)) => Some((a - n).abs()),
                    _ => None,
                };
                let err_nonrwa = match (nonrwa, shift_numeric) {
                    (Some(a), Some(n)) => Some((a - n).abs()),
                    _ => None,
                };

                table.push_row(&[
                    float_cell(epsilon),
                    float_cell(epsilon - omega),
                    float_cell(g),
                    spin_name(spin).to_string(),
                    opt_float_cell(rwa),
                    opt_float_cell(nonrwa),
                    opt_float_cell(sqrt),
                    opt_float_cell(shift_numeric),
                    opt_float_cell(err_rwa),
                    opt_float_cell(err_nonrwa),
                    opt_float_cell(overlap_min),
                    opt_int_cell(n_used),
                    flags.join(";"),
                ]);
            }
        }
    }

    Ok(RunOutput {
        csv: table.finish(),
        numerical_failures,
    })
}

fn spin_name(spin: Spin) -> &'static str {
    match spin {
        Spin::Up => "up",
        Spin::Down => "down",
    }
}

pub const SPECTRUM_HEADER: [&str; 8] = [
    "model",
    "index",
    "energy",
    "qubit_state",
    "fock",
    "overlap",
    "n_used",
    "flag",
];

/// Lowest eigenvalues of one model, with bare-state labels from
/// maximal-overlap classification.
pub fn run_spectrum(config: &SweepConfig) -> Result<RunOutput, RunError> {
    let (model, n_levels, qubits) = match &config.payload {
        ModePayload::Spectrum {
            model,
            n_levels,
            qubits,
        } => (*model, *n_levels, qubits.clone()),
        _ => unreachable!(),
    };

    let (spec, decomp) = resolve_spectrum(config, &qubits, model, n_levels)?;
    let classification =
        classify_branches(&decomp, spec.basis(), n_levels).map_err(|e| classify_core_error(&e))?;

    let mut table = CsvTable::new(&SPECTRUM_HEADER);
    for state in &classification.states {
        let mut flags: Vec<&str> = Vec::new();
        if state.overlap < RELIABLE_OVERLAP {
            flags.push("low_overlap");
        }
        if state.contested {
            flags.push("contested");
        }
        let spins: String = state.label.spins.iter().map(|s| s.tag()).collect();
        table.push_row(&[
            model.name().to_string(),
            int_cell(state.eigen_index),
            float_cell(state.energy),
            spins,
            int_cell(state.label.fock),
            float_cell(state.overlap),
            int_cell(spec.fock_levels()),
            flags.join(";"),
        ]);
    }

    Ok(RunOutput {
        csv: table.finish(),
        numerical_failures: 0,
    })
}

/// Build the system at the configured cutoff (running the convergence rule
/// when `auto`) and diagonalize `kind`.
fn resolve_spectrum(
    config: &SweepConfig,
    qubits: &[QubitParams],
    kind: EffectiveModelKind,
    k_track: usize,
) -> Result<(SystemSpec, qdisp_core::EigenDecomposition), RunError> {
    match config.cutoff {
        CutoffChoice::Fixed(n) => {
            let spec = SystemSpec::new(qubits.to_vec(), config.omega, n)
                .map_err(|e| classify_core_error(&e))?;
            let h = build_hamiltonian(&spec, kind).map_err(|e| classify_core_error(&e))?;
            let decomp = eig_sym(&h).map_err(|e| classify_core_error(&e))?;
            Ok((spec, decomp))
        }
        CutoffChoice::Auto => converged_spectrum_of(
            |n| SystemSpec::new(qubits.to_vec(), config.omega, n),
            kind,
            k_track,
        )
        .map_err(|e| classify_core_error(&e)),
    }
}

pub const EFFECTIVE_MODEL_HEADER: [&str; 6] = ["record", "model", "j", "k", "value", "value_bar"];

const EFFECTIVE_MODEL_EIGENVALUES: usize = 6;

/// Effective multi-qubit physics in one table: qubit-qubit coupling
/// constants (`value` within the rotating wave, `value_bar` beyond),
/// excitation-number commutator norms of both dispersive models, and the
/// lowest six eigenvalues of the four multi-qubit models.
pub fn run_effective_model(config: &SweepConfig) -> Result<RunOutput, RunError> {
    let qubits = match &config.payload {
        ModePayload::EffectiveModel { qubits } => qubits.clone(),
        _ => unreachable!(),
    };

    // Coupling constants need no truncation; build at a token cutoff.
    let flat_spec =
        SystemSpec::new(qubits.clone(), config.omega, 2).map_err(|e| classify_core_error(&e))?;
    let j_mat = coupling_matrix(&flat_spec, true).map_err(|e| classify_core_error(&e))?;
    let j_bar_mat = coupling_matrix(&flat_spec, false).map_err(|e| classify_core_error(&e))?;

    let mut table = CsvTable::new(&EFFECTIVE_MODEL_HEADER);
    let n = qubits.len();
    for j in 1..n {
        for k in 0..j {
            table.push_row(&[
                "coupling".to_string(),
                String::new(),
                int_cell(j + 1),
                int_cell(k + 1),
                float_cell(j_mat[(j, k)]),
                float_cell(j_bar_mat[(j, k)]),
            ]);
        }
    }

    // Excitation-number commutator norms for both effective models.
    for kind in [
        EffectiveModelKind::DispersiveRwa,
        EffectiveModelKind::DispersiveNonRwa,
    ] {
        let (spec, _) = resolve_spectrum(config, &qubits, kind, EFFECTIVE_MODEL_EIGENVALUES)?;
        let h = build_hamiltonian(&spec, kind).map_err(|e| classify_core_error(&e))?;
        let n_exc = excitation_number(spec.basis());
        let norm = h
            .commutator(&n_exc)
            .map_err(|e| classify_core_error(&e))?
            .max_abs();
        table.push_row(&[
            "nexc_commutator".to_string(),
            kind.name().to_string(),
            String::new(),
            String::new(),
            float_cell(norm),
            String::new(),
        ]);
    }

    for kind in [
        EffectiveModelKind::FullRabi,
        EffectiveModelKind::TavisCummingsRwa,
        EffectiveModelKind::DispersiveRwa,
        EffectiveModelKind::DispersiveNonRwa,
    ] {
        let (_, decomp) = resolve_spectrum(config, &qubits, kind, EFFECTIVE_MODEL_EIGENVALUES)?;
        for i in 0..EFFECTIVE_MODEL_EIGENVALUES.min(decomp.dim()) {
            table.push_row(&[
                "eigenvalue".to_string(),
                kind.name().to_string(),
                int_cell(i),
                String::new(),
                float_cell(decomp.eigenvalue(i)),
                String::new(),
            ]);
        }
    }

    Ok(RunOutput {
        csv: table.finish(),
        numerical_failures: 0,
    })
}

pub const GROUND_STATE_HEADER: [&str; 7] = [
    "model",
    "ground_energy",
    "concurrence",
    "amp_down_down",
    "amp_up_up",
    "amp_predicted",
    "n_used",
];

/// Two-qubit ground-state survey: energy, concurrence of the reduced
/// two-qubit state, the vacuum-sector amplitudes on the all-down and all-up
/// configurations, and the perturbative prediction for the all-up
/// admixture.
pub fn run_ground_state(config: &SweepConfig) -> Result<RunOutput, RunError> {
    let qubits = match &config.payload {
        ModePayload::GroundState { qubits } => qubits.clone(),
        _ => unreachable!(),
    };

    let flat_spec =
        SystemSpec::new(qubits.clone(), config.omega, 2).map_err(|e| classify_core_error(&e))?;
    let j_bar = coupling_matrix(&flat_spec, false).map_err(|e| classify_core_error(&e))?[(1, 0)];
    let amp_predicted = -j_bar / (qubits[0].epsilon + qubits[1].epsilon);

    let mut table = CsvTable::new(&GROUND_STATE_HEADER);
    for kind in [
        EffectiveModelKind::FullRabi,
        EffectiveModelKind::TavisCummingsRwa,
        EffectiveModelKind::DispersiveRwa,
        EffectiveModelKind::DispersiveNonRwa,
    ] {
        let (spec, decomp) = resolve_spectrum(config, &qubits, kind, 4)?;
        let basis = spec.basis();
        let mut ground = decomp.eigenvector(0);
        let idx_dd = basis.index_of(&[Spin::Down, Spin::Down], 0);
        let idx_uu = basis.index_of(&[Spin::Up, Spin::Up], 0);
        // Overall eigenvector sign is arbitrary; make the dominant
        // all-down amplitude non-negative.
        if ground[idx_dd] < 0.0 {
            for x in ground.iter_mut() {
                *x = -*x;
            }
        }
        let rho = reduced_two_qubit_state(&ground, basis).map_err(|e| classify_core_error(&e))?;
        table.push_row(&[
            kind.name().to_string(),
            float_cell(decomp.eigenvalue(0)),
            float_cell(rho.concurrence()),
            float_cell(ground[idx_dd]),
            float_cell(ground[idx_uu]),
            float_cell(amp_predicted),
            int_cell(spec.fock_levels()),
        ]);
    }

    Ok(RunOutput {
        csv: table.finish(),
        numerical_failures: 0,
    })
}

pub const RESIDUAL_SCAN_HEADER: [&str; 7] = [
    "epsilon",
    "g",
    "chain",
    "residual",
    "residual_half_g",
    "scaling_exponent",
    "n_used",
];

/// Frame-transformation residual scan: for each coupling, the interior-block
/// max-norm residual between the exactly transformed Hamiltonian and the
/// second-order dispersive model, at `g` and `g/2`, with the scaling
/// exponent.
pub fn run_residual_scan(config: &SweepConfig) -> Result<RunOutput, RunError> {
    let (epsilon, couplings) = match &config.payload {
        ModePayload::ResidualScan { epsilon, couplings } => (*epsilon, couplings.clone()),
        _ => unreachable!(),
    };

    let mut table = CsvTable::new(&RESIDUAL_SCAN_HEADER);
    for &g in &couplings {
        let fock_levels = match config.cutoff {
            CutoffChoice::Fixed(n) => n,
            CutoffChoice::Auto => {
                // Converge the low spectrum of the full model, then reuse
                // that truncation for the residual.
                let (spec, _) = converged_spectrum_of(
                    |n| SystemSpec::single(epsilon, g, config.omega, n),
                    EffectiveModelKind::FullRabi,
                    8,
                )
                .map_err(|e| classify_core_error(&e))?;
                spec.fock_levels()
            }
        };
        let spec = SystemSpec::single(epsilon, g, config.omega, fock_levels)
            .map_err(|e| classify_core_error(&e))?;
        for (chain, name) in [
            (DispersiveChain::Rwa, "rwa"),
            (DispersiveChain::NonRwa, "nonrwa"),
        ] {
            let r = frame_residual(&spec, chain).map_err(|e| classify_core_error(&e))?;
            table.push_row(&[
                float_cell(epsilon),
                float_cell(g),
                name.to_string(),
                float_cell(r.residual),
                float_cell(r.residual_half_coupling),
                float_cell(r.scaling_exponent),
                int_cell(fock_levels),
            ]);
        }
    }

    Ok(RunOutput {
        csv: table.finish(),
        numerical_failures: 0,
    })
}
