//! Closed-form dispersive predictions: small parameters, qubit-state
//! dependent oscillator frequency shifts, oscillator-mediated qubit-qubit
//! couplings, and regime-validity flags.

use crate::basis::Spin;
use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::model::{coupling_strength_nonrwa, coupling_strength_rwa, SystemSpec};

/// Dimensionless expansion parameters of the frame transformation and the
/// critical photon number above which the linear dispersive picture
/// degrades.
#[derive(Debug, Clone, Copy)]
pub struct DispersiveParams {
    /// `g / (epsilon - omega)`.
    pub lambda: f64,
    /// `g / (epsilon + omega)`; always smaller in magnitude than `lambda`
    /// for positive frequencies.
    pub lambda_bar: f64,
    /// `1 / (4 lambda^2)`; infinite at zero coupling.
    pub n_crit: f64,
}

/// Expansion parameters for one qubit. Errors on zero detuning.
pub fn dispersive_params(epsilon: f64, omega: f64, g: f64) -> Result<DispersiveParams> {
    let delta = epsilon - omega;
    if delta == 0.0 {
        return Err(Error::ZeroDetuning { qubit: 0 });
    }
    let lambda = g / delta;
    let lambda_bar = g / (epsilon + omega);
    let n_crit = if lambda == 0.0 {
        f64::INFINITY
    } else {
        1.0 / (4.0 * lambda * lambda)
    };
    Ok(DispersiveParams {
        lambda,
        lambda_bar,
        n_crit,
    })
}

/// Qubit-state dependent oscillator frequency, predicted three ways: the
/// rotating-wave formula, the formula keeping counter-rotating terms, and
/// the unexpanded square-root form of the latter.
#[derive(Debug, Clone, Copy)]
pub struct ShiftPrediction {
    pub spin: Spin,
    /// `omega +- g^2 / Delta`.
    pub omega_bar_rwa: f64,
    /// `omega +- g^2 (1/Delta + 1/nu)`.
    pub omega_bar_nonrwa: f64,
    /// `omega sqrt(1 +- (2 g^2 / omega)(1/Delta + 1/nu))`; `None` when the
    /// radicand is not positive.
    pub omega_bar_sqrt: Option<f64>,
}

/// Predicted oscillator frequency for the given qubit state. The sign of
/// each shift follows the `sigma_z` eigenvalue: spin up takes `+`, spin
/// down takes `-`.
pub fn shift_prediction(epsilon: f64, omega: f64, g: f64, spin: Spin) -> Result<ShiftPrediction> {
    let delta = epsilon - omega;
    if delta == 0.0 {
        return Err(Error::ZeroDetuning { qubit: 0 });
    }
    let nu = epsilon + omega;
    let s = spin.sign();
    let omega_bar_rwa = omega + s * g * g / delta;
    let curvature = 1.0 / delta + 1.0 / nu;
    let omega_bar_nonrwa = omega + s * g * g * curvature;
    let radicand = 1.0 + s * (2.0 * g * g / omega) * curvature;
    let omega_bar_sqrt = if radicand > 0.0 {
        Some(omega * radicand.sqrt())
    } else {
        None
    };
    Ok(ShiftPrediction {
        spin,
        omega_bar_rwa,
        omega_bar_nonrwa,
        omega_bar_sqrt,
    })
}

/// Oscillator-mediated qubit-qubit coupling matrix: `J_jk` within the
/// rotating-wave chain (`rwa = true`) or `J_bar_jk` beyond it. Symmetric
/// with zero diagonal. Requires at least two qubits and nonzero detunings.
pub fn coupling_matrix(spec: &SystemSpec, rwa: bool) -> Result<Mat> {
    let n = spec.n_qubits();
    if n < 2 {
        return Err(Error::InvalidSystem(
            "coupling matrix requires at least two qubits".into(),
        ));
    }
    for j in 0..n {
        if spec.detuning(j) == 0.0 {
            return Err(Error::ZeroDetuning { qubit: j });
        }
    }
    let mut m = Mat::zeros(n);
    for j in 0..n {
        for k in 0..j {
            let val = if rwa {
                coupling_strength_rwa(spec, j, k)
            } else {
                coupling_strength_nonrwa(spec, j, k)
            };
            m[(j, k)] = val;
            m[(k, j)] = val;
        }
    }
    Ok(m)
}

/// Thresholds for the validity flags. The underlying conditions are
/// inequalities without constants; these defaults are configuration, not
/// physics.
#[derive(Debug, Clone, Copy)]
pub struct ValidityThresholds {
    /// Dispersive regime: `|lambda| <= max_lambda`.
    pub max_lambda: f64,
    /// Rotating-wave validity: `|Delta| / nu <= max_detuning_ratio`.
    pub max_detuning_ratio: f64,
}

impl Default for ValidityThresholds {
    fn default() -> Self {
        Self {
            max_lambda: 0.2,
            max_detuning_ratio: 0.2,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct QubitValidity {
    pub lambda: f64,
    pub detuning_ratio: f64,
    pub n_crit: f64,
    /// `|lambda|` within threshold.
    pub dispersive: bool,
    /// `|Delta| << nu` within threshold.
    pub rwa_valid: bool,
    /// mean photon number below `n_crit`.
    pub linear: bool,
}

#[derive(Debug, Clone)]
pub struct ValidityReport {
    pub mean_photons: f64,
    pub per_qubit: Vec<QubitValidity>,
}

impl ValidityReport {
    pub fn all_dispersive(&self) -> bool {
        self.per_qubit.iter().all(|q| q.dispersive)
    }

    pub fn all_linear(&self) -> bool {
        self.per_qubit.iter().all(|q| q.linear)
    }
}

/// Per-qubit regime annotation. Never blocks a computation; callers decide
/// what to do with the flags. Zero detuning is reported as non-dispersive
/// rather than as an error.
pub fn validity_report(
    spec: &SystemSpec,
    mean_photons: f64,
    thresholds: ValidityThresholds,
) -> ValidityReport {
    let per_qubit = (0..spec.n_qubits())
        .map(|j| {
            let q = spec.qubits()[j];
            let delta = spec.detuning(j);
            let nu = spec.nu(j);
            let lambda = if delta == 0.0 {
                f64::INFINITY
            } else {
                q.g / delta
            };
            let n_crit = if lambda == 0.0 {
                f64::INFINITY
            } else {
                1.0 / (4.0 * lambda * lambda)
            };
            QubitValidity {
                lambda,
                detuning_ratio: delta.abs() / nu,
                n_crit,
                dispersive: lambda.abs() <= thresholds.max_lambda,
                rwa_valid: delta.abs() / nu <= thresholds.max_detuning_ratio,
                linear: mean_photons < n_crit,
            }
        })
        .collect();
    ValidityReport {
        mean_photons,
        per_qubit,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::QubitParams;

    #[test]
    fn params_red_detuned() {
        let p = dispersive_params(1.5, 1.0, 0.05).unwrap();
        assert!((p.lambda - 0.1).abs() < 1e-15);
        assert!((p.lambda_bar - 0.02).abs() < 1e-15);
        assert!((p.n_crit - 25.0).abs() < 1e-12);
    }

    #[test]
    fn params_zero_coupling_unbounded_n_crit() {
        let p = dispersive_params(1.5, 1.0, 0.0).unwrap();
        assert_eq!(p.lambda, 0.0);
        assert_eq!(p.lambda_bar, 0.0);
        assert!(p.n_crit.is_infinite());
    }

    #[test]
    fn params_blue_detuned_sign() {
        let p = dispersive_params(0.5, 1.0, 0.05).unwrap();
        assert!((p.lambda + 0.1).abs() < 1e-15);
        assert!((p.lambda_bar - 0.05 / 1.5).abs() < 1e-15);
    }

    #[test]
    fn params_zero_detuning_rejected() {
        assert!(dispersive_params(1.0, 1.0, 0.05).is_err());
    }

    #[test]
    fn shift_spin_down_red_detuned() {
        let s = shift_prediction(1.5, 1.0, 0.05, Spin::Down).unwrap();
        assert!((s.omega_bar_rwa - 0.995).abs() < 1e-15);
        assert!((s.omega_bar_nonrwa - 0.994).abs() < 1e-15);
        let sqrt = s.omega_bar_sqrt.unwrap();
        assert!((sqrt - (1.0f64 - 0.012).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn shift_vanishing_splitting_is_exact_for_nonrwa() {
        // Delta = -omega and nu = omega cancel exactly; the rotating-wave
        // formula keeps a spurious shift of g^2/omega.
        for spin in [Spin::Up, Spin::Down] {
            let s = shift_prediction(0.0, 1.0, 0.1, spin).unwrap();
            assert_eq!(s.omega_bar_nonrwa, 1.0);
            assert!((s.omega_bar_rwa - (1.0 - spin.sign() * 0.01)).abs() < 1e-15);
        }
    }

    #[test]
    fn shift_zero_coupling_all_equal_omega() {
        let s = shift_prediction(1.5, 1.0, 0.0, Spin::Up).unwrap();
        assert_eq!(s.omega_bar_rwa, 1.0);
        assert_eq!(s.omega_bar_nonrwa, 1.0);
        assert_eq!(s.omega_bar_sqrt, Some(1.0));
    }

    #[test]
    fn shift_mirror_symmetry_is_exact() {
        for (eps, g) in [(1.5, 0.05), (0.5, 0.1), (2.7, 0.02)] {
            let up = shift_prediction(eps, 1.0, g, Spin::Up).unwrap();
            let down = shift_prediction(eps, 1.0, g, Spin::Down).unwrap();
            assert_eq!(up.omega_bar_rwa + down.omega_bar_rwa, 2.0);
            assert_eq!(up.omega_bar_nonrwa + down.omega_bar_nonrwa, 2.0);
        }
    }

    #[test]
    fn sqrt_form_agrees_to_fourth_order() {
        // |sqrt form - linearized| scales like g^4: halving g shrinks the
        // difference by about sixteen.
        let diff = |g: f64| {
            let s = shift_prediction(1.5, 1.0, g, Spin::Down).unwrap();
            (s.omega_bar_sqrt.unwrap() - s.omega_bar_nonrwa).abs()
        };
        let ratio = diff(0.05) / diff(0.025);
        assert!((8.0..24.0).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn sqrt_negative_radicand_reported() {
        // Large coupling close to resonance drives the radicand negative
        // for spin down; linearized values are still returned.
        let s = shift_prediction(1.2, 1.0, 0.4, Spin::Down).unwrap();
        assert!(s.omega_bar_sqrt.is_none());
        assert!(s.omega_bar_rwa.is_finite());
        assert!(s.omega_bar_nonrwa.is_finite());
    }

    fn pair(eps: f64, g: f64) -> SystemSpec {
        SystemSpec::new(
            vec![
                QubitParams::new(eps, g).unwrap(),
                QubitParams::new(eps, g).unwrap(),
            ],
            1.0,
            4,
        )
        .unwrap()
    }

    #[test]
    fn coupling_identical_pair() {
        let spec = pair(1.5, 0.05);
        let j = coupling_matrix(&spec, true).unwrap();
        let j_bar = coupling_matrix(&spec, false).unwrap();
        assert!((j[(0, 1)] - 0.01).abs() < 1e-15);
        assert!((j_bar[(0, 1)] - 0.008).abs() < 1e-15);
        assert_eq!(j[(0, 0)], 0.0);
        assert_eq!(j[(1, 1)], 0.0);
        assert_eq!(j[(0, 1)], j[(1, 0)]);
    }

    #[test]
    fn coupling_vanishes_with_decoupled_qubit() {
        let spec = SystemSpec::new(
            vec![
                QubitParams::new(1.5, 0.0).unwrap(),
                QubitParams::new(1.7, 0.08).unwrap(),
                QubitParams::new(2.0, 0.03).unwrap(),
            ],
            1.0,
            4,
        )
        .unwrap();
        let j = coupling_matrix(&spec, true).unwrap();
        for k in 0..3 {
            assert_eq!(j[(0, k)], 0.0);
            assert_eq!(j[(k, 0)], 0.0);
        }
        assert!(j[(1, 2)] != 0.0);
    }

    #[test]
    fn coupling_blue_detuned_flips_sign() {
        let red = coupling_matrix(&pair(1.5, 0.05), true).unwrap();
        let blue = coupling_matrix(&pair(0.5, 0.05), true).unwrap();
        assert!((red[(0, 1)] - 0.01).abs() < 1e-15);
        assert!((blue[(0, 1)] + 0.01).abs() < 1e-15);
        let blue_bar = coupling_matrix(&pair(0.5, 0.05), false).unwrap();
        assert!((blue_bar[(0, 1)] + 0.04 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn nonrwa_coupling_always_below_rwa() {
        for eps in [0.3, 0.5, 1.3, 1.5, 2.5] {
            let spec = pair(eps, 0.05);
            let j = coupling_matrix(&spec, true).unwrap();
            let j_bar = coupling_matrix(&spec, false).unwrap();
            assert!(j_bar[(0, 1)] < j[(0, 1)], "eps {eps}");
        }
    }

    #[test]
    fn validity_flags_borderline_case() {
        let spec = SystemSpec::single(1.5, 0.05, 1.0, 4).unwrap();
        let report = validity_report(&spec, 1.0, ValidityThresholds::default());
        let q = &report.per_qubit[0];
        assert!(q.dispersive);
        assert!((q.detuning_ratio - 0.2).abs() < 1e-15);
        assert!(q.rwa_valid); // 0.2 <= 0.2, inclusive
        assert!(q.linear); // 1 < 25
    }

    #[test]
    fn validity_flags_near_resonance() {
        // epsilon = 1.05, omega = 1, g = 0.05: lambda = 1, not dispersive.
        let spec = SystemSpec::single(1.05, 0.05, 1.0, 4).unwrap();
        let report = validity_report(&spec, 0.0, ValidityThresholds::default());
        assert!(!report.per_qubit[0].dispersive);
    }

    #[test]
    fn validity_zero_coupling_passes_everything() {
        let spec = SystemSpec::single(1.5, 0.0, 1.0, 4).unwrap();
        let report = validity_report(&spec, 100.0, ValidityThresholds::default());
        let q = &report.per_qubit[0];
        assert!(q.dispersive && q.linear);
    }
}
