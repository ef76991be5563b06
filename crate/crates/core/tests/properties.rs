//! Property tests for the numerical engine and the operator algebra, plus a
//! seeded large-matrix reconstruction check.

use proptest::prelude::*;

use qdisp_core::linalg::{eig_sym_mat, expm_mat};
use qdisp_core::{
    coupling_matrix, dispersive_params, interior_max_abs_diff, shift_prediction, BasisSpec, Mat,
    Operator, QubitParams, Spin, Symmetry, SystemSpec,
};

fn symmetric_matrix(dim: usize) -> impl Strategy<Value = Mat> {
    proptest::collection::vec(-10.0f64..10.0, dim * (dim + 1) / 2).prop_map(move |upper| {
        let mut m = Mat::zeros(dim);
        let mut it = upper.into_iter();
        for i in 0..dim {
            for j in i..dim {
                let x = it.next().unwrap();
                m[(i, j)] = x;
                m[(j, i)] = x;
            }
        }
        m
    })
}

fn general_matrix(dim: usize, scale: f64) -> impl Strategy<Value = Mat> {
    proptest::collection::vec(-scale..scale, dim * dim).prop_map(move |entries| {
        let mut m = Mat::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = entries[i * dim + j];
            }
        }
        m
    })
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 48,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn eigendecomposition_reconstructs((_dim, m) in (2usize..20).prop_flat_map(|d| (Just(d), symmetric_matrix(d)))) {
        let decomp = eig_sym_mat(&m).unwrap();
        let dim = m.dim();
        let v = decomp.eigenvectors();

        // V Lambda V^T = A.
        let mut lambda = Mat::zeros(dim);
        for i in 0..dim {
            lambda[(i, i)] = decomp.eigenvalue(i);
        }
        let rebuilt = v.matmul(&lambda).matmul(&v.transpose());
        let scale = m.max_abs().max(1e-300);
        prop_assert!(rebuilt.max_abs_diff(&m) <= 1e-9 * scale);

        // Orthonormal columns.
        let vtv = v.transpose().matmul(v);
        prop_assert!(vtv.max_abs_diff(&Mat::identity(dim)) <= 1e-10);

        // Eigenvalues ascending and trace-preserving.
        for w in decomp.eigenvalues().windows(2) {
            prop_assert!(w[0] <= w[1]);
        }
        let trace_gap = (decomp.eigenvalues().iter().sum::<f64>() - m.trace()).abs();
        prop_assert!(trace_gap <= 1e-9 * m.frobenius().max(1.0));
    }

    #[test]
    fn expm_inverse_pairs((_dim, g) in (2usize..8).prop_flat_map(|d| (Just(d), general_matrix(d, 1.5)))) {
        let e = expm_mat(&g).unwrap();
        let e_neg = expm_mat(&g.scaled(-1.0)).unwrap();
        let product = e.matmul(&e_neg);
        prop_assert!(product.max_abs_diff(&Mat::identity(g.dim())) <= 1e-9);
    }

    #[test]
    fn expm_one_parameter_group(
        (_dim, g) in (2usize..6).prop_flat_map(|d| (Just(d), general_matrix(d, 1.0))),
        a in -2.0f64..2.0,
        b in -2.0f64..2.0,
    ) {
        let ea = expm_mat(&g.scaled(a)).unwrap();
        let eb = expm_mat(&g.scaled(b)).unwrap();
        let eab = expm_mat(&g.scaled(a + b)).unwrap();
        prop_assert!(ea.matmul(&eb).max_abs_diff(&eab) <= 1e-9);
    }

    #[test]
    fn ladder_commutator_identity_on_interior(fock in 3usize..16) {
        let basis = BasisSpec::new(1, fock).unwrap();
        let a = Operator::annihilator(basis);
        let adag = Operator::creator(basis);
        let c = a.commutator(&adag).unwrap();
        let id = Operator::identity(basis);
        prop_assert!(interior_max_abs_diff(&c, &id, fock - 2) <= 1e-13);
    }

    #[test]
    fn generator_combination_stays_antisymmetric(
        lambda in -0.5f64..0.5,
        lambda_bar in -0.5f64..0.5,
        fock in 3usize..12,
    ) {
        let basis = BasisSpec::new(1, fock).unwrap();
        let combo = Operator::weighted_sum(&[
            (lambda, &Operator::co_rotating_diff(basis, 0).unwrap()),
            (lambda_bar, &Operator::counter_rotating_diff(basis, 0).unwrap()),
        ])
        .unwrap();
        let ok = combo.symmetry() == Symmetry::Antisymmetric
            || (lambda == 0.0 && lambda_bar == 0.0);
        prop_assert!(ok);
    }

    #[test]
    fn shift_mirror_and_small_parameter_ordering(
        epsilon in 0.05f64..3.0,
        g in 0.0f64..0.2,
    ) {
        prop_assume!((epsilon - 1.0).abs() > 1e-6);
        let up = shift_prediction(epsilon, 1.0, g, Spin::Up).unwrap();
        let down = shift_prediction(epsilon, 1.0, g, Spin::Down).unwrap();
        // Mirror symmetry about omega for both linearized forms. Outside
        // the dispersive domain the shift can exceed omega itself, where
        // `omega + x` and `omega - x` round independently, so the identity
        // holds to strict machine precision rather than bitwise.
        prop_assert!((up.omega_bar_rwa + down.omega_bar_rwa - 2.0).abs() <= 1e-12);
        prop_assert!((up.omega_bar_nonrwa + down.omega_bar_nonrwa - 2.0).abs() <= 1e-12);

        let params = dispersive_params(epsilon, 1.0, g).unwrap();
        prop_assert!(params.lambda_bar.abs() <= params.lambda.abs() + 1e-15);
    }

    #[test]
    fn vanishing_splitting_shift_is_exact_for_any_coupling(g in 0.0f64..2.0) {
        // At epsilon = 0 the two denominators cancel exactly, for every g
        // and both spins; the rotating-wave formula does not.
        for spin in [Spin::Up, Spin::Down] {
            let s = shift_prediction(0.0, 1.0, g, spin).unwrap();
            prop_assert_eq!(s.omega_bar_nonrwa, 1.0);
        }
    }

    #[test]
    fn coupling_matrix_shape(
        eps1 in 1.1f64..3.0,
        eps2 in 1.1f64..3.0,
        g1 in 0.0f64..0.2,
        g2 in 0.0f64..0.2,
    ) {
        let spec = SystemSpec::new(
            vec![
                QubitParams::new(eps1, g1).unwrap(),
                QubitParams::new(eps2, g2).unwrap(),
            ],
            1.0,
            4,
        )
        .unwrap();
        let j = coupling_matrix(&spec, true).unwrap();
        let j_bar = coupling_matrix(&spec, false).unwrap();
        prop_assert_eq!(j[(0, 0)], 0.0);
        prop_assert_eq!(j[(1, 1)], 0.0);
        prop_assert_eq!(j[(0, 1)], j[(1, 0)]);
        // Positive detunings: the counter-rotating denominators subtract.
        prop_assert!(j_bar[(0, 1)] <= j[(0, 1)]);
    }
}

/// Reconstruction at the largest advertised scale, with a fixed seed.
#[test]
fn eigendecomposition_reconstructs_dim_400() {
    let n = 400;
    let mut state = 0x853c49e6748fea9bu64;
    let mut next = move || {
        state = state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
    };
    let mut m = Mat::zeros(n);
    for i in 0..n {
        for j in 0..=i {
            let x = next();
            m[(i, j)] = x;
            m[(j, i)] = x;
        }
    }
    let decomp = eig_sym_mat(&m).unwrap();
    let v = decomp.eigenvectors();
    let mut lambda = Mat::zeros(n);
    for i in 0..n {
        lambda[(i, i)] = decomp.eigenvalue(i);
    }
    let rebuilt = v.matmul(&lambda).matmul(&v.transpose());
    assert!(rebuilt.max_abs_diff(&m) <= 1e-9 * m.max_abs());
    let vtv = v.transpose().matmul(v);
    assert!(vtv.max_abs_diff(&Mat::identity(n)) <= 1e-10);
}
