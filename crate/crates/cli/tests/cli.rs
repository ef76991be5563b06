//! Integration tests for the sweep engine and the binary surface: CSV shape,
//! determinism, failure flagging, and process exit codes.

use std::process::Command;

use qdisp_cli::config::parse_config;
use qdisp_cli::run::{run, SHIFT_SWEEP_HEADER};

fn sweep_config(extra: &str) -> String {
    format!(
        "mode = shift_sweep\nomega = 1.0\nfock_cutoff = auto\n\
         epsilon_start = 0.5\nepsilon_stop = 1.5\nepsilon_step = 0.25\n\
         g = 0.05\nspin = both\n{extra}"
    )
}

fn field<'a>(row: &'a str, header: &[&str], name: &str) -> &'a str {
    let idx = header.iter().position(|h| *h == name).unwrap();
    row.split(',').nth(idx).unwrap()
}

#[test]
fn sweep_is_byte_identical_across_runs() {
    let cfg = parse_config(&sweep_config("")).unwrap();
    let first = run(&cfg).unwrap();
    let second = run(&cfg).unwrap();
    assert_eq!(first.csv.as_bytes(), second.csv.as_bytes());
}

#[test]
fn sweep_rows_follow_grid_order_with_fixed_columns() {
    let cfg = parse_config(&sweep_config("")).unwrap();
    let out = run(&cfg).unwrap();
    let mut lines = out.csv.lines();
    assert_eq!(lines.next().unwrap(), SHIFT_SWEEP_HEADER.join(","));
    // 5 grid points x 1 coupling x 2 spins.
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 10);
    for row in &rows {
        assert_eq!(row.split(',').count(), SHIFT_SWEEP_HEADER.len());
    }
    // Spin order within a point: down first.
    assert_eq!(field(rows[0], &SHIFT_SWEEP_HEADER, "spin"), "down");
    assert_eq!(field(rows[1], &SHIFT_SWEEP_HEADER, "spin"), "up");
}

#[test]
fn rwa_shifts_mirror_about_omega() {
    let cfg = parse_config(&sweep_config("")).unwrap();
    let out = run(&cfg).unwrap();
    let rows: Vec<&str> = out.csv.lines().skip(1).collect();
    for pair in rows.chunks(2) {
        let down = field(pair[0], &SHIFT_SWEEP_HEADER, "shift_rwa");
        let up = field(pair[1], &SHIFT_SWEEP_HEADER, "shift_rwa");
        if down.is_empty() || up.is_empty() {
            continue; // zero-detuning point
        }
        let sum: f64 = down.parse::<f64>().unwrap() + up.parse::<f64>().unwrap();
        assert!((sum - 2.0).abs() <= 1e-12, "sum {sum}");
    }
}

#[test]
fn zero_detuning_point_is_blanked_and_flagged_without_aborting() {
    let cfg = parse_config(&sweep_config("")).unwrap();
    let out = run(&cfg).unwrap();
    let rows: Vec<&str> = out.csv.lines().skip(1).collect();
    let resonant: Vec<&&str> = rows
        .iter()
        .filter(|r| field(r, &SHIFT_SWEEP_HEADER, "epsilon").starts_with("1.00000"))
        .collect();
    assert_eq!(resonant.len(), 2);
    for row in resonant {
        assert_eq!(field(row, &SHIFT_SWEEP_HEADER, "shift_rwa"), "");
        assert_eq!(field(row, &SHIFT_SWEEP_HEADER, "err_rwa"), "");
        assert!(field(row, &SHIFT_SWEEP_HEADER, "flag").contains("zero_detuning"));
        // The numeric measurement does not depend on the analytic formulas.
        assert!(!field(row, &SHIFT_SWEEP_HEADER, "shift_numeric").is_empty());
    }
    // Off-resonance rows are complete.
    let clean = rows
        .iter()
        .filter(|r| field(r, &SHIFT_SWEEP_HEADER, "flag").is_empty())
        .count();
    assert!(clean >= 8);
}

#[test]
fn zero_coupling_row_is_exact() {
    let text = "mode = shift_sweep\nomega = 1.0\nfock_cutoff = 12\n\
                epsilon_start = 1.5\nepsilon_stop = 1.5\nepsilon_step = 1.0\n\
                g = 0.0\nspin = down\n";
    let cfg = parse_config(text).unwrap();
    let out = run(&cfg).unwrap();
    let row = out.csv.lines().nth(1).unwrap();
    for name in ["shift_rwa", "shift_nonrwa", "shift_sqrt", "shift_numeric"] {
        assert_eq!(field(row, &SHIFT_SWEEP_HEADER, name), "1.00000000000000e0");
    }
    for name in ["err_rwa", "err_nonrwa"] {
        assert_eq!(field(row, &SHIFT_SWEEP_HEADER, name), "0.00000000000000e0");
    }
    assert_eq!(field(row, &SHIFT_SWEEP_HEADER, "overlap_min"), "1.00000000000000e0");
}

#[test]
fn single_fock_level_cutoff_rejected() {
    let text = "mode = shift_sweep\nomega = 1.0\nfock_cutoff = 1\n\
                epsilon_start = 1.5\nepsilon_stop = 1.5\nepsilon_step = 1.0\n\
                g = 0.05\nspin = down\n";
    let e = parse_config(text).unwrap_err();
    assert!(e.to_string().contains("fock_cutoff"), "{e}");
}

#[test]
fn ground_state_agrees_with_perturbative_amplitude() {
    let text = "mode = ground_state\nomega = 1.0\nfock_cutoff = 20\nqubits = 2\n\
                epsilon_1 = 1.5\ng_1 = 0.05\nepsilon_2 = 1.5\ng_2 = 0.05\n";
    let cfg = parse_config(text).unwrap();
    let out = run(&cfg).unwrap();
    let header: Vec<&str> = out.csv.lines().next().unwrap().split(',').collect();
    let nonrwa_row = out
        .csv
        .lines()
        .find(|l| l.starts_with("dispersive_nonrwa"))
        .unwrap();
    let amp: f64 = field(nonrwa_row, &header, "amp_up_up").parse().unwrap();
    let predicted: f64 = field(nonrwa_row, &header, "amp_predicted").parse().unwrap();
    assert!(
        (amp - predicted).abs() < 2e-4,
        "amp {amp} vs predicted {predicted}"
    );

    let rwa_row = out
        .csv
        .lines()
        .find(|l| l.starts_with("dispersive_rwa"))
        .unwrap();
    let c: f64 = field(rwa_row, &header, "concurrence").parse().unwrap();
    assert!(c <= 1e-9);
}

#[test]
fn effective_model_couplings_for_identical_pair() {
    let text = "mode = effective_model\nomega = 1.0\nfock_cutoff = 12\nqubits = 2\n\
                epsilon_1 = 1.5\ng_1 = 0.05\nepsilon_2 = 1.5\ng_2 = 0.05\n";
    let cfg = parse_config(text).unwrap();
    let out = run(&cfg).unwrap();
    let coupling = out.csv.lines().find(|l| l.starts_with("coupling")).unwrap();
    let cells: Vec<&str> = coupling.split(',').collect();
    let j: f64 = cells[4].parse().unwrap();
    let j_bar: f64 = cells[5].parse().unwrap();
    assert!((j - 0.01).abs() <= 1e-12);
    assert!((j_bar - 0.008).abs() <= 1e-12);

    // Commutator-norm split between the two dispersive models.
    let rwa_norm: f64 = out
        .csv
        .lines()
        .find(|l| l.starts_with("nexc_commutator,dispersive_rwa"))
        .unwrap()
        .split(',')
        .nth(4)
        .unwrap()
        .parse()
        .unwrap();
    let nonrwa_norm: f64 = out
        .csv
        .lines()
        .find(|l| l.starts_with("nexc_commutator,dispersive_nonrwa"))
        .unwrap()
        .split(',')
        .nth(4)
        .unwrap()
        .parse()
        .unwrap();
    assert!(rwa_norm <= 1e-12);
    assert!(nonrwa_norm > 1e-4);

    // Four models, six eigenvalues each.
    let eigen_rows = out
        .csv
        .lines()
        .filter(|l| l.starts_with("eigenvalue"))
        .count();
    assert_eq!(eigen_rows, 24);
}

#[test]
fn spectrum_zero_coupling_matches_bare_energies() {
    let text = "mode = spectrum\nomega = 1.0\nfock_cutoff = 10\nmodel = full_rabi\n\
                n_levels = 4\nqubits = 1\nepsilon_1 = 1.5\ng_1 = 0.0\n";
    let cfg = parse_config(text).unwrap();
    let out = run(&cfg).unwrap();
    let rows: Vec<&str> = out.csv.lines().skip(1).collect();
    assert_eq!(rows.len(), 4);
    let energies: Vec<f64> = rows
        .iter()
        .map(|r| r.split(',').nth(2).unwrap().parse().unwrap())
        .collect();
    for (got, want) in energies.iter().zip([-0.75, 0.25, 0.75, 1.25]) {
        assert!((got - want).abs() < 1e-12);
    }
}

#[test]
fn residual_scan_reports_third_order_exponent() {
    let text = "mode = residual_scan\nomega = 1.0\nfock_cutoff = 30\n\
                epsilon = 1.5\ng = 0.05\n";
    let cfg = parse_config(text).unwrap();
    let out = run(&cfg).unwrap();
    let rows: Vec<&str> = out.csv.lines().skip(1).collect();
    assert_eq!(rows.len(), 2);
    for row in rows {
        let exponent: f64 = row.split(',').nth(5).unwrap().parse().unwrap();
        assert!((2.5..=3.5).contains(&exponent), "exponent {exponent}");
    }
}

// --- binary surface ---------------------------------------------------

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_qdisp"))
}

fn temp_dir() -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("qdisp-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn binary_writes_csv_and_exits_zero() {
    let dir = temp_dir();
    let cfg_path = dir.join("ok.cfg");
    let out_path = dir.join("ok.csv");
    std::fs::write(
        &cfg_path,
        "mode = shift_sweep\nomega = 1.0\nfock_cutoff = 20\n\
         epsilon_start = 1.5\nepsilon_stop = 1.5\nepsilon_step = 0.5\n\
         g = 0.05\nspin = down\n",
    )
    .unwrap();
    let status = bin()
        .args(["shift-sweep", "--config"])
        .arg(&cfg_path)
        .arg("--out")
        .arg(&out_path)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let csv = std::fs::read_to_string(&out_path).unwrap();
    assert!(csv.starts_with("epsilon,"));
    assert_eq!(csv.lines().count(), 2);
}

#[test]
fn binary_rejects_bad_config_with_exit_one() {
    let dir = temp_dir();
    let cfg_path = dir.join("bad.cfg");
    std::fs::write(&cfg_path, "mode = warp_drive\n").unwrap();
    let output = bin()
        .args(["shift-sweep", "--config"])
        .arg(&cfg_path)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("line 1"), "{stderr}");
}

#[test]
fn binary_rejects_mode_subcommand_mismatch() {
    let dir = temp_dir();
    let cfg_path = dir.join("mismatch.cfg");
    std::fs::write(
        &cfg_path,
        "mode = shift_sweep\nomega = 1.0\nfock_cutoff = 20\n\
         epsilon_start = 1.5\nepsilon_stop = 1.5\nepsilon_step = 0.5\n\
         g = 0.05\nspin = down\n",
    )
    .unwrap();
    let status = bin()
        .args(["ground-state", "--config"])
        .arg(&cfg_path)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(1));
}

#[test]
fn binary_unknown_subcommand_fails() {
    let output = bin().arg("frobnicate").output().unwrap();
    assert_eq!(output.status.code(), Some(1));
}
