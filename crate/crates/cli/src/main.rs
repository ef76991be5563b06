use std::process::ExitCode;

use qdisp_cli::config::{parse_config, Mode};
use qdisp_cli::run::{run, RunError};

const USAGE: &str = "\
usage: qdisp <subcommand> --config <path> [--out <path>]

subcommands:
  shift-sweep       oscillator frequency shift vs qubit splitting
  spectrum          lowest eigenvalues of one model with branch labels
  effective-model   qubit-qubit couplings, commutator norms, low spectra
  ground-state      two-qubit ground-state energies and concurrence
  residual-scan     frame-transformation residual and scaling exponent

options:
  --config <path>   run configuration (key = value lines)
  --out <path>      output CSV path (overrides `out` from the config)

exit codes: 0 success, 1 configuration error, 2 numerical failure
";

fn main() -> ExitCode {
    match try_main() {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}

fn try_main() -> Result<ExitCode, String> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    if args.is_empty() || args[0] == "--help" || args[0] == "-h" {
        print!("{USAGE}");
        return Ok(ExitCode::SUCCESS);
    }

    let mode = Mode::from_subcommand(&args[0])
        .ok_or_else(|| format!("unknown subcommand `{}`\n{USAGE}", args[0]))?;

    let mut config_path: Option<String> = None;
    let mut out_path: Option<String> = None;
    let mut rest = args[1..].iter();
    while let Some(arg) = rest.next() {
        match arg.as_str() {
            "--config" => {
                config_path = Some(
                    rest.next()
                        .ok_or_else(|| "--config requires a path".to_string())?
                        .clone(),
                );
            }
            "--out" => {
                out_path = Some(
                    rest.next()
                        .ok_or_else(|| "--out requires a path".to_string())?
                        .clone(),
                );
            }
            other => return Err(format!("unknown argument `{other}`\n{USAGE}")),
        }
    }
    let config_path = config_path.ok_or_else(|| format!("--config is required\n{USAGE}"))?;

    let text = std::fs::read_to_string(&config_path)
        .map_err(|e| format!("cannot read `{config_path}`: {e}"))?;
    let config = parse_config(&text).map_err(|e| e.to_string())?;
    if config.mode != mode {
        return Err(format!(
            "config declares mode `{}` but subcommand is `{}`",
            config.mode.key(),
            mode.subcommand()
        ));
    }

    let output = match run(&config) {
        Ok(o) => o,
        Err(RunError::Config(m)) => return Err(m),
        Err(RunError::Numerical(m)) => {
            eprintln!("error: numerical failure: {m}");
            return Ok(ExitCode::from(2));
        }
    };

    let path = out_path
        .or(config.out.clone())
        .unwrap_or_else(|| format!("{}.csv", mode.key()));
    std::fs::write(&path, output.csv.as_bytes())
        .map_err(|e| format!("cannot write `{path}`: {e}"))?;

    let rows = output.csv.lines().count().saturating_sub(1);
    eprintln!("wrote {path} ({rows} rows)");

    if output.numerical_failures > 0 {
        eprintln!(
            "warning: {} grid point(s) did not converge at the cutoff cap",
            output.numerical_failures
        );
        return Ok(ExitCode::from(2));
    }
    Ok(ExitCode::SUCCESS)
}
