//! Run-configuration files: plain `key = value` lines, `#` comments,
//! case-sensitive keys, unknown keys rejected. Every error names the
//! offending line or the missing key.

use std::collections::BTreeMap;
use std::fmt;

use qdisp_core::{EffectiveModelKind, QubitParams, Spin};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    ShiftSweep,
    Spectrum,
    EffectiveModel,
    GroundState,
    ResidualScan,
}

impl Mode {
    pub const ALL: [Mode; 5] = [
        Mode::ShiftSweep,
        Mode::Spectrum,
        Mode::EffectiveModel,
        Mode::GroundState,
        Mode::ResidualScan,
    ];

    /// Config-file spelling.
    pub fn key(&self) -> &'static str {
        match self {
            Mode::ShiftSweep => "shift_sweep",
            Mode::Spectrum => "spectrum",
            Mode::EffectiveModel => "effective_model",
            Mode::GroundState => "ground_state",
            Mode::ResidualScan => "residual_scan",
        }
    }

    /// Command-line subcommand spelling.
    pub fn subcommand(&self) -> &'static str {
        match self {
            Mode::ShiftSweep => "shift-sweep",
            Mode::Spectrum => "spectrum",
            Mode::EffectiveModel => "effective-model",
            Mode::GroundState => "ground-state",
            Mode::ResidualScan => "residual-scan",
        }
    }

    pub fn from_key(s: &str) -> Option<Mode> {
        Mode::ALL.iter().copied().find(|m| m.key() == s)
    }

    pub fn from_subcommand(s: &str) -> Option<Mode> {
        Mode::ALL.iter().copied().find(|m| m.subcommand() == s)
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

/// Fock-truncation choice: explicit level count or the automatic
/// convergence rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CutoffChoice {
    Fixed(usize),
    Auto,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpinChoice {
    Up,
    Down,
    Both,
}

impl SpinChoice {
    /// Row order within one grid point: down first, then up.
    pub fn spins(&self) -> Vec<Spin> {
        match self {
            SpinChoice::Up => vec![Spin::Up],
            SpinChoice::Down => vec![Spin::Down],
            SpinChoice::Both => vec![Spin::Down, Spin::Up],
        }
    }
}

/// Uniform qubit-splitting grid: `epsilon_i = start + i * step`.
#[derive(Debug, Clone, Copy)]
pub struct EpsilonGrid {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl EpsilonGrid {
    pub fn points(&self) -> Vec<f64> {
        let count = ((self.stop - self.start) / self.step + 1e-9).floor() as usize + 1;
        (0..count)
            .map(|i| self.start + i as f64 * self.step)
            .collect()
    }
}

/// Mode-specific portion of a run configuration.
#[derive(Debug, Clone)]
pub enum ModePayload {
    ShiftSweep {
        grid: EpsilonGrid,
        couplings: Vec<f64>,
        spin: SpinChoice,
    },
    Spectrum {
        model: EffectiveModelKind,
        n_levels: usize,
        qubits: Vec<QubitParams>,
    },
    EffectiveModel {
        qubits: Vec<QubitParams>,
    },
    GroundState {
        qubits: Vec<QubitParams>,
    },
    ResidualScan {
        epsilon: f64,
        couplings: Vec<f64>,
    },
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub mode: Mode,
    pub omega: f64,
    pub cutoff: CutoffChoice,
    pub out: Option<String>,
    pub payload: ModePayload,
}

/// Configuration error with enough context to fix the file.
#[derive(Debug, Clone)]
pub struct ConfigError {
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for ConfigError {}

fn err(message: impl Into<String>) -> ConfigError {
    ConfigError {
        message: message.into(),
    }
}

struct RawConfig {
    /// key -> (line number, value)
    entries: BTreeMap<String, (usize, String)>,
}

impl RawConfig {
    fn take(&mut self, key: &str) -> Option<(usize, String)> {
        self.entries.remove(key)
    }

    fn require(&mut self, key: &str) -> Result<(usize, String), ConfigError> {
        self.take(key)
            .ok_or_else(|| err(format!("missing required key `{key}`")))
    }
}

fn parse_f64(key: &str, line: usize, value: &str) -> Result<f64, ConfigError> {
    value
        .parse::<f64>()
        .map_err(|_| {
            err(format!(
                "line {line}: malformed number `{value}` for key `{key}`"
            ))
        })
        .and_then(|x| {
            if x.is_finite() {
                Ok(x)
            } else {
                Err(err(format!(
                    "line {line}: non-finite value for key `{key}`"
                )))
            }
        })
}

fn parse_usize(key: &str, line: usize, value: &str) -> Result<usize, ConfigError> {
    value.parse::<usize>().map_err(|_| {
        err(format!(
            "line {line}: malformed integer `{value}` for key `{key}`"
        ))
    })
}

fn parse_f64_list(key: &str, line: usize, value: &str) -> Result<Vec<f64>, ConfigError> {
    let items: Vec<f64> = value
        .split(',')
        .map(|part| parse_f64(key, line, part.trim()))
        .collect::<Result<_, _>>()?;
    if items.is_empty() {
        return Err(err(format!("line {line}: empty list for key `{key}`")));
    }
    Ok(items)
}

/// Parse and validate a configuration file. Unknown keys are errors; every
/// diagnostic names the offending line.
pub fn parse_config(text: &str) -> Result<SweepConfig, ConfigError> {
    let mut entries: BTreeMap<String, (usize, String)> = BTreeMap::new();
    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw_line.find('#') {
            Some(pos) => &raw_line[..pos],
            None => raw_line,
        };
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| err(format!("line {line_no}: expected `key = value`")))?;
        let key = key.trim().to_string();
        let value = value.trim().to_string();
        if key.is_empty() {
            return Err(err(format!("line {line_no}: empty key")));
        }
        if let Some((first_line, _)) = entries.get(&key) {
            return Err(err(format!(
                "line {line_no}: duplicate key `{key}` (first set on line {first_line})"
            )));
        }
        entries.insert(key, (line_no, value));
    }
    let mut raw = RawConfig { entries };

    let (mode_line, mode_value) = raw.require("mode")?;
    let mode = Mode::from_key(&mode_value).ok_or_else(|| {
        err(format!(
            "line {mode_line}: unknown mode `{mode_value}` (expected one of {})",
            Mode::ALL.map(|m| m.key()).join(", ")
        ))
    })?;

    let (omega_line, omega_value) = raw.require("omega")?;
    let omega = parse_f64("omega", omega_line, &omega_value)?;
    if omega <= 0.0 {
        return Err(err(format!(
            "line {omega_line}: omega must be positive, got {omega_value}"
        )));
    }

    let (cutoff_line, cutoff_value) = raw.require("fock_cutoff")?;
    let cutoff = if cutoff_value == "auto" {
        CutoffChoice::Auto
    } else {
        let n = parse_usize("fock_cutoff", cutoff_line, &cutoff_value)?;
        if n < 2 {
            return Err(err(format!(
                "line {cutoff_line}: fock_cutoff must be at least 2, got {n}"
            )));
        }
        CutoffChoice::Fixed(n)
    };

    let out = raw.take("out").map(|(_, v)| v);

    let payload = match mode {
        Mode::ShiftSweep => {
            let (l1, v1) = raw.require("epsilon_start")?;
            let (l2, v2) = raw.require("epsilon_stop")?;
            let (l3, v3) = raw.require("epsilon_step")?;
            let grid = EpsilonGrid {
                start: parse_f64("epsilon_start", l1, &v1)?,
                stop: parse_f64("epsilon_stop", l2, &v2)?,
                step: parse_f64("epsilon_step", l3, &v3)?,
            };
            if grid.step <= 0.0 {
                return Err(err(format!("line {l3}: epsilon_step must be positive")));
            }
            if grid.stop < grid.start {
                return Err(err(format!(
                    "line {l2}: epsilon_stop must not be below epsilon_start"
                )));
            }
            if grid.start < 0.0 {
                return Err(err(format!(
                    "line {l1}: epsilon_start must be non-negative"
                )));
            }
            let (lg, vg) = raw.require("g")?;
            let couplings = parse_f64_list("g", lg, &vg)?;
            for g in &couplings {
                if *g < 0.0 {
                    return Err(err(format!("line {lg}: couplings must be non-negative")));
                }
            }
            let (ls, vs) = raw.require("spin")?;
            let spin = match vs.as_str() {
                "up" => SpinChoice::Up,
                "down" => SpinChoice::Down,
                "both" => SpinChoice::Both,
                other => {
                    return Err(err(format!(
                        "line {ls}: unknown spin `{other}` (expected up, down, or both)"
                    )))
                }
            };
            ModePayload::ShiftSweep {
                grid,
                couplings,
                spin,
            }
        }
        Mode::Spectrum => {
            let (lm, vm) = raw.require("model")?;
            let model = EffectiveModelKind::parse(&vm).ok_or_else(|| {
                err(format!(
                    "line {lm}: unknown model `{vm}` (expected one of {})",
                    EffectiveModelKind::ALL.map(|k| k.name()).join(", ")
                ))
            })?;
            let (ln, vn) = raw.require("n_levels")?;
            let n_levels = parse_usize("n_levels", ln, &vn)?;
            if n_levels == 0 {
                return Err(err(format!("line {ln}: n_levels must be at least 1")));
            }
            let qubits = parse_qubits(&mut raw, 1)?;
            ModePayload::Spectrum {
                model,
                n_levels,
                qubits,
            }
        }
        Mode::EffectiveModel => ModePayload::EffectiveModel {
            qubits: parse_qubits(&mut raw, 2)?,
        },
        Mode::GroundState => {
            let qubits = parse_qubits(&mut raw, 2)?;
            if qubits.len() != 2 {
                return Err(err(format!(
                    "ground_state mode requires exactly 2 qubits, got {}",
                    qubits.len()
                )));
            }
            ModePayload::GroundState { qubits }
        }
        Mode::ResidualScan => {
            let (le, ve) = raw.require("epsilon")?;
            let epsilon = parse_f64("epsilon", le, &ve)?;
            if epsilon < 0.0 {
                return Err(err(format!("line {le}: epsilon must be non-negative")));
            }
            let (lg, vg) = raw.require("g")?;
            let couplings = parse_f64_list("g", lg, &vg)?;
            ModePayload::ResidualScan { epsilon, couplings }
        }
    };

    if let Some((line, key_value)) = raw.entries.iter().map(|(k, (l, _))| (*l, k.clone())).min() {
        return Err(err(format!("line {line}: unknown key `{key_value}`")));
    }

    Ok(SweepConfig {
        mode,
        omega,
        cutoff,
        out,
        payload,
    })
}

fn parse_qubits(raw: &mut RawConfig, min: usize) -> Result<Vec<QubitParams>, ConfigError> {
    let (lq, vq) = raw.require("qubits")?;
    let count = parse_usize("qubits", lq, &vq)?;
    if count < min {
        return Err(err(format!(
            "line {lq}: at least {min} qubit(s) required for this mode, got {count}"
        )));
    }
    let mut qubits = Vec::with_capacity(count);
    for j in 1..=count {
        let eps_key = format!("epsilon_{j}");
        let g_key = format!("g_{j}");
        let (le, ve) = raw.require(&eps_key)?;
        let (lg, vg) = raw.require(&g_key)?;
        let epsilon = parse_f64(&eps_key, le, &ve)?;
        let g = parse_f64(&g_key, lg, &vg)?;
        let q = QubitParams::new(epsilon, g).map_err(|e| err(format!("line {le}: {e}")))?;
        qubits.push(q);
    }
    Ok(qubits)
}
