//! Sweep settings: the flat key-value config grammar, CLI-style overrides and
//! the figure presets.
//!
//! Config files hold one `key = value` pair per line. Blank lines and lines
//! starting with `#` are ignored. Keys:
//!
//! ```text
//! preset   = fig5                 # start from a preset
//! state    = W4
//! accel    = D=0:pi/4             # repeatable; OBS=R, OBS=LO:HI or OBS=@OTHER
//! grid     = 101
//! measures = N_D1_rest, pi4, S
//! out      = results.csv
//! threads  = 4
//! ```
//!
//! `OBS=@OTHER` ties an observer to another observer's swept axis, so
//! `D=0:pi/4` with `C=@D` sweeps the diagonal `r_c = r_d`.

use std::f64::consts::FRAC_PI_4;
use std::path::PathBuf;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum StateKind {
    #[default]
    W4,
}

impl StateKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "W4" | "w4" => Ok(StateKind::W4),
            other => Err(Error::config(
                "state",
                format!("unknown state `{other}` (supported: W4)"),
            )),
        }
    }

    pub fn qubits(self) -> usize {
        match self {
            StateKind::W4 => 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Axis {
    Fixed(f64),
    Range { lo: f64, hi: f64 },
    Tied(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct AccelSpec {
    pub observer: String,
    pub axis: Axis,
}

/// Parses `pi/4`, `pi/N`, `pi` or a plain decimal.
pub fn parse_r(s: &str) -> Result<f64> {
    let s = s.trim();
    let bad = || Error::config(format!("value `{s}`"), "expected a number or pi/N");
    let v = if let Some(den) = s.strip_prefix("pi/") {
        std::f64::consts::PI / den.parse::<f64>().map_err(|_| bad())?
    } else if s == "pi" {
        std::f64::consts::PI
    } else {
        s.parse::<f64>().map_err(|_| bad())?
    };
    if !v.is_finite() {
        return Err(bad());
    }
    Ok(v)
}

impl AccelSpec {
    /// Parses `OBS=R`, `OBS=LO:HI` or `OBS=@OTHER`.
    pub fn parse(s: &str) -> Result<Self> {
        let (obs, val) = s.split_once('=').ok_or_else(|| {
            Error::config(
                format!("accel `{s}`"),
                "expected OBS=R, OBS=LO:HI or OBS=@OTHER",
            )
        })?;
        let observer = obs.trim().to_string();
        if observer.is_empty() {
            return Err(Error::config(format!("accel `{s}`"), "missing observer"));
        }
        let val = val.trim();
        let axis = if let Some(other) = val.strip_prefix('@') {
            Axis::Tied(other.trim().to_string())
        } else if let Some((lo, hi)) = val.split_once(':') {
            Axis::Range {
                lo: parse_r(lo)?,
                hi: parse_r(hi)?,
            }
        } else {
            Axis::Fixed(parse_r(val)?)
        };
        Ok(AccelSpec { observer, axis })
    }
}

/// A partially specified sweep, as read from a config file or the command line.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SweepSettings {
    pub preset: Option<String>,
    pub state: Option<StateKind>,
    pub accel: Vec<AccelSpec>,
    pub grid: Option<usize>,
    pub measures: Vec<String>,
    pub out: Option<PathBuf>,
    pub threads: Option<usize>,
}

impl SweepSettings {
    /// Parses the flat key-value grammar described in the module docs.
    pub fn parse(text: &str) -> Result<Self> {
        let mut s = SweepSettings::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let at = |field: &str| format!("line {}, field `{field}`", lineno + 1);
            let relocate = |field: &str, e: Error| match e {
                Error::Config { message, location } => Error::Config {
                    location: format!("{} ({location})", at(field)),
                    message,
                },
                other => other,
            };
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::config(format!("line {}", lineno + 1), "expected `key = value`")
            })?;
            let key = key.trim();
            // strip trailing comments
            let value = value.split('#').next().unwrap_or("").trim();
            match key {
                "preset" => s.preset = Some(value.to_string()),
                "state" => s.state = Some(StateKind::parse(value).map_err(|e| relocate(key, e))?),
                "accel" => {
                    for part in value.split(',').filter(|p| !p.trim().is_empty()) {
                        s.accel
                            .push(AccelSpec::parse(part).map_err(|e| relocate(key, e))?);
                    }
                }
                "grid" => {
                    s.grid = Some(value.parse().map_err(|_| {
                        Error::config(at(key), format!("`{value}` is not a positive integer"))
                    })?)
                }
                "measures" => s.measures = split_list(value),
                "out" => s.out = Some(PathBuf::from(value)),
                "threads" => {
                    s.threads = Some(value.parse().map_err(|_| {
                        Error::config(at(key), format!("`{value}` is not a positive integer"))
                    })?)
                }
                other => return Err(Error::config(at(other), "unknown key")),
            }
        }
        Ok(s)
    }

    /// Fields set in `other` replace those in `self`.
    pub fn overridden_by(mut self, other: SweepSettings) -> Self {
        if other.preset.is_some() {
            self.preset = other.preset;
        }
        if other.state.is_some() {
            self.state = other.state;
        }
        if !other.accel.is_empty() {
            self.accel = other.accel;
        }
        if other.grid.is_some() {
            self.grid = other.grid;
        }
        if !other.measures.is_empty() {
            self.measures = other.measures;
        }
        if other.out.is_some() {
            self.out = other.out;
        }
        if other.threads.is_some() {
            self.threads = other.threads;
        }
        self
    }

    /// Applies the preset (if any), then this settings' own fields, and validates.
    pub fn resolve(self) -> Result<SweepConfig> {
        let base = match &self.preset {
            Some(name) => preset(name)?,
            None => SweepSettings::default(),
        };
        let merged = base.overridden_by(SweepSettings {
            preset: None,
            ..self
        });
        SweepConfig::new(
            merged.state.unwrap_or_default(),
            merged.accel,
            merged.grid,
            merged.measures,
            merged.out,
            merged.threads,
        )
    }
}

pub fn split_list(value: &str) -> Vec<String> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(String::from)
        .collect()
}

/// A validated sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub state: StateKind,
    pub accelerated: Vec<AccelSpec>,
    /// Points per swept axis.
    pub grid: usize,
    pub measures: Vec<String>,
    pub output: Option<PathBuf>,
    pub threads: Option<usize>,
}

pub const DEFAULT_GRID_1D: usize = 101;
pub const DEFAULT_GRID_2D: usize = 41;
pub const MAX_SWEPT_AXES: usize = 2;

const R_SLACK: f64 = 1e-12;

impl SweepConfig {
    pub fn new(
        state: StateKind,
        accelerated: Vec<AccelSpec>,
        grid: Option<usize>,
        measures: Vec<String>,
        output: Option<PathBuf>,
        threads: Option<usize>,
    ) -> Result<Self> {
        let observers: Vec<String> = (0..state.qubits())
            .map(|i| ((b'A' + i as u8) as char).to_string())
            .collect();
        for (i, spec) in accelerated.iter().enumerate() {
            let field = format!("accel {}", spec.observer);
            if !observers.contains(&spec.observer) {
                return Err(Error::config(
                    field,
                    format!("no observer `{}` in state", spec.observer),
                ));
            }
            if accelerated[..i].iter().any(|s| s.observer == spec.observer) {
                return Err(Error::config(field, "observer listed twice"));
            }
            let in_domain = |r: f64| (-R_SLACK..=FRAC_PI_4 + R_SLACK).contains(&r);
            match &spec.axis {
                Axis::Fixed(r) if !in_domain(*r) => {
                    return Err(Error::config(field, format!("r = {r} outside [0, pi/4]")))
                }
                Axis::Range { lo, hi } if !in_domain(*lo) || !in_domain(*hi) => {
                    return Err(Error::config(
                        field,
                        format!("range {lo}:{hi} outside [0, pi/4]"),
                    ))
                }
                Axis::Range { lo, hi } if lo >= hi => {
                    return Err(Error::config(field, format!("empty range {lo}:{hi}")))
                }
                Axis::Tied(other) => {
                    let target = accelerated.iter().find(|s| &s.observer == other);
                    if !matches!(target.map(|t| &t.axis), Some(Axis::Range { .. })) {
                        return Err(Error::config(
                            field,
                            format!("`@{other}` must name a swept observer"),
                        ));
                    }
                }
                _ => {}
            }
        }
        let swept = accelerated
            .iter()
            .filter(|s| matches!(s.axis, Axis::Range { .. }))
            .count();
        if swept > MAX_SWEPT_AXES {
            return Err(Error::config(
                "accel",
                format!("{swept} swept axes; at most {MAX_SWEPT_AXES} are supported"),
            ));
        }
        let grid = grid.unwrap_or(if swept >= 2 {
            DEFAULT_GRID_2D
        } else {
            DEFAULT_GRID_1D
        });
        if grid < 2 {
            return Err(Error::config(
                "grid",
                format!("grid must be at least 2, got {grid}"),
            ));
        }
        if measures.is_empty() {
            return Err(Error::config("measures", "no measures requested"));
        }
        if threads == Some(0) {
            return Err(Error::config("threads", "thread count must be positive"));
        }
        Ok(SweepConfig {
            state,
            accelerated,
            grid,
            measures,
            output,
            threads,
        })
    }
}

/// Names of every figure preset.
pub const PRESETS: &[&str] = &[
    "fig1a", "fig1b", "fig2", "fig3", "fig4a", "fig4b", "fig5", "fig6a", "fig6b", "fig7", "fig8",
    "fig9",
];

/// Observers, axes and columns for one of the named figure presets.
pub fn preset(name: &str) -> Result<SweepSettings> {
    let range = |obs: &str| AccelSpec {
        observer: obs.into(),
        axis: Axis::Range {
            lo: 0.0,
            hi: FRAC_PI_4,
        },
    };
    let tied = |obs: &str, to: &str| AccelSpec {
        observer: obs.into(),
        axis: Axis::Tied(to.into()),
    };
    let (accel, measures): (Vec<AccelSpec>, &[&str]) = match name {
        // one accelerated observer (D)
        "fig1a" => (vec![range("D")], &["N_A_rest", "N_D1_rest"]),
        "fig1b" => (vec![range("D")], &["N_A_B", "N_A_D1"]),
        "fig2" => (vec![range("D")], &["pi_A", "pi_D1"]),
        "fig3" => (vec![range("D")], &["pi4", "Pi4"]),
        "fig8" => (vec![range("D")], &["S"]),
        // two accelerated observers (C and D)
        "fig4a" => (vec![range("C"), range("D")], &["N_A_rest", "N_B_rest"]),
        "fig4b" => (vec![range("C"), range("D")], &["N_C1_rest", "N_D1_rest"]),
        "fig5" => (
            vec![range("D"), tied("C", "D")],
            &["N_A_B", "N_A_C1", "N_A_D1", "N_C1_D1"],
        ),
        "fig6a" => (
            vec![range("C"), range("D")],
            &["pi_A", "pi_B", "N_A_rest", "N_B_rest"],
        ),
        "fig6b" => (vec![range("C"), range("D")], &["pi_C1", "pi_D1"]),
        "fig7" => (vec![range("C"), range("D")], &["pi4", "Pi4"]),
        "fig9" => (vec![range("C"), range("D")], &["S"]),
        other => {
            return Err(Error::config(
                "preset",
                format!(
                    "unknown preset `{other}` (available: {})",
                    PRESETS.join(", ")
                ),
            ))
        }
    };
    Ok(SweepSettings {
        preset: None,
        state: Some(StateKind::W4),
        accel,
        grid: None,
        measures: measures.iter().map(|s| s.to_string()).collect(),
        out: None,
        threads: None,
    })
}
