//! Parameter sweeps over acceleration, written out as CSV tables.
//!
//! ```
//! use wtangle::sweep::{run_sweep, SweepSettings};
//!
//! let cfg = SweepSettings::parse("accel = D=0:pi/4\ngrid = 5\nmeasures = N_D1_rest, S\n")?
//!     .resolve()?;
//! let table = run_sweep(&cfg)?;
//! assert_eq!(table.columns(), ["r_D", "N_D1_rest", "S"]);
//! assert_eq!(table.rows().len(), 5);
//! # Ok::<(), wtangle::Error>(())
//! ```

pub mod config;
pub mod measure;

use std::fmt::Write as _;
use std::path::Path;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fock::w_state;
use crate::measures::TangleReport;
use crate::rindler::{observed_density, AccelerationParam, Scenario};

pub use config::{preset, AccelSpec, Axis, StateKind, SweepConfig, SweepSettings, PRESETS};
pub use measure::{parse_measure, Measure, NamedMeasure};

/// Evenly spaced points from `lo` to `hi`, both ends included exactly.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| {
            if i + 1 == n {
                hi
            } else {
                lo + (hi - lo) * i as f64 / (n - 1) as f64
            }
        })
        .collect()
}

/// Every grid point of a sweep as `(observer, r)` lists, sorted by observer.
///
/// Swept axes are ordered by observer name and enumerated lexicographically,
/// the first axis varying slowest.
pub fn grid_points(cfg: &SweepConfig) -> Vec<Vec<(String, f64)>> {
    let mut specs: Vec<&AccelSpec> = cfg.accelerated.iter().collect();
    specs.sort_by(|a, b| a.observer.cmp(&b.observer));
    let swept: Vec<(&str, Vec<f64>)> = specs
        .iter()
        .filter_map(|s| match s.axis {
            Axis::Range { lo, hi } => Some((s.observer.as_str(), linspace(lo, hi, cfg.grid))),
            _ => None,
        })
        .collect();

    let mut combos: Vec<Vec<f64>> = vec![vec![]];
    for (_, values) in &swept {
        combos = combos
            .into_iter()
            .flat_map(|prefix| {
                values.iter().map(move |&v| {
                    let mut next = prefix.clone();
                    next.push(v);
                    next
                })
            })
            .collect();
    }

    combos
        .into_iter()
        .map(|combo| {
            let swept_value = |obs: &str| {
                swept
                    .iter()
                    .position(|(o, _)| *o == obs)
                    .map(|i| combo[i])
                    .expect("tie target validated as swept")
            };
            specs
                .iter()
                .map(|s| {
                    let r = match &s.axis {
                        Axis::Fixed(r) => *r,
                        Axis::Range { .. } => swept_value(&s.observer),
                        Axis::Tied(other) => swept_value(other),
                    };
                    (s.observer.clone(), r)
                })
                .collect()
        })
        .collect()
}

/// Result of a sweep: one row per grid point, one column per `r` and measure.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    columns: Vec<String>,
    rows: Vec<Vec<f64>>,
}

impl SweepTable {
    pub fn new(columns: Vec<String>, rows: Vec<Vec<f64>>) -> Result<Self> {
        for row in &rows {
            if row.len() != columns.len() {
                return Err(Error::LengthMismatch {
                    expected: columns.len(),
                    got: row.len(),
                });
            }
        }
        Ok(SweepTable { columns, rows })
    }

    pub fn columns(&self) -> &[String] {
        &self.columns
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    /// Values of one column, if present.
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }

    /// Header plus one line per row, values in `{:.16e}`, LF line endings.
    ///
    /// Negative zero is written as zero. Non-finite values are rejected.
    pub fn to_csv(&self) -> Result<String> {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            for (i, &v) in row.iter().enumerate() {
                if !v.is_finite() {
                    return Err(Error::config(
                        format!("column `{}`", self.columns[i]),
                        format!("non-finite value {v}"),
                    ));
                }
                if i > 0 {
                    out.push(',');
                }
                let v = if v == 0.0 { 0.0 } else { v };
                write!(out, "{v:.16e}").expect("writing to a String cannot fail");
            }
            out.push('\n');
        }
        Ok(out)
    }

    pub fn write_csv(&self, path: &Path) -> std::io::Result<()> {
        let csv = self
            .to_csv()
            .map_err(|e| std::io::Error::new(std::io::ErrorKind::InvalidData, e.to_string()))?;
        std::fs::write(path, csv)
    }
}

fn scenario_for(point: &[(String, f64)]) -> Result<Scenario> {
    let mut s = Scenario::new();
    for (obs, r) in point {
        s.insert(obs.clone(), AccelerationParam::new(*r)?);
    }
    Ok(s)
}

fn measure_point(
    point: &[(String, f64)],
    measures: &[NamedMeasure],
    full: bool,
) -> Result<Vec<f64>> {
    let psi = w_state(4)?;
    let rho = observed_density(&psi, &scenario_for(point)?)?;
    let report = if full {
        TangleReport::compute_full(&rho, point.to_vec())?
    } else {
        TangleReport::compute(&rho, point.to_vec())?
    };
    let mut row: Vec<f64> = point.iter().map(|(_, r)| *r).collect();
    row.extend(measures.iter().map(|m| m.measure.value(&report)));
    Ok(row)
}

/// Evaluates every requested measure on every grid point.
///
/// Rows come back in grid order regardless of the thread count, so output is
/// identical between serial and parallel runs.
pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepTable> {
    let points = grid_points(cfg);
    let first = points.first().cloned().unwrap_or_default();
    let StateKind::W4 = cfg.state;
    let layout = observed_density(&w_state(4)?, &scenario_for(&first)?)?
        .layout()
        .clone();
    let measures = cfg
        .measures
        .iter()
        .map(|m| parse_measure(m, &layout))
        .collect::<Result<Vec<_>>>()?;
    let full = measures.iter().any(|m| m.measure.needs_one_two());

    let work = || {
        points
            .par_iter()
            .map(|p| measure_point(p, &measures, full))
            .collect::<Result<Vec<_>>>()
    };
    let rows = match cfg.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::config("threads", e.to_string()))?
            .install(work)?,
        None => work()?,
    };

    let mut columns: Vec<String> = first.iter().map(|(o, _)| format!("r_{o}")).collect();
    columns.extend(measures.iter().map(|m| m.name.clone()));
    SweepTable::new(columns, rows)
}
