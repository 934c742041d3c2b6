//! Measure names accepted in sweep output columns.
//!
//! Modes are written as compact tokens: the observer label, followed by `1`
//! for a region-I mode (`A`, `B`, `C1`, `D1`). The vocabulary is
//!
//! | name            | meaning                                   |
//! |-----------------|-------------------------------------------|
//! | `N_X_rest`      | 1-3 tangle of mode `X`                    |
//! | `N_X_YZW`       | same, spelling out the other three modes  |
//! | `N_X_YZ`        | 1-2 tangle (mode `W` traced out)          |
//! | `N_X_Y`         | 1-1 tangle                                |
//! | `pi_X`          | residual tangle of mode `X`               |
//! | `pi4`, `Pi4`    | arithmetic and geometric means of `pi_X`  |
//! | `S`             | von Neumann entropy (nats)                |

use std::fmt;

use crate::error::{Error, Result};
use crate::fock::ModeLayout;
use crate::measures::{pair, Pair, TangleReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Measure {
    OneThree(usize),
    OneTwo(usize, Pair),
    OneOne(Pair),
    Residual(usize),
    Pi4,
    BigPi4,
    Entropy,
}

/// A measure together with the column name it was requested under.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedMeasure {
    pub name: String,
    pub measure: Measure,
}

impl fmt::Display for NamedMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

impl Measure {
    pub fn needs_one_two(&self) -> bool {
        matches!(self, Measure::OneTwo(..))
    }

    /// Reads this measure off a report. The report must come from a four-mode state.
    pub fn value(&self, report: &TangleReport) -> f64 {
        match *self {
            Measure::OneThree(k) => report.one_three[k],
            Measure::OneTwo(k, p) => report
                .one_two
                .as_ref()
                .expect("report computed with one-two tangles")[&(k, p)],
            Measure::OneOne((a, b)) => report.pair(a, b),
            Measure::Residual(k) => report.pi[k],
            Measure::Pi4 => report.pi4,
            Measure::BigPi4 => report.big_pi4,
            Measure::Entropy => report.entropy,
        }
    }
}

fn tokenize(s: &str, tokens: &[String]) -> Option<Vec<usize>> {
    let mut out = Vec::new();
    let mut rest = s;
    while !rest.is_empty() {
        // longest match first so `D1` wins over `D`
        let (pos, tok) = tokens
            .iter()
            .enumerate()
            .filter(|(_, t)| rest.starts_with(t.as_str()))
            .max_by_key(|(_, t)| t.len())?;
        out.push(pos);
        rest = &rest[tok.len()..];
    }
    Some(out)
}

/// Resolves a measure name against the observed layout.
pub fn parse_measure(name: &str, layout: &ModeLayout) -> Result<NamedMeasure> {
    let tokens: Vec<String> = layout.modes().iter().map(|m| m.token()).collect();
    let unknown = || {
        Error::config(
            format!("measure `{name}`"),
            format!(
                "unknown measure; mode tokens for this scenario are {}",
                tokens.join(", ")
            ),
        )
    };
    let single = |s: &str| tokenize(s, &tokens).filter(|v| v.len() == 1).map(|v| v[0]);

    let measure = match name {
        "pi4" => Measure::Pi4,
        "Pi4" => Measure::BigPi4,
        "S" => Measure::Entropy,
        _ => {
            if let Some(rest) = name.strip_prefix("pi_") {
                Measure::Residual(single(rest).ok_or_else(unknown)?)
            } else if let Some(rest) = name.strip_prefix("N_") {
                let (focus, others) = rest.split_once('_').ok_or_else(unknown)?;
                let k = single(focus).ok_or_else(unknown)?;
                if others == "rest" {
                    Measure::OneThree(k)
                } else {
                    let mut partners = tokenize(others, &tokens).ok_or_else(unknown)?;
                    partners.sort_unstable();
                    partners.dedup();
                    if partners.contains(&k) {
                        return Err(unknown());
                    }
                    match partners.as_slice() {
                        [j] => Measure::OneOne(pair(k, *j)),
                        [j, l] => Measure::OneTwo(k, (*j, *l)),
                        [_, _, _] if layout.len() == 4 => Measure::OneThree(k),
                        _ => return Err(unknown()),
                    }
                }
            } else {
                return Err(unknown());
            }
        }
    };
    Ok(NamedMeasure {
        name: name.to_string(),
        measure,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{Mode, Region};

    fn layout() -> ModeLayout {
        ModeLayout::new(vec![
            Mode::minkowski("A"),
            Mode::minkowski("B"),
            Mode::new("C", Region::RindlerI),
            Mode::new("D", Region::RindlerI),
        ])
        .unwrap()
    }

    fn m(name: &str) -> Measure {
        parse_measure(name, &layout()).unwrap().measure
    }

    #[test]
    fn vocabulary() {
        assert_eq!(m("N_D1_rest"), Measure::OneThree(3));
        assert_eq!(m("N_D1_ABC1"), Measure::OneThree(3));
        assert_eq!(m("N_A_BC1D1"), Measure::OneThree(0));
        assert_eq!(m("N_A_D1"), Measure::OneOne((0, 3)));
        assert_eq!(m("N_D1_A"), Measure::OneOne((0, 3)));
        assert_eq!(m("N_C1_D1"), Measure::OneOne((2, 3)));
        assert_eq!(m("N_A_D1B"), Measure::OneTwo(0, (1, 3)));
        assert_eq!(m("pi_C1"), Measure::Residual(2));
        assert_eq!(m("pi4"), Measure::Pi4);
        assert_eq!(m("Pi4"), Measure::BigPi4);
        assert_eq!(m("S"), Measure::Entropy);
    }

    #[test]
    fn rejects_unknown_names() {
        for bad in [
            "N_C_D1", "N_A_A", "N_A", "pi_E", "entropy", "N_A_BX", "N_A_",
        ] {
            assert!(parse_measure(bad, &layout()).is_err(), "{bad}");
        }
    }
}
