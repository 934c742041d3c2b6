//! Printing observed density matrices, optionally with each entry matched to
//! a trigonometric monomial.
//!
//! Symbols: `α = sin r_C`, `γ = cos r_C`, `β = sin r_D`, `δ = cos r_D`. Any
//! other accelerated observer `X` uses `s_X` and `c_X`. Entries of the W
//! state's observed matrices are a quarter of a small integer times such a
//! monomial (or a sum of two), so each entry is printed as `k·m/4`.
//! Matching is numeric at the given `r`, so pick generic values: at `r = 0`
//! every sine vanishes and distinct monomials collide.

use std::fmt::Write as _;

use crate::error::Result;
use crate::fock::{w_state, DensityMatrix};
use crate::matrix::Matrix;
use crate::rindler::{observed_density, Scenario};

/// Tolerance for matching `4·entry` to a candidate expression.
pub const MATCH_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Target {
    Rho,
    /// Partial transpose over the named mode (`D_I`, `D1`, `A`, ...).
    PartialTranspose(String),
}

/// A product of sines and cosines with a display name.
#[derive(Debug, Clone)]
struct Monomial {
    name: String,
    value: f64,
    degree: u32,
}

fn symbols(observer: &str) -> (String, String) {
    match observer {
        "C" => ("α".into(), "γ".into()),
        "D" => ("β".into(), "δ".into()),
        o => (format!("s_{o}"), format!("c_{o}")),
    }
}

fn power(sym: &str, k: u32) -> String {
    match k {
        0 => String::new(),
        1 => sym.to_string(),
        2 => format!("{sym}²"),
        _ => format!("{sym}^{k}"),
    }
}

/// Monomials of degree at most two per observer, lowest total degree first.
fn monomials(scenario: &Scenario) -> Vec<Monomial> {
    const EXPONENTS: [(u32, u32); 6] = [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)];
    let mut out = vec![Monomial {
        name: String::new(),
        value: 1.0,
        degree: 0,
    }];
    for (obs, p) in scenario.iter() {
        let (s, c) = symbols(obs);
        out = out
            .into_iter()
            .flat_map(|m| {
                let (s, c) = (s.clone(), c.clone());
                EXPONENTS.iter().map(move |&(a, b)| Monomial {
                    name: format!("{}{}{}", m.name, power(&s, a), power(&c, b)),
                    value: m.value * p.sin_r().powi(a as i32) * p.cos_r().powi(b as i32),
                    degree: m.degree + a + b,
                })
            })
            .collect();
    }
    out.sort_by_key(|m| m.degree);
    out
}

fn quarter(coef: i32, body: &str) -> String {
    let sign = if coef < 0 { "-" } else { "" };
    let k = coef.unsigned_abs();
    match (k, body.is_empty()) {
        (1, true) => format!("{sign}1/4"),
        (_, true) => format!("{sign}{k}/4"),
        (1, false) => format!("{sign}{body}/4"),
        (_, false) => format!("{sign}{k}{body}/4"),
    }
}

/// Symbolic form of one entry, or `?` when nothing matches.
fn symbolic(v: f64, monos: &[Monomial]) -> String {
    if v.abs() < MATCH_TOL {
        return "0".into();
    }
    let target = 4.0 * v;
    for coef in [1, -1, 2, -2, 3, -3, 4, -4] {
        if let Some(m) = monos
            .iter()
            .find(|m| (coef as f64 * m.value - target).abs() < MATCH_TOL)
        {
            return quarter(coef, &m.name);
        }
    }
    for (i, a) in monos.iter().enumerate() {
        for b in &monos[i + 1..] {
            for sign in [1.0, -1.0] {
                if (sign * (a.value + b.value) - target).abs() < MATCH_TOL {
                    let body = format!("({}+{})", a.name, b.name);
                    return quarter(sign as i32, &body);
                }
            }
        }
    }
    "?".into()
}

fn render(out: &mut String, m: &Matrix, scenario: &Scenario, symbolic_form: bool) {
    for i in 0..m.rows() {
        let line: Vec<String> = (0..m.cols())
            .map(|j| {
                let v = m[(i, j)];
                let re = if v.re == 0.0 { 0.0 } else { v.re };
                if v.im.abs() > MATCH_TOL {
                    format!("{re:>9.6}{:+.6}i", v.im)
                } else {
                    format!("{re:>9.6}")
                }
            })
            .collect();
        writeln!(out, "{}", line.join(" ")).unwrap();
    }
    if symbolic_form {
        let monos = monomials(scenario);
        writeln!(out).unwrap();
        let cells: Vec<Vec<String>> = (0..m.rows())
            .map(|i| {
                (0..m.cols())
                    .map(|j| {
                        let v = m[(i, j)];
                        if v.im.abs() > MATCH_TOL {
                            "?".to_string()
                        } else {
                            symbolic(v.re, &monos)
                        }
                    })
                    .collect()
            })
            .collect();
        let width = cells
            .iter()
            .flatten()
            .map(|c| c.chars().count())
            .max()
            .unwrap_or(1);
        for row in cells {
            let padded: Vec<String> = row.iter().map(|c| format!("{c:>w$}", w = width)).collect();
            writeln!(out, "{}", padded.join(" ")).unwrap();
        }
    }
}

/// The observed W-state matrix (or one of its partial transposes) as text.
pub fn emit_matrix(scenario: &Scenario, target: &Target, symbolic_form: bool) -> Result<String> {
    let rho: DensityMatrix = observed_density(&w_state(4)?, scenario)?;
    let layout = rho.layout().clone();
    let (title, m) = match target {
        Target::Rho => ("rho".to_string(), rho.matrix().clone()),
        Target::PartialTranspose(name) => {
            let pos = layout.find(name)?;
            let mode = layout.mode(pos).expect("find returns a valid position");
            (
                format!("partial transpose over {mode}"),
                crate::fock::partial_transpose(&rho, &[pos])?,
            )
        }
    };
    let mut out = String::new();
    let params: Vec<String> = scenario
        .iter()
        .map(|(o, p)| format!("r_{o} = {}", p.r()))
        .collect();
    writeln!(
        out,
        "# {title}; modes {layout}; {}",
        if params.is_empty() {
            "inertial".into()
        } else {
            params.join(", ")
        }
    )
    .unwrap();
    render(&mut out, &m, scenario, symbolic_form);
    Ok(out)
}
