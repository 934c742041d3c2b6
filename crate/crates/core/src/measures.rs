//! Negativities, residual π-tangles, the whole-entanglement means π₄ and Π₄,
//! and von Neumann entropy.
//!
//! Mode positions index into the density matrix's layout. The 1-3, 1-2 and
//! 1-1 tangles are negativities of one mode against three, two or one of the
//! others; for the smaller groupings the state is first reduced to the modes
//! involved.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::fock::{partial_trace, partial_transpose, DensityMatrix};
use crate::matrix::{hermitian_eigenvalues, negative_eigenvalue_sum, ZERO_EIGENVALUE_TOL};

/// Residual tangles in `[-RESIDUAL_TOL, 0)` are clipped to zero before taking a geometric mean.
pub const RESIDUAL_TOL: f64 = 1e-10;

/// Unordered pair of mode positions, stored as `(low, high)`.
pub type Pair = (usize, usize);

/// 1-1 tangles keyed by unordered pair.
pub type PairMap = BTreeMap<Pair, f64>;

pub fn pair(a: usize, b: usize) -> Pair {
    (a.min(b), a.max(b))
}

/// `‖ρ^{T_S}‖₁ - 1`, computed as twice the negative eigenvalue mass of the partial transpose.
pub fn negativity(rho: &DensityMatrix, part: &[usize]) -> Result<f64> {
    negative_eigenvalue_sum(&partial_transpose(rho, part)?)
}

fn require_modes(rho: &DensityMatrix, expected: usize) -> Result<()> {
    if rho.layout().len() != expected {
        return Err(Error::WrongArity {
            expected,
            got: rho.layout().len(),
        });
    }
    Ok(())
}

/// `N_{k(rest)}` for each of the four modes, in layout order.
pub fn one_three_tangles(rho: &DensityMatrix) -> Result<Vec<f64>> {
    require_modes(rho, 4)?;
    (0..4).map(|k| negativity(rho, &[k])).collect()
}

/// Negativity between modes `a` and `b` after tracing out everything else, transposing `a`.
pub fn pair_negativity(rho: &DensityMatrix, a: usize, b: usize) -> Result<f64> {
    if a == b {
        return Err(Error::BadPartition(format!(
            "pair ({a}, {b}) repeats a mode"
        )));
    }
    let reduced = partial_trace(rho, &[a, b])?;
    // partial_trace orders the kept modes, so `a` is first iff a < b
    let focus = usize::from(a > b);
    negativity(&reduced, &[focus])
}

/// `N_{κξ}` for all six pairs of a four-mode state.
pub fn one_one_tangles(rho: &DensityMatrix) -> Result<PairMap> {
    require_modes(rho, 4)?;
    let mut out = PairMap::new();
    for a in 0..4 {
        for b in (a + 1)..4 {
            out.insert((a, b), pair_negativity(rho, a, b)?);
        }
    }
    Ok(out)
}

/// 1-2 tangles `N_{k(jl)}` keyed by `(k, (j, l))`.
///
/// The fourth mode is traced out and `k` is transposed.
pub fn one_two_tangles(rho: &DensityMatrix) -> Result<BTreeMap<(usize, Pair), f64>> {
    require_modes(rho, 4)?;
    let mut out = BTreeMap::new();
    for k in 0..4 {
        for j in 0..4 {
            for l in (j + 1)..4 {
                if j == k || l == k {
                    continue;
                }
                let keep = [k, j, l];
                let reduced = partial_trace(rho, &keep)?;
                let focus = [k, j, l].iter().filter(|&&m| m < k).count();
                out.insert((k, (j, l)), negativity(&reduced, &[focus])?);
            }
        }
    }
    Ok(out)
}

/// `π_k = N²_{k(rest)} - Σ_{j≠k} N²_{kj}`.
pub fn residual_pi(one_three: &[f64], one_one: &PairMap) -> Result<Vec<f64>> {
    if one_three.len() != 4 {
        return Err(Error::IncompleteInput(format!(
            "need 4 one-three tangles, got {}",
            one_three.len()
        )));
    }
    let n = one_three.len();
    (0..n)
        .map(|k| {
            let mut pi = one_three[k].powi(2);
            for j in (0..n).filter(|&j| j != k) {
                let v = one_one.get(&pair(k, j)).ok_or_else(|| {
                    Error::IncompleteInput(format!("missing pair ({}, {})", k.min(j), k.max(j)))
                })?;
                pi -= v * v;
            }
            Ok(pi)
        })
        .collect()
}

fn require_four(pi: &[f64]) -> Result<()> {
    if pi.len() != 4 {
        return Err(Error::IncompleteInput(format!(
            "need 4 residual tangles, got {}",
            pi.len()
        )));
    }
    Ok(())
}

/// π₄: arithmetic mean of the four residual tangles.
pub fn pi4_tangle(pi: &[f64]) -> Result<f64> {
    require_four(pi)?;
    Ok(pi.iter().sum::<f64>() / 4.0)
}

/// Π₄: geometric mean of the four residual tangles.
pub fn big_pi4_tangle(pi: &[f64]) -> Result<f64> {
    require_four(pi)?;
    let mut product = 1.0;
    for (mode, &v) in pi.iter().enumerate() {
        if v < -RESIDUAL_TOL {
            return Err(Error::NegativeResidual { mode, value: v });
        }
        product *= v.max(0.0);
    }
    Ok(product.powf(0.25))
}

/// `S = -Σ λ ln λ`, with `0 ln 0 = 0`.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    let spectrum = hermitian_eigenvalues(rho.matrix())?;
    Ok(entropy_of(spectrum.eigenvalues()))
}

/// Shannon entropy (nats) of a list of eigenvalues.
///
/// Entries at or below [`ZERO_EIGENVALUE_TOL`] contribute nothing; they are
/// roundoff from the eigensolver, and `-λ ln λ` would otherwise turn a
/// `1e-17` into a visible `4e-16`.
pub fn entropy_of(eigenvalues: &[f64]) -> f64 {
    eigenvalues
        .iter()
        .filter(|&&l| l > ZERO_EIGENVALUE_TOL)
        .map(|&l| -l * l.ln())
        .sum::<f64>()
        .max(0.0)
}

/// Every measure for one scenario point.
#[derive(Debug, Clone, PartialEq)]
pub struct TangleReport {
    /// `(observer, r)` for each accelerated observer.
    pub params: Vec<(String, f64)>,
    /// Mode names in layout order (`A`, `B`, `C_I`, `D_I`, ...).
    pub modes: Vec<String>,
    pub one_three: Vec<f64>,
    pub one_one: PairMap,
    pub one_two: Option<BTreeMap<(usize, Pair), f64>>,
    pub pi: Vec<f64>,
    pub pi4: f64,
    pub big_pi4: f64,
    pub entropy: f64,
}

impl TangleReport {
    /// Computes everything except the 1-2 tangles.
    pub fn compute(rho: &DensityMatrix, params: Vec<(String, f64)>) -> Result<Self> {
        let one_three = one_three_tangles(rho)?;
        let one_one = one_one_tangles(rho)?;
        let pi = residual_pi(&one_three, &one_one)?;
        let pi4 = pi4_tangle(&pi)?;
        let big_pi4 = big_pi4_tangle(&pi)?;
        let entropy = von_neumann_entropy(rho)?;
        Ok(TangleReport {
            params,
            modes: rho.layout().modes().iter().map(|m| m.to_string()).collect(),
            one_three,
            one_one,
            one_two: None,
            pi,
            pi4,
            big_pi4,
            entropy,
        })
    }

    /// [`TangleReport::compute`] plus the 1-2 tangles.
    pub fn compute_full(rho: &DensityMatrix, params: Vec<(String, f64)>) -> Result<Self> {
        let mut report = Self::compute(rho, params)?;
        report.one_two = Some(one_two_tangles(rho)?);
        Ok(report)
    }

    pub fn pair(&self, a: usize, b: usize) -> f64 {
        self.one_one[&pair(a, b)]
    }
}
