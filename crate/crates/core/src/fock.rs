//! Occupation-number bookkeeping for registers of fermionic modes.
//!
//! Basis states are indexed big-endian: the first mode of a [`ModeLayout`]
//! is the most significant bit of the index. With the layout `A, B, C, D_I`
//! the state `|0001⟩` (only `D_I` occupied) sits at index 1.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{hermitian_eigenvalues, Matrix, HERMITIAN_TOL};

/// Engine limit on register size.
pub const MAX_MODES: usize = 12;

/// Tolerance on `Σ|amplitude|² = 1`.
pub const NORM_TOL: f64 = 1e-10;

/// Tolerance on `Tr ρ = 1`.
pub const TRACE_TOL: f64 = 1e-10;

/// Smallest eigenvalue a density matrix may have.
pub const PSD_TOL: f64 = -1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Region {
    Minkowski,
    RindlerI,
    RindlerII,
}

impl Region {
    /// Suffix used in compact mode tokens such as `D1`.
    pub fn token_suffix(self) -> &'static str {
        match self {
            Region::Minkowski => "",
            Region::RindlerI => "1",
            Region::RindlerII => "2",
        }
    }

    fn display_suffix(self) -> &'static str {
        match self {
            Region::Minkowski => "",
            Region::RindlerI => "_I",
            Region::RindlerII => "_II",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mode {
    pub observer: String,
    pub region: Region,
}

impl Mode {
    pub fn new(observer: impl Into<String>, region: Region) -> Self {
        Mode {
            observer: observer.into(),
            region,
        }
    }

    pub fn minkowski(observer: impl Into<String>) -> Self {
        Self::new(observer, Region::Minkowski)
    }

    /// Compact token (`A`, `D1`, `D2`) used in CSV column names.
    pub fn token(&self) -> String {
        format!("{}{}", self.observer, self.region.token_suffix())
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.observer, self.region.display_suffix())
    }
}

/// Ordered register of modes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModeLayout {
    modes: Vec<Mode>,
}

impl ModeLayout {
    pub fn new(modes: Vec<Mode>) -> Result<Self> {
        if modes.len() > MAX_MODES {
            return Err(Error::TooManyModes(modes.len()));
        }
        for (i, m) in modes.iter().enumerate() {
            if modes[..i].contains(m) {
                return Err(Error::DuplicateMode(m.to_string()));
            }
        }
        Ok(ModeLayout { modes })
    }

    /// All-Minkowski layout with one mode per label.
    pub fn inertial<S: AsRef<str>>(labels: &[S]) -> Result<Self> {
        Self::new(labels.iter().map(|l| Mode::minkowski(l.as_ref())).collect())
    }

    /// `A, B, C, ...` for `n` observers.
    pub fn lettered(n: usize) -> Result<Self> {
        if n > MAX_MODES {
            return Err(Error::TooManyModes(n));
        }
        let labels: Vec<String> = (0..n)
            .map(|i| ((b'A' + i as u8) as char).to_string())
            .collect();
        Self::inertial(&labels)
    }

    pub fn len(&self) -> usize {
        self.modes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }

    /// Hilbert-space dimension `2^n`.
    pub fn dim(&self) -> usize {
        1 << self.modes.len()
    }

    pub fn modes(&self) -> &[Mode] {
        &self.modes
    }

    pub fn mode(&self, position: usize) -> Option<&Mode> {
        self.modes.get(position)
    }

    pub fn position(&self, observer: &str, region: Region) -> Option<usize> {
        self.modes
            .iter()
            .position(|m| m.observer == observer && m.region == region)
    }

    /// Resolves `D_I`, `D1` or a bare observer label (when it names exactly one mode).
    pub fn find(&self, name: &str) -> Result<usize> {
        let by_display = self.modes.iter().position(|m| m.to_string() == name);
        let by_token = self.modes.iter().position(|m| m.token() == name);
        if let Some(p) = by_display.or(by_token) {
            return Ok(p);
        }
        let mut matches = self
            .modes
            .iter()
            .enumerate()
            .filter(|(_, m)| m.observer == name);
        match (matches.next(), matches.next()) {
            (Some((p, _)), None) => Ok(p),
            _ => Err(Error::UnknownObserver(name.to_string())),
        }
    }

    /// Layout restricted to `positions` (which must be sorted and valid).
    pub fn select(&self, positions: &[usize]) -> ModeLayout {
        ModeLayout {
            modes: positions.iter().map(|&p| self.modes[p].clone()).collect(),
        }
    }

    pub(crate) fn with_mode_replaced(&self, position: usize, mode: Mode) -> Result<ModeLayout> {
        let mut modes = self.modes.clone();
        modes[position] = mode;
        ModeLayout::new(modes)
    }

    pub(crate) fn with_mode_appended(&self, mode: Mode) -> Result<ModeLayout> {
        let mut modes = self.modes.clone();
        modes.push(mode);
        ModeLayout::new(modes)
    }

    /// Bit mask of `position` within a basis index.
    #[inline]
    pub fn bit(&self, position: usize) -> usize {
        1 << (self.modes.len() - 1 - position)
    }

    fn check_positions(&self, positions: &[usize]) -> Result<()> {
        for &p in positions {
            if p >= self.len() {
                return Err(Error::BadPosition {
                    position: p,
                    modes: self.len(),
                });
            }
        }
        Ok(())
    }
}

impl fmt::Display for ModeLayout {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.modes.iter().map(Mode::to_string).collect();
        write!(f, "{}", names.join(","))
    }
}

/// Big-endian index of an occupation pattern.
pub fn basis_index(occupations: &[u8], layout: &ModeLayout) -> Result<usize> {
    if occupations.len() != layout.len() {
        return Err(Error::LengthMismatch {
            expected: layout.len(),
            got: occupations.len(),
        });
    }
    occupations.iter().try_fold(0usize, |acc, &b| match b {
        0 | 1 => Ok((acc << 1) | b as usize),
        other => Err(Error::BadOccupation(other)),
    })
}

/// Occupation pattern of a basis index (inverse of [`basis_index`]).
pub fn occupations(index: usize, layout: &ModeLayout) -> Vec<u8> {
    (0..layout.len())
        .map(|p| u8::from(index & layout.bit(p) != 0))
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    layout: ModeLayout,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// Normalized state; fails with `NotNormalized` when `Σ|a|²` is off by more than [`NORM_TOL`].
    pub fn new(layout: ModeLayout, amplitudes: Vec<Complex64>) -> Result<Self> {
        let state = Self::unchecked(layout, amplitudes)?;
        let norm = state.norm_sqr();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(norm));
        }
        Ok(state)
    }

    pub(crate) fn unchecked(layout: ModeLayout, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != layout.dim() {
            return Err(Error::DimensionMismatch {
                expected: layout.dim(),
                got: amplitudes.len(),
            });
        }
        Ok(StateVector { layout, amplitudes })
    }

    /// The basis state with the given occupations.
    pub fn basis(layout: ModeLayout, occupation: &[u8]) -> Result<Self> {
        let idx = basis_index(occupation, &layout)?;
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); layout.dim()];
        amplitudes[idx] = Complex64::new(1.0, 0.0);
        Ok(StateVector { layout, amplitudes })
    }

    pub fn layout(&self) -> &ModeLayout {
        &self.layout
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }
}

/// `|W⟩_n`: equal superposition of the `n` single-excitation patterns over observers `A, B, C, ...`.
pub fn w_state(n: usize) -> Result<StateVector> {
    if n < 2 {
        return Err(Error::BadArity(n));
    }
    let layout = ModeLayout::lettered(n)?;
    let amp = Complex64::new(1.0 / (n as f64).sqrt(), 0.0);
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); layout.dim()];
    for p in 0..n {
        amplitudes[layout.bit(p)] = amp;
    }
    StateVector::unchecked(layout, amplitudes)
}

#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    layout: ModeLayout,
    matrix: Matrix,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity.
    pub fn new(layout: ModeLayout, matrix: Matrix) -> Result<Self> {
        if matrix.rows() != layout.dim() || !matrix.is_square() {
            return Err(Error::DimensionMismatch {
                expected: layout.dim(),
                got: matrix.rows(),
            });
        }
        let defect = matrix.hermitian_defect().unwrap_or(f64::INFINITY);
        if defect > HERMITIAN_TOL {
            return Err(Error::NotHermitian(defect));
        }
        let trace = matrix.trace().re;
        if (trace - 1.0).abs() > TRACE_TOL {
            return Err(Error::BadTrace(trace));
        }
        let min = hermitian_eigenvalues(&matrix)?.min();
        if min < PSD_TOL {
            return Err(Error::NotPositive(min));
        }
        Ok(DensityMatrix { layout, matrix })
    }

    pub(crate) fn unchecked(layout: ModeLayout, matrix: Matrix) -> Self {
        debug_assert_eq!(matrix.rows(), layout.dim());
        DensityMatrix { layout, matrix }
    }

    /// `I / 2^n`.
    pub fn maximally_mixed(layout: ModeLayout) -> Self {
        let d = layout.dim();
        let matrix = Matrix::identity(d).scale(Complex64::new(1.0 / d as f64, 0.0));
        DensityMatrix { layout, matrix }
    }

    pub fn layout(&self) -> &ModeLayout {
        &self.layout
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> Matrix {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    /// `Tr ρ²`.
    pub fn purity(&self) -> f64 {
        // Tr(ρρ) = Σ_ij ρ_ij ρ_ji = Σ_ij |ρ_ij|² for Hermitian ρ
        self.matrix.as_slice().iter().map(|z| z.norm_sqr()).sum()
    }
}

/// `ρ = |ψ⟩⟨ψ|`.
pub fn pure_to_density(psi: &StateVector) -> Result<DensityMatrix> {
    let norm = psi.norm_sqr();
    if (norm - 1.0).abs() > NORM_TOL {
        return Err(Error::NotNormalized(norm));
    }
    let m = Matrix::outer(psi.amplitudes(), psi.amplitudes());
    Ok(DensityMatrix::unchecked(psi.layout.clone(), m))
}

fn sorted_unique(positions: &[usize]) -> Vec<usize> {
    let mut v = positions.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

/// Reduced state on the modes in `keep`; the result lists them in their original order.
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix> {
    if keep.is_empty() {
        return Err(Error::EmptyKeepSet);
    }
    let layout = rho.layout();
    layout.check_positions(keep)?;
    let keep = sorted_unique(keep);
    let traced: Vec<usize> = (0..layout.len()).filter(|p| !keep.contains(p)).collect();

    // Full-register index for each kept (resp. traced) sub-index.
    let scatter = |positions: &[usize]| -> Vec<usize> {
        let k = positions.len();
        (0..1usize << k)
            .map(|sub| {
                positions
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| sub & (1 << (k - 1 - i)) != 0)
                    .fold(0, |acc, (_, &p)| acc | layout.bit(p))
            })
            .collect()
    };
    let kept_idx = scatter(&keep);
    let traced_idx = scatter(&traced);

    let m = rho.matrix();
    let dk = kept_idx.len();
    let out = Matrix::from_fn(dk, dk, |i, j| {
        traced_idx
            .iter()
            .map(|&t| m[(kept_idx[i] | t, kept_idx[j] | t)])
            .sum()
    });
    Ok(DensityMatrix::unchecked(layout.select(&keep), out))
}

/// Transposes the indices of the modes in `part`:
/// `⟨i_S i_R|ρ^{T_S}|j_S j_R⟩ = ⟨j_S i_R|ρ|i_S j_R⟩`.
///
/// `part` must be nonempty; transposing every mode gives the ordinary transpose.
pub fn partial_transpose(rho: &DensityMatrix, part: &[usize]) -> Result<Matrix> {
    let layout = rho.layout();
    if part.is_empty() {
        return Err(Error::BadPartition("transposed subsystem is empty".into()));
    }
    if let Some(&p) = part.iter().find(|&&p| p >= layout.len()) {
        return Err(Error::BadPartition(format!(
            "mode position {p} out of range for a {}-mode layout",
            layout.len()
        )));
    }
    let mask = part.iter().fold(0usize, |acc, &p| acc | layout.bit(p));
    let m = rho.matrix();
    let d = rho.dim();
    Ok(Matrix::from_fn(d, d, |i, j| {
        let row = (i & !mask) | (j & mask);
        let col = (j & !mask) | (i & mask);
        m[(row, col)]
    }))
}
