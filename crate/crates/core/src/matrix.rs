//! Dense complex matrices sized for a handful of qubits.
//!
//! Everything here works on row-major `Complex64` storage. The only
//! non-trivial routine is the Hermitian eigensolver, a cyclic Jacobi method
//! that applies complex plane rotations directly to the Hermitian matrix.
//! For the 4x4 to 64x64 problems this crate produces it converges in well
//! under twenty sweeps and is fully deterministic.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Absolute tolerance for the Hermitian symmetry check.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Eigenvalues with magnitude below this are treated as exact zeros when counting rank.
pub const ZERO_EIGENVALUE_TOL: f64 = 1e-12;

/// Jacobi stops once the off-diagonal Frobenius mass falls below this, relative to `max(1, ‖M‖_F)`.
pub const JACOBI_TOL: f64 = 1e-14;

/// Maximum number of full Jacobi sweeps.
pub const JACOBI_MAX_SWEEPS: usize = 100;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from row-major entries.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                got: data.len(),
            });
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Builds a matrix from real rows. Panics on ragged input.
    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self::from_fn(rows.len(), cols, |i, j| Complex64::new(rows[i][j], 0.0))
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(d, 0.0);
        }
        m
    }

    /// The outer product `|u><v|`.
    pub fn outer(u: &[Complex64], v: &[Complex64]) -> Self {
        Self::from_fn(u.len(), v.len(), |i, j| u[i] * v[j].conj())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Row-major entries.
    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn add(&self, other: &Matrix) -> Result<Self> {
        self.same_shape(other)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Self> {
        self.same_shape(other)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn matmul(&self, other: &Matrix) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Matrix) -> Result<f64> {
        self.same_shape(other)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest `|M[i][j] - conj(M[j][i])|`, or `None` for a non-square matrix.
    pub fn hermitian_defect(&self) -> Option<f64> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        Some(worst)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_defect().is_some_and(|d| d <= tol)
    }

    /// `(M + M†) / 2`.
    pub fn hermitian_part(&self) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| {
            (self[(i, j)] + self[(j, i)].conj()) * 0.5
        })
    }

    fn same_shape(&self, other: &Matrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                got: other.rows * other.cols,
            });
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Complex64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                if z.im == 0.0 {
                    write!(f, "{:>10.6} ", z.re)?;
                } else {
                    write!(f, "{:>10.6}{:+.6}i ", z.re, z.im)?;
                }
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Kronecker product `a ⊗ b`.
pub fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    let rows = a.rows * b.rows;
    let cols = a.cols * b.cols;
    let mut out = Matrix::zeros(rows, cols);
    for i in 0..a.rows {
        for j in 0..a.cols {
            let aij = a[(i, j)];
            if aij == ZERO {
                continue;
            }
            for k in 0..b.rows {
                for l in 0..b.cols {
                    out[(i * b.rows + k, j * b.cols + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    out
}

/// Real eigenvalues of a Hermitian matrix, ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
}

impl Spectrum {
    /// Wraps raw eigenvalues, sorting them ascending.
    pub fn new(mut eigenvalues: Vec<f64>) -> Self {
        eigenvalues.sort_by(f64::total_cmp);
        Spectrum { eigenvalues }
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn sum(&self) -> f64 {
        self.eigenvalues.iter().sum()
    }

    pub fn min(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0)
    }

    pub fn max(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }

    /// `Σ|λ|`.
    pub fn abs_sum(&self) -> f64 {
        self.eigenvalues.iter().map(|l| l.abs()).sum()
    }

    /// `Σ|λ⁻|` over the strictly negative eigenvalues.
    pub fn negative_mass(&self) -> f64 {
        self.eigenvalues
            .iter()
            .filter(|&&l| l < 0.0)
            .map(|l| -l)
            .sum()
    }

    /// Number of eigenvalues strictly above `tol`.
    pub fn count_above(&self, tol: f64) -> usize {
        self.eigenvalues.iter().filter(|&&l| l > tol).count()
    }
}

/// Eigenvalues together with the unitary whose columns are the eigenvectors.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub spectrum: Spectrum,
    pub vectors: Matrix,
}

impl HermitianEigen {
    /// `Q Λ Q†`.
    pub fn reconstruct(&self) -> Matrix {
        let n = self.vectors.rows();
        let vals = self.spectrum.eigenvalues();
        Matrix::from_fn(n, n, |i, j| {
            (0..n)
                .map(|k| self.vectors[(i, k)] * vals[k] * self.vectors[(j, k)].conj())
                .sum()
        })
    }
}

/// Eigenvalues of a Hermitian matrix, sorted ascending.
pub fn hermitian_eigenvalues(m: &Matrix) -> Result<Spectrum> {
    jacobi(m, false).map(|(spectrum, _)| spectrum)
}

/// Full eigendecomposition; eigenvector columns follow the ascending eigenvalue order.
pub fn hermitian_eigen(m: &Matrix) -> Result<HermitianEigen> {
    let (spectrum, vectors) = jacobi(m, true)?;
    Ok(HermitianEigen {
        spectrum,
        vectors: vectors.expect("vectors requested"),
    })
}

/// `‖M‖₁ = Σ|λ|` for Hermitian `M`.
pub fn trace_norm(m: &Matrix) -> Result<f64> {
    Ok(hermitian_eigenvalues(m)?.abs_sum())
}

/// `2 Σ|λ⁻|`, which equals `‖M‖₁ - Tr M` for Hermitian `M`.
pub fn negative_eigenvalue_sum(m: &Matrix) -> Result<f64> {
    Ok(2.0 * hermitian_eigenvalues(m)?.negative_mass())
}

fn off_diagonal_norm(a: &Matrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

fn jacobi(m: &Matrix, want_vectors: bool) -> Result<(Spectrum, Option<Matrix>)> {
    let defect = m.hermitian_defect().ok_or(Error::DimensionMismatch {
        expected: m.rows() * m.rows(),
        got: m.rows() * m.cols(),
    })?;
    if defect > HERMITIAN_TOL {
        return Err(Error::NotHermitian(defect));
    }
    let n = m.rows();
    let mut a = m.hermitian_part();
    let mut v = want_vectors.then(|| Matrix::identity(n));
    let threshold = JACOBI_TOL * a.frobenius_norm().max(1.0);

    let mut converged = off_diagonal_norm(&a) < threshold;
    let mut sweeps = 0;
    while !converged {
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                off: off_diagonal_norm(&a),
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, v.as_mut(), p, q);
            }
        }
        converged = off_diagonal_norm(&a) < threshold;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = v.map(|v| Matrix::from_fn(n, n, |i, k| v[(i, order[k])]));
    Ok((Spectrum { eigenvalues }, vectors))
}

/// One complex Jacobi rotation annihilating `a[p][q]`.
///
/// With `a[p][q] = g e^{iφ}`, the unitary is `U = D R` where `D` rephases
/// column `q` by `e^{-iφ}` (making the pivot real) and `R` is the ordinary
/// real Jacobi rotation. `a ← U† a U`, `v ← v U`.
fn rotate(a: &mut Matrix, v: Option<&mut Matrix>, p: usize, q: usize) {
    let apq = a[(p, q)];
    let g = apq.norm();
    if g == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    // Pivot already negligible next to both diagonal entries.
    if g < f64::EPSILON * 1e-3 * (app.abs() + aqq.abs()) {
        a[(p, q)] = ZERO;
        a[(q, p)] = ZERO;
        return;
    }
    let phase = apq / g;
    let tau = (aqq - app) / (2.0 * g);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let n = a.rows();

    // U_pp = c, U_pq = s, U_qp = -s e^{-iφ}, U_qq = c e^{-iφ}
    let u_qp = -phase.conj() * s;
    let u_qq = phase.conj() * c;

    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * c + akq * u_qp;
        a[(k, q)] = akp * s + akq * u_qq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = apk * c + aqk * u_qp.conj();
        a[(q, k)] = apk * s + aqk * u_qq.conj();
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = Complex64::new(app - t * g, 0.0);
    a[(q, q)] = Complex64::new(aqq + t * g, 0.0);

    if let Some(v) = v {
        for k in 0..n {
            let vkp = v[(k, p)];
            let vkq = v[(k, q)];
            v[(k, p)] = vkp * c + vkq * u_qp;
            v[(k, q)] = vkp * s + vkq * u_qq;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn pauli_x() -> Matrix {
        Matrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]])
    }

    #[test]
    fn kron_of_identities_is_identity() {
        let i2 = Matrix::identity(2);
        assert_eq!(kron(&i2, &i2), Matrix::identity(4));
    }

    #[test]
    fn kron_x_identity_is_block_antidiagonal() {
        let m = kron(&pauli_x(), &Matrix::identity(2));
        let expected = Matrix::from_real_rows(&[
            &[0.0, 0.0, 1.0, 0.0],
            &[0.0, 0.0, 0.0, 1.0],
            &[1.0, 0.0, 0.0, 0.0],
            &[0.0, 1.0, 0.0, 0.0],
        ]);
        assert_eq!(m, expected);
    }

    #[test]
    fn kron_dimensions() {
        let m = kron(&Matrix::zeros(2, 2), &Matrix::zeros(8, 8));
        assert_eq!((m.rows(), m.cols()), (16, 16));
        let r = kron(&Matrix::zeros(2, 3), &Matrix::zeros(4, 5));
        assert_eq!((r.rows(), r.cols()), (8, 15));
    }

    #[test]
    fn diagonal_spectrum() {
        let s = hermitian_eigenvalues(&Matrix::from_diagonal(&[3.0, 1.0, 2.0])).unwrap();
        assert_eq!(s.eigenvalues(), &[1.0, 2.0, 3.0]);
    }

    #[test]
    fn pauli_x_spectrum() {
        let s = hermitian_eigenvalues(&pauli_x()).unwrap();
        assert!((s.eigenvalues()[0] + 1.0).abs() < 1e-15);
        assert!((s.eigenvalues()[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn pauli_y_spectrum_and_vectors() {
        let y = Matrix::from_vec(2, 2, vec![c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)]).unwrap();
        let e = hermitian_eigen(&y).unwrap();
        assert!((e.spectrum.eigenvalues()[0] + 1.0).abs() < 1e-15);
        assert!(e.reconstruct().max_abs_diff(&y).unwrap() < 1e-15);
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = Matrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
        assert!(matches!(
            hermitian_eigenvalues(&m),
            Err(Error::NotHermitian(_))
        ));
    }

    #[test]
    fn rejects_non_square() {
        assert!(matches!(
            hermitian_eigenvalues(&Matrix::zeros(2, 3)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn tiny_asymmetry_is_symmetrized() {
        let mut m = pauli_x();
        m[(0, 1)] = c(1.0 + 5e-13, 0.0);
        assert!(hermitian_eigenvalues(&m).is_ok());
    }

    #[test]
    fn trace_norm_and_negative_sum() {
        let m = Matrix::from_diagonal(&[1.0, -0.5]);
        assert!((trace_norm(&m).unwrap() - 1.5).abs() < 1e-15);
        let m = Matrix::from_diagonal(&[0.75, 0.75, -0.5]);
        assert!((negative_eigenvalue_sum(&m).unwrap() - 1.0).abs() < 1e-15);
        let psd = Matrix::from_diagonal(&[0.2, 0.8]);
        assert_eq!(negative_eigenvalue_sum(&psd).unwrap(), 0.0);
        assert!((trace_norm(&psd).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn spectrum_helpers() {
        let s = Spectrum::new(vec![0.5, -0.25, 0.0, 1e-13]);
        assert_eq!(s.eigenvalues()[0], -0.25);
        assert_eq!(s.count_above(ZERO_EIGENVALUE_TOL), 1);
        assert_eq!(s.negative_mass(), 0.25);
        assert!((s.sum() - 0.25 - 1e-13).abs() < 1e-16);
    }

    fn hermitian_strategy(max_n: usize) -> impl Strategy<Value = Matrix> {
        (1..=max_n).prop_flat_map(|n| {
            prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), n * n).prop_map(move |raw| {
                let m = Matrix::from_fn(n, n, |i, j| c(raw[i * n + j].0, raw[i * n + j].1));
                m.hermitian_part()
            })
        })
    }

    proptest! {
        #[test]
        fn reconstruction_residual_is_small(m in hermitian_strategy(12)) {
            let e = hermitian_eigen(&m).unwrap();
            prop_assert!(e.reconstruct().max_abs_diff(&m).unwrap() <= 1e-9);
            let vv = e.vectors.adjoint().matmul(&e.vectors).unwrap();
            prop_assert!(vv.max_abs_diff(&Matrix::identity(m.rows())).unwrap() <= 1e-12);
            let w = e.spectrum.eigenvalues();
            prop_assert!(w.windows(2).all(|p| p[0] <= p[1]));
        }

        #[test]
        fn kron_is_associative(a in hermitian_strategy(3), b in hermitian_strategy(3), c in hermitian_strategy(2)) {
            let left = kron(&kron(&a, &b), &c);
            let right = kron(&a, &kron(&b, &c));
            prop_assert!(left.max_abs_diff(&right).unwrap() <= 1e-15);
        }
    }
}
