//! Helpers shared by the integration test targets.
#![allow(dead_code)]

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wtangle::fock::{DensityMatrix, ModeLayout, StateVector};
use wtangle::matrix::Matrix;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_complex(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

pub fn random_state(modes: usize, rng: &mut impl Rng) -> StateVector {
    let layout = ModeLayout::lettered(modes).unwrap();
    let mut amps: Vec<Complex64> = (0..layout.dim()).map(|_| random_complex(rng)).collect();
    let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    for a in &mut amps {
        *a /= norm;
    }
    StateVector::new(layout, amps).unwrap()
}

pub fn random_hermitian(dim: usize, rng: &mut impl Rng) -> Matrix {
    let g = Matrix::from_fn(dim, dim, |_, _| random_complex(rng));
    g.add(&g.adjoint()).unwrap().scale(Complex64::new(0.5, 0.0))
}

/// `G G† / Tr(G G†)` for a random complex `G`: full-rank, generically entangled.
pub fn random_density(modes: usize, rng: &mut impl Rng) -> DensityMatrix {
    let layout = ModeLayout::lettered(modes).unwrap();
    let dim = layout.dim();
    let g = Matrix::from_fn(dim, dim, |_, _| random_complex(rng));
    let m = g.matmul(&g.adjoint()).unwrap();
    let tr = m.trace().re;
    DensityMatrix::new(layout, m.scale(Complex64::new(1.0 / tr, 0.0))).unwrap()
}

/// Values substituted into a pattern table.
#[derive(Debug, Clone, Copy)]
pub struct Symbols {
    /// `sin r_C`
    pub a: f64,
    /// `sin r_D`
    pub b: f64,
    /// `cos r_C`
    pub g: f64,
    /// `cos r_D`
    pub d: f64,
}

impl Symbols {
    pub fn new(r_c: f64, r_d: f64) -> Self {
        Symbols {
            a: r_c.sin(),
            b: r_d.sin(),
            g: r_c.cos(),
            d: r_d.cos(),
        }
    }

    fn term(&self, t: &str) -> f64 {
        t.chars()
            .map(|c| match c {
                'a' => self.a,
                'b' => self.b,
                'g' => self.g,
                'd' => self.d,
                '0' => 0.0,
                '1' => 1.0,
                other => panic!("bad pattern symbol {other}"),
            })
            .product()
    }
}

/// Builds `¼ × table`, where each cell is a sum of symbol products such as
/// `gd` (γδ) or `aa+bb` (α² + β²).
pub fn pattern(table: &str, s: Symbols) -> Matrix {
    let cells: Vec<f64> = table
        .split_whitespace()
        .map(|cell| cell.split('+').map(|t| s.term(t)).sum::<f64>() / 4.0)
        .collect();
    let n = (cells.len() as f64).sqrt() as usize;
    assert_eq!(n * n, cells.len(), "pattern is not square");
    Matrix::from_fn(n, n, |i, j| Complex64::new(cells[i * n + j], 0.0))
}
