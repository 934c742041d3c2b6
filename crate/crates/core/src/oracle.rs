//! Closed-form expressions for the accelerated W state.
//!
//! These are written straight from the trigonometric formulas and never touch
//! the state-vector pipeline, so agreement between the two is a genuine cross
//! check. Negativity formulas come from eigenvalue expressions that go
//! negative once the underlying eigenvalue turns positive; every public
//! negativity here reports `max(value, 0)`.

use std::f64::consts::FRAC_PI_4;

use crate::error::{Error, Result};

const DOMAIN_SLACK: f64 = 1e-12;

fn check(r: f64) -> Result<f64> {
    if !r.is_finite() || !(-DOMAIN_SLACK..=FRAC_PI_4 + DOMAIN_SLACK).contains(&r) {
        return Err(Error::DomainError(r));
    }
    Ok(r)
}

/// 1-3 tangle of the accelerated mode, one observer (`D`) accelerated.
pub fn n_d1_abc(r_d: f64) -> Result<f64> {
    let r = check(r_d)?;
    let c2 = (2.0 * r).cos();
    let c4 = (4.0 * r).cos();
    let v = (3.0 * c2 + (1.5f64).sqrt() * (4.0 * c2 + 3.0 * c4 + 25.0).sqrt() - 3.0) / 8.0;
    Ok(v.max(0.0))
}

/// 1-1 tangle between two inertial observers: `(√2 - 1) / 2`.
pub fn n_ab_const() -> f64 {
    (std::f64::consts::SQRT_2 - 1.0) / 2.0
}

fn inertial_accelerated_pair(r: f64) -> f64 {
    let c2 = (2.0 * r).cos();
    let c4 = (4.0 * r).cos();
    (-6.0 + std::f64::consts::SQRT_2 * (28.0 * c2 + 9.0 * c4 + 27.0).sqrt() - 2.0 * c2) / 16.0
}

/// 1-1 tangle between an inertial observer and the accelerated `D_I`.
pub fn n_i_d1(r_d: f64) -> Result<f64> {
    Ok(inertial_accelerated_pair(check(r_d)?).max(0.0))
}

/// Two accelerated observers: the 1-1 tangle that depends on `r_c` alone.
///
/// Same functional form as [`n_i_d1`]; numerically it is the pair formed by
/// an inertial observer and `C_I`.
pub fn n_pair_accel_one(r_c: f64) -> Result<f64> {
    Ok(inertial_accelerated_pair(check(r_c)?).max(0.0))
}

/// Unclipped form of [`n_pair_accel_both`]; negative past the vanishing threshold.
pub fn n_pair_accel_both_raw(r_c: f64, r_d: f64) -> Result<f64> {
    let (rc, rd) = (check(r_c)?, check(r_d)?);
    let sum = (2.0 * rc + 2.0 * rd).cos();
    let diff = (2.0 * rc - 2.0 * rd).cos();
    let (c2c, c4c) = ((2.0 * rc).cos(), (4.0 * rc).cos());
    let (c2d, c4d) = ((2.0 * rd).cos(), (4.0 * rd).cos());
    let radicand =
        22.0 * sum + 22.0 * diff + 9.0 * c4c - 16.0 * c2c + 9.0 * c4d - 16.0 * c2d + 34.0;
    let outside = -2.0 * sum - 2.0 * diff + 2.0 * c2c + 2.0 * c2d - 8.0;
    Ok((std::f64::consts::SQRT_2 * radicand.sqrt() + outside) / 16.0)
}

/// 1-1 tangle between the two accelerated modes `C_I` and `D_I`.
pub fn n_pair_accel_both(r_c: f64, r_d: f64) -> Result<f64> {
    Ok(n_pair_accel_both_raw(r_c, r_d)?.max(0.0))
}

/// Bracket searched for the vanishing threshold.
pub const THRESHOLD_BRACKET: (f64, f64) = (0.4, 0.55);

/// Bisection tolerance for the vanishing threshold.
pub const THRESHOLD_TOL: f64 = 1e-10;

/// Smallest `r` at which the accelerated-pair negativity at `r_c = r_d = r` reaches zero.
pub fn vanishing_threshold() -> f64 {
    let f = |r: f64| n_pair_accel_both_raw(r, r).expect("bracket lies inside [0, pi/4]");
    let (mut lo, mut hi) = THRESHOLD_BRACKET;
    debug_assert!(f(lo) > 0.0 && f(hi) < 0.0);
    while hi - lo > THRESHOLD_TOL {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// The two nonzero eigenvalues of the one-accelerated observed state.
pub fn one_accel_spectrum(r_d: f64) -> Result<(f64, f64)> {
    let c2 = (2.0 * check(r_d)?).cos();
    Ok((3.0 / 8.0 * (1.0 - c2), (3.0 * c2 + 5.0) / 8.0))
}

/// von Neumann entropy of the one-accelerated observed state.
pub fn entropy_one_accel(r_d: f64) -> Result<f64> {
    let (l1, l2) = one_accel_spectrum(r_d)?;
    let term = |l: f64| if l > 0.0 { -l * l.ln() } else { 0.0 };
    Ok(term(l1) + term(l2))
}

/// A named closed-form curve.
#[derive(Debug, Clone, Copy)]
pub struct OracleCurve {
    pub name: &'static str,
    /// Number of `r` arguments (0 for constants).
    pub arity: usize,
    evaluator: fn(&[f64]) -> Result<f64>,
}

impl OracleCurve {
    pub fn eval(&self, r: &[f64]) -> Result<f64> {
        if r.len() != self.arity {
            return Err(Error::IncompleteInput(format!(
                "{} takes {} argument(s), got {}",
                self.name,
                self.arity,
                r.len()
            )));
        }
        (self.evaluator)(r)
    }
}

/// Every closed-form curve, addressable by name.
pub fn curves() -> &'static [OracleCurve] {
    const CURVES: &[OracleCurve] = &[
        OracleCurve {
            name: "n_d1_abc",
            arity: 1,
            evaluator: |r| n_d1_abc(r[0]),
        },
        OracleCurve {
            name: "n_ab_const",
            arity: 0,
            evaluator: |_| Ok(n_ab_const()),
        },
        OracleCurve {
            name: "n_i_d1",
            arity: 1,
            evaluator: |r| n_i_d1(r[0]),
        },
        OracleCurve {
            name: "n_pair_accel_one",
            arity: 1,
            evaluator: |r| n_pair_accel_one(r[0]),
        },
        OracleCurve {
            name: "n_pair_accel_both",
            arity: 2,
            evaluator: |r| n_pair_accel_both(r[0], r[1]),
        },
        OracleCurve {
            name: "entropy_one_accel",
            arity: 1,
            evaluator: |r| entropy_one_accel(r[0]),
        },
    ];
    CURVES
}

pub fn curve(name: &str) -> Result<&'static OracleCurve> {
    curves()
        .iter()
        .find(|c| c.name == name)
        .ok_or_else(|| Error::UnknownOracle(name.to_string()))
}
