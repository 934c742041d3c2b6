//! Minkowski to Rindler mode mapping for uniformly accelerated observers.
//!
//! In the single-mode approximation an accelerated observer's Minkowski
//! mode splits into a region-I mode (which the observer can access) and a
//! region-II mode (which it cannot):
//!
//! ```text
//! |0⟩_M = cos r |0⟩_I |0⟩_II + sin r |1⟩_I |1⟩_II
//! |1⟩_M = |1⟩_I |0⟩_II
//! ```
//!
//! The map is applied as a plain linear map on occupation labels; no
//! anticommutation signs are introduced. The region-I mode takes the place
//! of the original mode and the region-II mode is appended to the end of the
//! layout, so after tracing out region II the accessible modes keep their
//! original order.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_4, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{partial_trace, pure_to_density, DensityMatrix, Mode, Region, StateVector};

/// Slack allowed on the `[0, π/4]` bounds of `r` for values computed in floating point.
const R_SLACK: f64 = 1e-12;

/// Proper acceleration, mode frequency and speed of light an `r` was derived from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalInputs {
    pub acceleration: f64,
    pub omega: f64,
    pub c: f64,
}

/// Acceleration parameter `r ∈ [0, π/4]`, with `cos r = (e^{-2πωc/a} + 1)^{-1/2}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AccelerationParam {
    r: f64,
    sin_r: f64,
    cos_r: f64,
    physical: Option<PhysicalInputs>,
}

impl AccelerationParam {
    pub fn new(r: f64) -> Result<Self> {
        if !r.is_finite() || !(-R_SLACK..=FRAC_PI_4 + R_SLACK).contains(&r) {
            return Err(Error::DomainError(r));
        }
        let r = r.clamp(0.0, FRAC_PI_4);
        let (sin_r, cos_r) = r.sin_cos();
        Ok(AccelerationParam {
            r,
            sin_r,
            cos_r,
            physical: None,
        })
    }

    /// The inertial limit `r = 0`.
    pub fn inertial() -> Self {
        Self::new(0.0).expect("0 is in range")
    }

    /// The infinite-acceleration limit `r = π/4`.
    pub fn infinite() -> Self {
        Self::new(FRAC_PI_4).expect("pi/4 is in range")
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn sin_r(&self) -> f64 {
        self.sin_r
    }

    pub fn cos_r(&self) -> f64 {
        self.cos_r
    }

    pub fn physical(&self) -> Option<PhysicalInputs> {
        self.physical
    }
}

/// Converts a proper acceleration `a` (possibly `+∞`), frequency `ω` and light speed `c` into `r`.
pub fn acceleration_to_r(acceleration: f64, omega: f64, c: f64) -> Result<AccelerationParam> {
    for (name, v) in [("omega", omega), ("c", c)] {
        if !v.is_finite() || v <= 0.0 {
            return Err(Error::BadPhysicalInput(format!(
                "{name} must be positive and finite, got {v}"
            )));
        }
    }
    if acceleration.is_nan() || acceleration < 0.0 {
        return Err(Error::BadPhysicalInput(format!(
            "acceleration must be non-negative, got {acceleration}"
        )));
    }
    // cos²r = 1/(1 + e^{-x})  ⇔  tan r = e^{-x/2}, with x = 2πωc/a
    let r = if acceleration == 0.0 {
        0.0
    } else {
        let x = 2.0 * PI * omega * c / acceleration;
        (-0.5 * x).exp().atan()
    };
    let mut p = AccelerationParam::new(r)?;
    p.physical = Some(PhysicalInputs {
        acceleration,
        omega,
        c,
    });
    Ok(p)
}

/// Which observers are accelerated, and how hard. Everyone else is inertial.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Scenario {
    accelerated: BTreeMap<String, AccelerationParam>,
}

impl Scenario {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builder form of [`Scenario::insert`].
    pub fn with(mut self, observer: impl Into<String>, p: AccelerationParam) -> Self {
        self.insert(observer, p);
        self
    }

    /// Shorthand for a scenario built from raw `r` values.
    pub fn from_r<S: AsRef<str>>(pairs: &[(S, f64)]) -> Result<Self> {
        let mut s = Scenario::new();
        for (obs, r) in pairs {
            s.insert(obs.as_ref(), AccelerationParam::new(*r)?);
        }
        Ok(s)
    }

    pub fn insert(&mut self, observer: impl Into<String>, p: AccelerationParam) {
        self.accelerated.insert(observer.into(), p);
    }

    pub fn get(&self, observer: &str) -> Option<&AccelerationParam> {
        self.accelerated.get(observer)
    }

    pub fn is_empty(&self) -> bool {
        self.accelerated.is_empty()
    }

    pub fn len(&self) -> usize {
        self.accelerated.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &AccelerationParam)> {
        self.accelerated.iter().map(|(k, v)| (k.as_str(), v))
    }
}

/// Maps `observer`'s Minkowski mode to a region-I/region-II pair.
///
/// The region-I mode keeps the observer's position; the region-II mode becomes the last mode.
pub fn apply_rindler(
    psi: &StateVector,
    observer: &str,
    p: &AccelerationParam,
) -> Result<StateVector> {
    let layout = psi.layout();
    let pos = match layout.position(observer, Region::Minkowski) {
        Some(pos) => pos,
        None if layout.position(observer, Region::RindlerI).is_some() => {
            return Err(Error::AlreadyTransformed(observer.to_string()))
        }
        None => return Err(Error::UnknownObserver(observer.to_string())),
    };
    let new_layout = layout
        .with_mode_replaced(pos, Mode::new(observer, Region::RindlerI))?
        .with_mode_appended(Mode::new(observer, Region::RindlerII))?;

    let old_bit = layout.bit(pos);
    // Shifting left by one leaves room for the appended region-II bit (the LSB);
    // the region-I bit lands where the Minkowski bit was, one place higher.
    let region_i_bit = old_bit << 1;
    let region_ii_bit = 1;
    let (cos_r, sin_r) = (p.cos_r(), p.sin_r());

    let mut out = vec![Complex64::new(0.0, 0.0); new_layout.dim()];
    for (idx, &amp) in psi.amplitudes().iter().enumerate() {
        if amp == Complex64::new(0.0, 0.0) {
            continue;
        }
        let base = idx << 1;
        if idx & old_bit != 0 {
            out[base] += amp;
        } else {
            out[base] += amp * cos_r;
            out[base | region_i_bit | region_ii_bit] += amp * sin_r;
        }
    }
    StateVector::unchecked(new_layout, out)
}

/// Transforms every accelerated observer (in layout order), then traces out all region-II modes.
pub fn observed_density(psi0: &StateVector, scenario: &Scenario) -> Result<DensityMatrix> {
    let layout = psi0.layout();
    if let Some(m) = layout
        .modes()
        .iter()
        .find(|m| m.region != Region::Minkowski)
    {
        return Err(Error::AlreadyTransformed(m.observer.clone()));
    }
    for (obs, _) in scenario.iter() {
        if layout.position(obs, Region::Minkowski).is_none() {
            return Err(Error::UnknownObserver(obs.to_string()));
        }
    }
    let mut psi = psi0.clone();
    for mode in layout.modes() {
        if let Some(p) = scenario.get(&mode.observer) {
            psi = apply_rindler(&psi, &mode.observer, p)?;
        }
    }
    let rho = pure_to_density(&psi)?;
    if scenario.is_empty() {
        return Ok(rho);
    }
    let keep: Vec<usize> = rho
        .layout()
        .modes()
        .iter()
        .enumerate()
        .filter(|(_, m)| m.region != Region::RindlerII)
        .map(|(i, _)| i)
        .collect();
    partial_trace(&rho, &keep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{basis_index, w_state, ModeLayout};

    fn single(bit: u8) -> StateVector {
        StateVector::basis(ModeLayout::lettered(1).unwrap(), &[bit]).unwrap()
    }

    #[test]
    fn infinite_acceleration_gives_pi_over_4() {
        let p = acceleration_to_r(f64::INFINITY, 1.0, 1.0).unwrap();
        assert!((p.r() - FRAC_PI_4).abs() < 1e-15);
        assert!((p.cos_r() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn vanishing_acceleration_gives_zero() {
        assert_eq!(acceleration_to_r(0.0, 1.0, 1.0).unwrap().r(), 0.0);
        assert!(acceleration_to_r(1e-6, 1.0, 1.0).unwrap().r() < 1e-300);
    }

    #[test]
    fn ln3_exponent_gives_pi_over_6() {
        // 2πωc/a = ln 3
        let a = 2.0 * PI / 3f64.ln();
        let p = acceleration_to_r(a, 1.0, 1.0).unwrap();
        assert!((p.r() - PI / 6.0).abs() < 1e-15);
        assert!((p.cos_r() - 3f64.sqrt() / 2.0).abs() < 1e-15);
        assert_eq!(p.physical().unwrap().acceleration, a);
    }

    #[test]
    fn conversion_matches_arccos_form_and_is_monotone() {
        let mut last = -1.0;
        for k in 1..200 {
            let a = 0.05 * k as f64;
            let p = acceleration_to_r(a, 0.7, 1.3).unwrap();
            let direct = (((-2.0 * PI * 0.7 * 1.3 / a).exp() + 1.0).powf(-0.5)).acos();
            assert!((p.r() - direct).abs() < 1e-7, "a = {a}");
            assert!(p.r() > last);
            assert!((p.cos_r().powi(2) + p.sin_r().powi(2) - 1.0).abs() < 1e-15);
            last = p.r();
        }
    }

    #[test]
    fn rejects_bad_physical_input() {
        assert!(matches!(
            acceleration_to_r(-1.0, 1.0, 1.0),
            Err(Error::BadPhysicalInput(_))
        ));
        assert!(matches!(
            acceleration_to_r(1.0, 0.0, 1.0),
            Err(Error::BadPhysicalInput(_))
        ));
        assert!(matches!(
            acceleration_to_r(1.0, 1.0, -3.0),
            Err(Error::BadPhysicalInput(_))
        ));
        assert!(matches!(
            acceleration_to_r(f64::NAN, 1.0, 1.0),
            Err(Error::BadPhysicalInput(_))
        ));
    }

    #[test]
    fn r_domain() {
        assert!(AccelerationParam::new(-0.1).is_err());
        assert!(AccelerationParam::new(0.8).is_err());
        assert!(AccelerationParam::new(f64::NAN).is_err());
        assert_eq!(
            AccelerationParam::new(FRAC_PI_4 + 1e-13).unwrap().r(),
            FRAC_PI_4
        );
    }

    #[test]
    fn vacuum_maps_to_two_mode_superposition() {
        let r: f64 = 0.4;
        let out = apply_rindler(&single(0), "A", &AccelerationParam::new(r).unwrap()).unwrap();
        assert_eq!(out.layout().to_string(), "A_I,A_II");
        let a = out.amplitudes();
        assert_eq!(a[0].re, r.cos());
        assert_eq!(a[3].re, r.sin());
        assert_eq!(a[1].re, 0.0);
        assert_eq!(a[2].re, 0.0);
    }

    #[test]
    fn excitation_maps_to_region_one() {
        let out = apply_rindler(&single(1), "A", &AccelerationParam::new(0.7).unwrap()).unwrap();
        let idx = basis_index(&[1, 0], out.layout()).unwrap();
        for (i, a) in out.amplitudes().iter().enumerate() {
            assert_eq!(a.re, if i == idx { 1.0 } else { 0.0 });
        }
    }

    #[test]
    fn zero_r_is_an_embedding() {
        let out = apply_rindler(&single(0), "A", &AccelerationParam::inertial()).unwrap();
        assert_eq!(out.amplitudes()[0].re, 1.0);
        assert_eq!(out.norm_sqr(), 1.0);
    }

    #[test]
    fn w4_with_d_accelerated_has_seven_terms() {
        let r: f64 = 0.3;
        let (s, c) = (r.sin() / 2.0, r.cos() / 2.0);
        let psi = apply_rindler(
            &w_state(4).unwrap(),
            "D",
            &AccelerationParam::new(r).unwrap(),
        )
        .unwrap();
        assert_eq!(psi.layout().to_string(), "A,B,C,D_I,D_II");
        let l = psi.layout();
        let terms: [([u8; 5], f64); 7] = [
            ([0, 0, 1, 1, 1], s),
            ([0, 1, 0, 1, 1], s),
            ([1, 0, 0, 1, 1], s),
            ([0, 0, 1, 0, 0], c),
            ([0, 1, 0, 0, 0], c),
            ([1, 0, 0, 0, 0], c),
            ([0, 0, 0, 1, 0], 0.5),
        ];
        let mut expected = vec![0.0; 32];
        for (occ, amp) in terms {
            expected[basis_index(&occ, l).unwrap()] = amp;
        }
        for (i, a) in psi.amplitudes().iter().enumerate() {
            assert!((a.re - expected[i]).abs() < 1e-15, "index {i}");
        }
    }

    #[test]
    fn transform_errors() {
        let w = w_state(4).unwrap();
        let p = AccelerationParam::new(0.2).unwrap();
        assert!(matches!(
            apply_rindler(&w, "E", &p),
            Err(Error::UnknownObserver(_))
        ));
        let once = apply_rindler(&w, "D", &p).unwrap();
        assert!(matches!(
            apply_rindler(&once, "D", &p),
            Err(Error::AlreadyTransformed(_))
        ));
        let bad = Scenario::from_r(&[("Z", 0.1)]).unwrap();
        assert!(matches!(
            observed_density(&w, &bad),
            Err(Error::UnknownObserver(_))
        ));
        assert!(matches!(
            observed_density(&once, &Scenario::new()),
            Err(Error::AlreadyTransformed(_))
        ));
    }

    #[test]
    fn empty_scenario_is_the_pure_state() {
        let w = w_state(4).unwrap();
        let rho = observed_density(&w, &Scenario::new()).unwrap();
        assert_eq!(rho, pure_to_density(&w).unwrap());
    }

    #[test]
    fn observed_layouts_follow_mode_order() {
        let w = w_state(4).unwrap();
        let one = observed_density(&w, &Scenario::from_r(&[("D", 0.2)]).unwrap()).unwrap();
        assert_eq!(one.layout().to_string(), "A,B,C,D_I");
        let two =
            observed_density(&w, &Scenario::from_r(&[("D", 0.2), ("C", 0.1)]).unwrap()).unwrap();
        assert_eq!(two.layout().to_string(), "A,B,C_I,D_I");
    }
}
