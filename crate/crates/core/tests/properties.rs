mod common;

use std::f64::consts::FRAC_PI_4;

use proptest::prelude::*;

use wtangle::fock::{partial_trace, partial_transpose, pure_to_density, w_state, DensityMatrix};
use wtangle::matrix::{hermitian_eigenvalues, trace_norm, Matrix};
use wtangle::measures::{negativity, one_one_tangles, one_three_tangles, pair, TangleReport};
use wtangle::rindler::{
    acceleration_to_r, apply_rindler, observed_density, AccelerationParam, Scenario,
};

use common::{random_density, random_state, rng};

fn r_strategy() -> impl Strategy<Value = f64> {
    0.0..=FRAC_PI_4
}

fn one(r_d: f64) -> DensityMatrix {
    observed_density(
        &w_state(4).unwrap(),
        &Scenario::from_r(&[("D", r_d)]).unwrap(),
    )
    .unwrap()
}

fn two(r_c: f64, r_d: f64) -> DensityMatrix {
    observed_density(
        &w_state(4).unwrap(),
        &Scenario::from_r(&[("C", r_c), ("D", r_d)]).unwrap(),
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn observed_states_are_valid_densities(rc in r_strategy(), rd in r_strategy()) {
        for rho in [one(rd), two(rc, rd)] {
            prop_assert!((rho.trace() - 1.0).abs() < 1e-12);
            prop_assert!(rho.matrix().is_hermitian(1e-14));
            let spec = hermitian_eigenvalues(rho.matrix()).unwrap();
            prop_assert!(spec.min() > -1e-12);
            prop_assert!(rho.purity() <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn rindler_map_preserves_norm(seed in any::<u64>(), r in r_strategy(), k in 0usize..3) {
        let psi = random_state(3, &mut rng(seed));
        let label = ["A", "B", "C"][k];
        let out = apply_rindler(&psi, label, &AccelerationParam::new(r).unwrap()).unwrap();
        prop_assert_eq!(out.layout().len(), 4);
        prop_assert!((out.norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn negativity_is_blind_to_which_side_is_transposed(seed in any::<u64>(), mask in 1u8..15) {
        let rho = random_density(4, &mut rng(seed));
        let part: Vec<usize> = (0..4).filter(|i| mask & (1 << i) != 0).collect();
        let rest: Vec<usize> = (0..4).filter(|i| mask & (1 << i) == 0).collect();
        let a = negativity(&rho, &part).unwrap();
        let b = negativity(&rho, &rest).unwrap();
        prop_assert!((a - b).abs() < 1e-10, "{a} vs {b}");
        prop_assert!(a >= 0.0);
    }

    #[test]
    fn partial_trace_commutes_with_transpose_of_kept_mode(seed in any::<u64>()) {
        let rho = random_density(3, &mut rng(seed));
        // keep A and B, transpose A; C is the least significant bit
        let lhs = partial_transpose(&partial_trace(&rho, &[0, 1]).unwrap(), &[0]).unwrap();
        let pt = partial_transpose(&rho, &[0]).unwrap();
        let rhs = Matrix::from_fn(4, 4, |i, j| (0..2).map(|c| pt[(2 * i + c, 2 * j + c)]).sum());
        prop_assert!(lhs.max_abs_diff(&rhs).unwrap() < 1e-13);
    }

    #[test]
    fn negativity_is_trace_norm_minus_one(seed in any::<u64>()) {
        let rho = random_density(2, &mut rng(seed));
        let pt = partial_transpose(&rho, &[0]).unwrap();
        let n = negativity(&rho, &[0]).unwrap();
        prop_assert!((n - (trace_norm(&pt).unwrap() - 1.0)).abs() < 1e-12);
        prop_assert!(n <= 1.0 + 1e-12);
    }

    #[test]
    fn observer_exchange_covariance(rc in r_strategy(), rd in r_strategy()) {
        let a = two(rc, rd);
        let b = two(rd, rc);
        let na = one_three_tangles(&a).unwrap();
        let nb = one_three_tangles(&b).unwrap();
        prop_assert!((na[2] - nb[3]).abs() < 1e-10);
        prop_assert!((na[0] - nb[0]).abs() < 1e-10);
        let pa = one_one_tangles(&a).unwrap();
        let pb = one_one_tangles(&b).unwrap();
        prop_assert!((pa[&pair(0, 2)] - pb[&pair(0, 3)]).abs() < 1e-10);
        prop_assert!((pa[&pair(2, 3)] - pb[&pair(2, 3)]).abs() < 1e-10);
    }

    #[test]
    fn residual_tangles_stay_nonnegative(rc in r_strategy(), rd in r_strategy()) {
        for rho in [one(rd), two(rc, rd)] {
            let rep = TangleReport::compute(&rho, vec![]).unwrap();
            prop_assert!(rep.pi.iter().all(|&p| p >= 0.0));
            prop_assert!(rep.pi4 + 1e-10 >= rep.big_pi4);
        }
    }

    #[test]
    fn more_acceleration_means_less_tangle_and_more_mixing(r1 in r_strategy(), r2 in r_strategy()) {
        let (lo, hi) = if r1 <= r2 { (r1, r2) } else { (r2, r1) };
        let a = TangleReport::compute(&one(lo), vec![]).unwrap();
        let b = TangleReport::compute(&one(hi), vec![]).unwrap();
        prop_assert!(a.pi4 + 1e-10 >= b.pi4);
        prop_assert!(a.big_pi4 + 1e-10 >= b.big_pi4);
        prop_assert!(a.entropy <= b.entropy + 1e-10);
    }

    #[test]
    fn diagonal_two_observer_tangle_decreases(r1 in r_strategy(), r2 in r_strategy()) {
        let (lo, hi) = if r1 <= r2 { (r1, r2) } else { (r2, r1) };
        let a = TangleReport::compute(&two(lo, lo), vec![]).unwrap();
        let b = TangleReport::compute(&two(hi, hi), vec![]).unwrap();
        prop_assert!(a.pi4 + 1e-10 >= b.pi4);
        prop_assert!(a.entropy <= b.entropy + 1e-10);
    }

    #[test]
    fn physical_acceleration_maps_monotonically(a1 in 1e-3f64..1e3, a2 in 1e-3f64..1e3) {
        let (lo, hi) = if a1 <= a2 { (a1, a2) } else { (a2, a1) };
        let r_lo = acceleration_to_r(lo, 1.0, 1.0).unwrap().r();
        let r_hi = acceleration_to_r(hi, 1.0, 1.0).unwrap().r();
        prop_assert!(r_lo <= r_hi);
        prop_assert!((0.0..=FRAC_PI_4).contains(&r_hi));
    }
}

#[test]
fn pure_w_state_spectrum() {
    let rho = pure_to_density(&w_state(4).unwrap()).unwrap();
    let spec = hermitian_eigenvalues(rho.matrix()).unwrap();
    assert_eq!(spec.count_above(1e-12), 1);
    assert!((spec.max() - 1.0).abs() < 1e-12);
}
