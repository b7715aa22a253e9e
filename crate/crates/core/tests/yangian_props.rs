mod common;

use common::{thermal_params_strategy, yangian_strategy};
use num_complex::Complex64;
use proptest::prelude::*;
use xyfid_core::linalg::{Matrix4, StateVector4, KET_00, KET_01, KET_10, KET_11};
use xyfid_core::model::Params;
use xyfid_core::spectrum::analytic_eigensystem;
use xyfid_core::thermal::x_state_entries;
use xyfid_core::yangian::{
    apply_transition, build_generators, transition_fidelity, Transition, TransitionFidelity, TransitionOutcome,
    YangianParams,
};

fn levi_civita(a: usize, b: usize, c: usize) -> f64 {
    match (a, b, c) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
        _ => 0.0,
    }
}

fn rhs(ops: &[Matrix4; 3], a: usize, b: usize) -> Matrix4 {
    (0..3).fold(Matrix4::zero(), |acc, c| acc + ops[c].scale(Complex64::new(0.0, levi_civita(a, b, c))))
}

/// Distance from `v` to the ray through basis state `k`.
fn off_ray(v: &StateVector4, k: usize) -> f64 {
    let phase = v[k] / v[k].norm();
    v.max_abs_diff(&StateVector4::basis(k).scale(phase))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn adjoint_commutators(yp in yangian_strategy()) {
        let ops = build_generators(&yp).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                let ii = ops.i_ops[a].commutator(&ops.i_ops[b]);
                prop_assert!(ii.max_abs_diff(&rhs(&ops.i_ops, a, b)) <= 1e-14);
                let ij = ops.i_ops[a].commutator(&ops.j_ops[b]);
                prop_assert!(ij.max_abs_diff(&rhs(&ops.j_ops, a, b)) <= 1e-14);
            }
        }
    }

    #[test]
    fn ladder_images_of_odd_states(yp in yangian_strategy(), c0 in -1.0..1.0f64, c1 in -1.0..1.0f64, phi in 0.0..6.3f64) {
        let mut s = StateVector4::zero();
        s[KET_10] = Complex64::new(c0, 0.0);
        s[KET_01] = Complex64::from_polar(c1, phi);
        let Some(s) = s.normalized() else { return Ok(()); };
        let ops = build_generators(&yp).unwrap();
        let up = ops.j_plus.apply(&s);
        let down = ops.j_minus.apply(&s);
        for k in [KET_10, KET_01, KET_00] {
            prop_assert!(up[k].norm() <= 1e-13);
        }
        for k in [KET_10, KET_01, KET_11] {
            prop_assert!(down[k].norm() <= 1e-13);
        }
    }

    #[test]
    fn psi1_maps_to_11_and_00(p in thermal_params_strategy(), yp in yangian_strategy()) {
        let ops = build_generators(&yp).unwrap();
        let psi1 = analytic_eigensystem(&p).states[0];
        for (which, target) in [(Transition::JPlus, KET_11), (Transition::JMinus, KET_00)] {
            if let TransitionOutcome::Image { state, .. } = apply_transition(&ops, which, &psi1).unwrap() {
                prop_assert!(state.is_normalized(1e-13));
                prop_assert!(off_ray(&state, target) <= 1e-13);
            }
        }
    }

    #[test]
    fn post_transition_fidelity_is_corner_population(p in thermal_params_strategy(), yp in yangian_strategy()) {
        let x = x_state_entries(&p).unwrap();
        if let TransitionFidelity::Value(f) = transition_fidelity(&p, &yp, Transition::JPlus).unwrap() {
            prop_assert!((f - x.v1 / x.z).abs() <= 1e-12);
        }
        if let TransitionFidelity::Value(f) = transition_fidelity(&p, &yp, Transition::JMinus).unwrap() {
            prop_assert!((f - x.v2 / x.z).abs() <= 1e-12);
        }
    }

    #[test]
    fn fidelity_independent_of_realization(p in thermal_params_strategy(), yp in yangian_strategy()) {
        let reference = YangianParams::default();
        for which in [Transition::JPlus, Transition::JMinus] {
            let a = transition_fidelity(&p, &yp, which).unwrap().value();
            let b = transition_fidelity(&p, &reference, which).unwrap().value();
            if let (Some(a), Some(b)) = (a, b) {
                prop_assert!((a - b).abs() <= 1e-12);
            }
        }
    }
}

#[test]
fn annihilation_is_reported_not_computed() {
    // J₊ψ₁ ∝ (ν − λ_y/2) + a₁(μ + λ_y/2); choose ν to cancel it
    let p = Params::new(0.2, 0.5, 1.0, 0.2).unwrap();
    let a1 = analytic_eigensystem(&p).a[0];
    let (mu, ly) = (0.7, 0.4);
    let yp = YangianParams { mu, nu: ly / 2.0 - a1 * (mu + ly / 2.0), lambda_y: ly };
    let out = transition_fidelity(&p, &yp, Transition::JPlus).unwrap();
    assert!(matches!(out, TransitionFidelity::Annihilated { .. }), "{out:?}");
    assert!(transition_fidelity(&p, &yp, Transition::JMinus).unwrap().value().is_some());
}

#[test]
fn trivial_realization_annihilates_everything() {
    let p = Params::new(0.2, 0.5, 1.0, 0.2).unwrap();
    let yp = YangianParams { mu: 0.0, nu: 0.0, lambda_y: 0.0 };
    for which in [Transition::JPlus, Transition::JMinus] {
        assert!(transition_fidelity(&p, &yp, which).unwrap().value().is_none());
    }
}

fn quadrant_means(gamma: f64, which: Transition) -> [f64; 4] {
    // order: (λ>0,B<0), (λ>0,B>0), (λ<0,B<0), (λ<0,B>0)
    let mut sum = [0.0; 4];
    let mut cnt = [0usize; 4];
    let n = 41;
    for i in 0..n {
        for j in 0..n {
            let l = -2.0 + 4.0 * i as f64 / (n - 1) as f64;
            let b = -2.0 + 4.0 * j as f64 / (n - 1) as f64;
            if l == 0.0 || b == 0.0 {
                continue;
            }
            let p = Params::new(gamma, l, b, 0.2).unwrap();
            if let Some(f) = transition_fidelity(&p, &YangianParams::default(), which).unwrap().value() {
                let q = match (l > 0.0, b > 0.0) {
                    (true, false) => 0,
                    (true, true) => 1,
                    (false, false) => 2,
                    (false, true) => 3,
                };
                sum[q] += f;
                cnt[q] += 1;
            }
        }
    }
    std::array::from_fn(|q| sum[q] / cnt[q] as f64)
}

#[test]
fn migration_to_reversed_quadrants() {
    let plus = quadrant_means(0.2, Transition::JPlus);
    assert!(plus[1..].iter().all(|&m| plus[0] > m), "{plus:?}");
    let minus = quadrant_means(0.2, Transition::JMinus);
    assert!([0, 2, 3].iter().all(|&q| minus[1] > minus[q]), "{minus:?}");
}

#[test]
fn degeneracy_tail_along_zero_field() {
    let fp = |g: f64, l: f64| {
        transition_fidelity(&Params::new(g, l, 0.0, 0.2).unwrap(), &YangianParams::default(), Transition::JPlus)
            .unwrap()
            .value()
            .unwrap()
    };
    for l in [-2.0, -1.0, -0.5, -0.1] {
        assert!(fp(1.0, l) > 0.1, "γ=1, λ={l}: {}", fp(1.0, l));
        assert!(fp(0.2, l) < 0.05, "γ=0.2, λ={l}: {}", fp(0.2, l));
    }
}
