mod common;

use common::{params_strategy, thermal_params_strategy};
use proptest::prelude::*;
use xyfid_core::linalg::{StateVector4, KET_00, KET_11};
use xyfid_core::model::{build_hamiltonian, Params};
use xyfid_core::oracle::{direct_fidelity, gibbs_state, hermitian_eigen};
use xyfid_core::spectrum::analytic_eigensystem;
use xyfid_core::thermal::{
    ground_state_fidelity_closed_form, partition_function, thermal_density_matrix, thermal_fidelity,
    x_state_entries,
};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn gibbs_state_matches_oracle(p in thermal_params_strategy()) {
        let st = thermal_density_matrix(&p).unwrap();
        let reference = gibbs_state(&build_hamiltonian(&p).unwrap(), p.temperature).unwrap();
        prop_assert!(st.rho.max_abs_diff(&reference) <= 1e-12);
    }

    #[test]
    fn closed_form_matches_definition(p in thermal_params_strategy()) {
        let direct = thermal_fidelity(&p).unwrap();
        let closed = ground_state_fidelity_closed_form(&p).unwrap();
        prop_assert!((direct - closed).abs() <= 1e-12);
        let rho = gibbs_state(&build_hamiltonian(&p).unwrap(), p.temperature).unwrap();
        let psi1 = analytic_eigensystem(&p).states[0];
        prop_assert!((direct - direct_fidelity(&rho, &psi1).unwrap()).abs() <= 1e-12);
    }

    #[test]
    fn density_matrix_invariants(p in thermal_params_strategy()) {
        let st = thermal_density_matrix(&p).unwrap();
        prop_assert!((st.trace() - 1.0).abs() <= 1e-13);
        prop_assert!(st.rho.is_hermitian(1e-15));
        prop_assert_eq!(st.rho.off_x_pattern_max(), 0.0);
        let spec = hermitian_eigen(&st.rho).unwrap();
        prop_assert!(spec.eigenvalues.iter().all(|&v| v >= -1e-14));
        let z = partition_function(&p).unwrap();
        prop_assert!((z.ln() - st.log_z).abs() <= 1e-12 * st.log_z.abs().max(1.0));
    }

    #[test]
    fn x_entries_reproduce_rho(p in thermal_params_strategy()) {
        let x = x_state_entries(&p).unwrap();
        let st = thermal_density_matrix(&p).unwrap();
        prop_assert!(x.to_density_matrix().max_abs_diff(&st.rho) <= 1e-12);
        let v1 = st.rho.sandwich(&StateVector4::basis(KET_11), &StateVector4::basis(KET_11)).re;
        let v2 = st.rho.sandwich(&StateVector4::basis(KET_00), &StateVector4::basis(KET_00)).re;
        prop_assert!((x.v1 / x.z - v1).abs() <= 1e-12);
        prop_assert!((x.v2 / x.z - v2).abs() <= 1e-12);
    }

    #[test]
    fn high_temperature_limit(p in params_strategy()) {
        // |E₁| ≤ √(ξ²+1) ≤ 16 here, so F − ¼ ≈ −E₁/(4T) is below 4e-12 at T = 1e12
        let f = thermal_fidelity(&Params { temperature: 1e12, ..p }).unwrap();
        prop_assert!((f - 0.25).abs() < 1e-11);
    }

    #[test]
    fn fidelity_in_unit_interval(p in params_strategy(), t in 1e-3..1e3f64) {
        let f = thermal_fidelity(&Params { temperature: t, ..p }).unwrap();
        prop_assert!((0.0..=1.0).contains(&f));
    }
}

#[test]
fn high_temperature_limit_at_1e6() {
    // the criterion's own setting: |F − ¼| ≈ |E₁|/(4T) < 1e-6 needs |E₁| < 4
    for (g, l, b) in [(0.2, 1.0, 1.0), (-1.7, 0.3, -0.8), (1.0, -1.0, 1.0), (0.0, 2.0, 0.5)] {
        let f = thermal_fidelity(&Params::new(g, l, b, 1e6).unwrap()).unwrap();
        assert!((f - 0.25).abs() < 1e-6, "F = {f}");
    }
}

#[test]
fn low_temperature_does_not_overflow() {
    let p = Params::new(0.2, -1.0, 5.0, 1e-3).unwrap();
    let st = thermal_density_matrix(&p).unwrap();
    assert!(st.rho.is_finite());
    assert!(st.log_z.is_finite());
    assert!(st.z.is_infinite());
    assert!((ground_state_fidelity_closed_form(&p).unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn continuity_across_the_crossing() {
    // γ = 0.2, B = 1: the ground state switches at λ = (1 − γ²)/4 = 0.24
    let fidelities = |t: f64| -> Vec<f64> {
        (0..=4000)
            .map(|k| {
                let lambda = -2.0 + k as f64 * 1e-3;
                thermal_fidelity(&Params::new(0.2, lambda, 1.0, t).unwrap()).unwrap()
            })
            .collect()
    };
    let max_step = |f: &[f64]| f.windows(2).map(|w| (w[1] - w[0]).abs()).fold(0.0, f64::max);

    let warm = fidelities(0.2);
    assert!(max_step(&warm) < 0.2, "max step {} at T = 0.2", max_step(&warm));

    let cold = fidelities(0.005);
    let at = |l: f64| cold[((l + 2.0) / 1e-3).round() as usize];
    assert!(at(0.225) - at(0.255) > 0.9, "drop {}", at(0.225) - at(0.255));
    assert!(max_step(&cold) > max_step(&warm));
}

#[test]
fn zero_or_negative_temperature_rejected() {
    for t in [0.0, -0.1] {
        let p = Params { gamma: 0.2, lambda_field: 1.0, b_field: 1.0, temperature: t };
        assert!(thermal_density_matrix(&p).is_err());
        assert!(thermal_fidelity(&p).is_err());
        assert!(partition_function(&p).is_err());
    }
}
