#![allow(dead_code)]

use proptest::prelude::*;
use xyfid_core::model::Params;
use xyfid_core::yangian::YangianParams;

pub fn params_strategy() -> impl Strategy<Value = Params> {
    (-2.0..=2.0f64, -2.0..=2.0f64, -5.0..=5.0f64)
        .prop_map(|(gamma, lambda_field, b_field)| Params { gamma, lambda_field, b_field, temperature: 0.0 })
}

pub fn thermal_params_strategy() -> impl Strategy<Value = Params> {
    (params_strategy(), 0.05..=10.0f64).prop_map(|(p, t)| Params { temperature: t, ..p })
}

pub fn yangian_strategy() -> impl Strategy<Value = YangianParams> {
    (-3.0..=3.0f64, -3.0..=3.0f64, -3.0..=3.0f64).prop_map(|(mu, nu, lambda_y)| YangianParams { mu, nu, lambda_y })
}

/// ±√(ξ²+1), ±√(η²+γ²) sorted, computed directly from the parameters.
pub fn expected_spectrum(p: &Params) -> [f64; 4] {
    let xi = p.b_field * (1.0 - p.lambda_field);
    let eta = p.b_field * (1.0 + p.lambda_field);
    let r_odd = (xi * xi + 1.0).sqrt();
    let r_even = (eta * eta + p.gamma * p.gamma).sqrt();
    let mut e = [-r_odd, r_odd, -r_even, r_even];
    e.sort_by(f64::total_cmp);
    e
}
