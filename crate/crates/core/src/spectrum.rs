//! Closed-form eigensystem, the gap ΔE = E₁ − E₄ and the level-crossing locus.
//!
//! The four eigenpairs are
//!
//! ```text
//! E₁ = −√(ξ²+1)   ψ₁ = (|10⟩ + a₁|01⟩)/N₁     a₁ = ξ + √(ξ²+1)
//! E₂ = +√(ξ²+1)   ψ₂ = (|10⟩ + a₂|01⟩)/N₂     a₂ = ξ − √(ξ²+1)
//! E₃ = +√(η²+γ²)  ψ₃ = (γ|11⟩ + a₃|00⟩)/N₃    a₃ = η − √(η²+γ²)
//! E₄ = −√(η²+γ²)  ψ₄ = (γ|11⟩ + a₄|00⟩)/N₄    a₄ = η + √(η²+γ²)
//! ```
//!
//! The ground state is ψ₁ (odd sector) or ψ₄ (even sector); they cross where
//! `4B²λ = 1 − γ²`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::contour::{CrossingLocus, Polyline};
use crate::grid::AxisName;
use crate::linalg::{StateVector4, KET_00, KET_01, KET_10, KET_11};
use crate::model::Params;

/// Degeneracy tolerance for ground-state classification.
pub const DEGENERACY_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EigenSystem {
    /// E₁..E₄ in that order (not sorted).
    pub energies: [f64; 4],
    pub states: [StateVector4; 4],
    pub xi: f64,
    pub eta: f64,
    pub a: [f64; 4],
    /// Normalization coefficients N₁..N₄. N₃ or N₄ is zero when γ = 0 makes
    /// the formula vector vanish; the state then falls back to a basis vector.
    pub n: [f64; 4],
}

impl EigenSystem {
    pub fn ground_energy(&self) -> f64 {
        self.energies.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Energies in ascending order.
    pub fn sorted_energies(&self) -> [f64; 4] {
        let mut e = self.energies;
        e.sort_by(f64::total_cmp);
        e
    }
}

/// Normalized `(c₀|first⟩ + c₁|second⟩)`, or `None` if both vanish.
fn two_level_state(first: usize, second: usize, c0: f64, c1: f64) -> (Option<StateVector4>, f64) {
    let n = c0.hypot(c1);
    if n == 0.0 {
        return (None, 0.0);
    }
    let mut v = StateVector4::zero();
    v[first] = Complex64::new(c0 / n, 0.0);
    v[second] = Complex64::new(c1 / n, 0.0);
    (Some(v), n)
}

/// Roots `(u + √(u²+c²), u − √(u²+c²))` without cancellation; their product is −c².
fn split_roots(u: f64, c: f64) -> (f64, f64) {
    let root = u.hypot(c);
    if u >= 0.0 {
        let plus = u + root;
        let minus = if plus == 0.0 { 0.0 } else { -(c * c) / plus };
        (plus, minus)
    } else {
        let minus = u - root;
        (-(c * c) / minus, minus)
    }
}

pub fn analytic_eigensystem(p: &Params) -> EigenSystem {
    let xi = p.xi();
    let eta = p.eta();
    let gamma = p.gamma;

    let s = xi.hypot(1.0);
    let r = eta.hypot(gamma);
    let energies = [-s, s, r, -r];

    let (a1, a2) = split_roots(xi, 1.0);
    let (a4, a3) = split_roots(eta, gamma);

    // a₁ > 0 > a₂ always, so the odd states never degenerate
    let (psi1, n1) = two_level_state(KET_10, KET_01, 1.0, a1);
    let (psi2, n2) = two_level_state(KET_10, KET_01, 1.0, a2);
    let (psi3, n3) = two_level_state(KET_11, KET_00, gamma, a3);
    let (psi4, n4) = two_level_state(KET_11, KET_00, gamma, a4);

    // γ = 0: the even block is diag(η, −η); ψ₄ takes the lower of |11⟩, |00⟩.
    let (lower, upper) = if eta < 0.0 { (KET_11, KET_00) } else { (KET_00, KET_11) };
    let psi3 = psi3.unwrap_or_else(|| StateVector4::basis(upper));
    let psi4 = psi4.unwrap_or_else(|| StateVector4::basis(lower));

    EigenSystem {
        energies,
        states: [psi1.expect("a1 > 0"), psi2.expect("a2 < 0"), psi3, psi4],
        xi,
        eta,
        a: [a1, a2, a3, a4],
        n: [n1, n2, n3, n4],
    }
}

/// ΔE = E₁ − E₄ = √(η²+γ²) − √(ξ²+1).
///
/// Evaluated as `(4B²λ + γ² − 1) / (√(η²+γ²) + √(ξ²+1))`, which is exact
/// algebra and keeps full relative precision near the crossing.
pub fn energy_gap(p: &Params) -> f64 {
    let s = p.xi().hypot(1.0);
    let r = p.eta().hypot(p.gamma);
    let numer = 4.0 * p.b_field * p.b_field * p.lambda_field + (p.gamma - 1.0) * (p.gamma + 1.0);
    numer / (r + s)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroundStateTag {
    /// ψ₁, odd sector `{|10⟩, |01⟩}`.
    AnisotropyGround,
    /// ψ₄, even sector `{|11⟩, |00⟩}`.
    IsotropyGround,
    Degenerate,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroundStateClass {
    pub tag: GroundStateTag,
    pub gap: f64,
}

pub fn classify_ground_state(p: &Params) -> GroundStateClass {
    let gap = energy_gap(p);
    let tag = if gap < -DEGENERACY_TOL {
        GroundStateTag::AnisotropyGround
    } else if gap > DEGENERACY_TOL {
        GroundStateTag::IsotropyGround
    } else {
        GroundStateTag::Degenerate
    };
    GroundStateClass { tag, gap }
}

/// λ on the crossing locus at field `b`, for interaction anisotropy `gamma`.
///
/// Returns `None` at `B = 0` unless `|γ| = 1`; there `ΔE = |γ| − 1` for every
/// λ, so the whole line `B = 0` is degenerate and `Some(0.0)` is returned as
/// the representative point of the `λ = 0` line.
pub fn crossing_lambda(gamma: f64, b: f64) -> Option<f64> {
    let one_minus_g2 = (1.0 - gamma) * (1.0 + gamma);
    if b == 0.0 {
        return (one_minus_g2 == 0.0).then_some(0.0);
    }
    Some(one_minus_g2 / (4.0 * b * b))
}

/// Window and sampling for [`crossing_locus_analytic`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LocusWindow {
    pub lambda_range: (f64, f64),
    pub b_range: (f64, f64),
    pub samples: usize,
}

impl Default for LocusWindow {
    fn default() -> Self {
        Self { lambda_range: (-2.0, 2.0), b_range: (-2.0, 2.0), samples: 401 }
    }
}

/// The crossing curve `λ = (1−γ²)/(4B²)` in the (λ, B) plane, sampled
/// uniformly in B and clipped to the window. Samples where no crossing exists
/// (B = 0 with |γ| ≠ 1) or λ falls outside the window break the curve into
/// separate polylines.
pub fn crossing_locus_analytic(gamma: f64, window: &LocusWindow) -> CrossingLocus {
    let (b0, b1) = window.b_range;
    let (l0, l1) = window.lambda_range;
    let n = window.samples.max(2);
    let mut polylines = Vec::new();
    let mut current: Vec<[f64; 2]> = Vec::new();
    for k in 0..n {
        let b = if k == n - 1 { b1 } else { b0 + (b1 - b0) * k as f64 / (n - 1) as f64 };
        match crossing_lambda(gamma, b) {
            Some(lam) if lam >= l0 && lam <= l1 => current.push([lam, b]),
            _ => {
                if current.len() > 1 {
                    polylines.push(Polyline { points: std::mem::take(&mut current), closed: false });
                }
                current.clear();
            }
        }
    }
    if current.len() > 1 {
        polylines.push(Polyline { points: current, closed: false });
    }
    CrossingLocus { x_axis: AxisName::LambdaField, y_axis: AxisName::BField, polylines }
}
