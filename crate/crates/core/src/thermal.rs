//! Gibbs state ρ(T) = Σ pᵢ |ψᵢ⟩⟨ψᵢ|, its X-state entries, and the fidelity
//! `F = ⟨ψ|ρ|ψ⟩` against the odd-sector ground state ψ₁.
//!
//! In the basis `{|11⟩, |10⟩, |01⟩, |00⟩}`
//!
//! ```text
//!            ⎛ v₁  0   0   u  ⎞
//!  ρ = 1/Z · ⎜ 0   w₁  y   0  ⎟     v₁ = (b₃+b₄)γ²     w₁ = b₁+b₂
//!            ⎜ 0   y   w₂  0  ⎟     v₂ = b₃a₃²+b₄a₄²   w₂ = b₁a₁²+b₂a₂²
//!            ⎝ u   0   0   v₂ ⎠     u  = (b₃a₃+b₄a₄)γ  y  = b₁a₁+b₂a₂
//! ```
//!
//! with `bᵢ = exp(−Eᵢ/T)/Nᵢ²`. The square on `Nᵢ` is what the normalized
//! eigenvectors require; without it `Tr ρ ≠ 1`.
//!
//! Boltzmann factors are always taken relative to the ground energy, so
//! nothing overflows at small T.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Matrix4, StateVector4, KET_00, KET_01, KET_10, KET_11};
use crate::model::Params;
use crate::spectrum::{analytic_eigensystem, classify_ground_state, EigenSystem, GroundStateTag};

/// Normalization tolerance for pure states handed to [`fidelity`].
pub const NORMALIZATION_TOL: f64 = 1e-12;
/// Fidelities within this distance outside `[0, 1]` are clamped; larger
/// excursions are reported as [`Error::Consistency`].
pub const CLAMP_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThermalState {
    pub rho: Matrix4,
    /// Z = Σ exp(−Eᵢ/T). Overflows to +∞ when `−E_min/T` exceeds ~709;
    /// `log_z` stays finite.
    pub z: f64,
    pub log_z: f64,
    pub temperature: f64,
    /// p₁..p₄ in eigenstate order.
    pub probs: [f64; 4],
}

impl ThermalState {
    pub fn trace(&self) -> f64 {
        self.rho.trace().re
    }
}

/// The entries of ρ·Z, all scaled by `exp(energy_shift/T)` with
/// `energy_shift = E_min`. Ratios such as `v₁/z` are unaffected by the scale.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct XStateEntries {
    pub v1: f64,
    pub v2: f64,
    pub u: f64,
    pub w1: f64,
    pub w2: f64,
    pub y: f64,
    pub z: f64,
    pub energy_shift: f64,
}

impl XStateEntries {
    /// Lay the entries out as ρ.
    pub fn to_density_matrix(&self) -> Matrix4 {
        let mut m = Matrix4::zero();
        let set = |m: &mut Matrix4, r, c, v: f64| m[(r, c)] = Complex64::new(v / self.z, 0.0);
        set(&mut m, KET_11, KET_11, self.v1);
        set(&mut m, KET_00, KET_00, self.v2);
        set(&mut m, KET_11, KET_00, self.u);
        set(&mut m, KET_00, KET_11, self.u);
        set(&mut m, KET_10, KET_10, self.w1);
        set(&mut m, KET_01, KET_01, self.w2);
        set(&mut m, KET_10, KET_01, self.y);
        set(&mut m, KET_01, KET_10, self.y);
        m
    }
}

fn require_positive_temperature(p: &Params) -> Result<()> {
    p.validate()?;
    if p.temperature <= 0.0 {
        return Err(Error::Domain(format!(
            "temperature must be > 0 for the Gibbs state (got {}); use zero_temperature_fidelity for T = 0",
            p.temperature
        )));
    }
    Ok(())
}

/// `exp(−(Eᵢ − E_min)/T)` and `ln Z`.
fn shifted_weights(energies: &[f64; 4], t: f64) -> ([f64; 4], f64, f64) {
    let e_min = energies.iter().copied().fold(f64::INFINITY, f64::min);
    let w = energies.map(|e| (-(e - e_min) / t).exp());
    let log_z = w.iter().sum::<f64>().ln() - e_min / t;
    (w, e_min, log_z)
}

pub fn partition_function(p: &Params) -> Result<f64> {
    require_positive_temperature(p)?;
    let es = analytic_eigensystem(p);
    let (_, _, log_z) = shifted_weights(&es.energies, p.temperature);
    Ok(log_z.exp())
}

pub fn thermal_density_matrix(p: &Params) -> Result<ThermalState> {
    require_positive_temperature(p)?;
    Ok(thermal_state_from(&analytic_eigensystem(p), p.temperature))
}

/// Gibbs state built from a given eigensystem; `t` must be positive.
pub fn thermal_state_from(es: &EigenSystem, t: f64) -> ThermalState {
    let (w, _, log_z) = shifted_weights(&es.energies, t);
    let total: f64 = w.iter().sum();
    let probs = w.map(|x| x / total);
    let rho = es
        .states
        .iter()
        .zip(probs)
        .fold(Matrix4::zero(), |acc, (psi, pk)| acc + psi.projector().scale_real(pk));
    ThermalState { rho, z: log_z.exp(), log_z, temperature: t, probs }
}

pub fn x_state_entries(p: &Params) -> Result<XStateEntries> {
    require_positive_temperature(p)?;
    Ok(x_state_entries_from(&analytic_eigensystem(p), p.gamma, p.temperature))
}

/// X-state entries from the closed-form coefficients a₁..a₄, N₁..N₄.
pub fn x_state_entries_from(es: &EigenSystem, gamma: f64, t: f64) -> XStateEntries {
    let (w, e_min, _) = shifted_weights(&es.energies, t);
    let [a1, a2, a3, a4] = es.a;
    let [n1, n2, n3, n4] = es.n;
    let b1 = w[0] / (n1 * n1);
    let b2 = w[1] / (n2 * n2);
    let (w1, w2, y) = (b1 + b2, b1 * a1 * a1 + b2 * a2 * a2, b1 * a1 + b2 * a2);

    let (v1, v2, u) = if n3 > 0.0 && n4 > 0.0 {
        // γ/Nᵢ and aᵢ/Nᵢ are the normalized amplitudes; grouping as
        // bᵢγ² = wᵢ(γ/Nᵢ)² avoids forming Nᵢ² for tiny γ
        let (g3, g4) = (gamma / n3, gamma / n4);
        let (c3, c4) = (a3 / n3, a4 / n4);
        (
            w[2] * g3 * g3 + w[3] * g4 * g4,
            w[2] * c3 * c3 + w[3] * c4 * c4,
            w[2] * g3 * c3 + w[3] * g4 * c4,
        )
    } else {
        // γ = 0: the even eigenstates are |11⟩ and |00⟩ themselves
        let mut v1 = 0.0;
        let mut v2 = 0.0;
        for k in [2, 3] {
            v1 += w[k] * es.states[k][KET_11].norm_sqr();
            v2 += w[k] * es.states[k][KET_00].norm_sqr();
        }
        (v1, v2, 0.0)
    };
    XStateEntries { v1, v2, u, w1, w2, y, z: w.iter().sum(), energy_shift: e_min }
}

/// Clamp a fidelity into `[0, 1]` when it is out by at most [`CLAMP_TOL`].
pub fn clamp_fidelity(f: f64) -> Result<f64> {
    if !(-CLAMP_TOL..=1.0 + CLAMP_TOL).contains(&f) {
        return Err(Error::Consistency(format!("fidelity {f} outside [0, 1]")));
    }
    Ok(f.clamp(0.0, 1.0))
}

/// F = ⟨ψ|ρ|ψ⟩ for a normalized pure state ψ.
pub fn fidelity(state: &ThermalState, pure: &StateVector4) -> Result<f64> {
    if !pure.is_finite() || !pure.is_normalized(NORMALIZATION_TOL) {
        return Err(Error::InvalidInput(format!(
            "pure state must be normalized within {NORMALIZATION_TOL:e} (norm² = {})",
            pure.norm_sqr()
        )));
    }
    clamp_fidelity(state.rho.sandwich(pure, pure).re)
}

/// ⟨ψ₁|ρ(T)|ψ₁⟩ computed from the definition.
pub fn thermal_fidelity(p: &Params) -> Result<f64> {
    require_positive_temperature(p)?;
    let es = analytic_eigensystem(p);
    fidelity(&thermal_state_from(&es, p.temperature), &es.states[0])
}

/// F = (w₁ + 2ya₁ + w₂a₁²) / (Z(1+a₁²)).
pub fn ground_state_fidelity_closed_form(p: &Params) -> Result<f64> {
    require_positive_temperature(p)?;
    closed_form_fidelity_from(&analytic_eigensystem(p), p.gamma, p.temperature)
}

pub fn closed_form_fidelity_from(es: &EigenSystem, gamma: f64, t: f64) -> Result<f64> {
    let x = x_state_entries_from(es, gamma, t);
    let a1 = es.a[0];
    clamp_fidelity((x.w1 + 2.0 * x.y * a1 + x.w2 * a1 * a1) / (x.z * (1.0 + a1 * a1)))
}

/// T = 0 limit of the ψ₁ fidelity: the system sits in its ground state, or
/// in the equal mixture of ψ₁ and ψ₄ when they are degenerate.
pub fn zero_temperature_fidelity(p: &Params) -> f64 {
    match classify_ground_state(p).tag {
        GroundStateTag::AnisotropyGround => 1.0,
        GroundStateTag::IsotropyGround => 0.0,
        GroundStateTag::Degenerate => 0.5,
    }
}
