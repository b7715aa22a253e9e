//! Two-spin realization of the Yangian Y(sl(2)):
//!
//! ```text
//! I = S₁ + S₂
//! J = μS₁ + νS₂ + iλ_y S₁×S₂
//! ```
//!
//! with ladders `I± = I₁ ± iI₂`, `J± = J₁ ± iJ₂`. `I` only moves states
//! within a total-spin multiplet; `J±` also connect different multiplets, and
//! in particular take the odd sector `{|10⟩, |01⟩}` to `|11⟩` (J₊) and
//! `|00⟩` (J₋).
//!
//! `J` is not Hermitian unless `λ_y = 0`: `S₁×S₂` is Hermitian because its
//! factors act on different qubits, so `iλ_y S₁×S₂` is anti-Hermitian.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Matrix4, StateVector4, I};
use crate::model::{build_spin_operators, Params, SpinOperators};
use crate::spectrum::analytic_eigensystem;
use crate::thermal::{fidelity, thermal_density_matrix};

/// Images with norm at or below this are treated as annihilated.
pub const ANNIHILATION_TOL: f64 = 1e-13;

/// The free parameters μ, ν, λ_y of the realization. λ_y is unrelated to the
/// field anisotropy λ of the Hamiltonian.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct YangianParams {
    pub mu: f64,
    pub nu: f64,
    pub lambda_y: f64,
}

impl Default for YangianParams {
    fn default() -> Self {
        Self { mu: 1.0, nu: 1.0, lambda_y: 0.0 }
    }
}

impl YangianParams {
    pub fn validate(&self) -> Result<()> {
        if [self.mu, self.nu, self.lambda_y].iter().all(|v| v.is_finite()) {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!("Yangian parameters must be finite: {self:?}")))
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.mu == 0.0 && self.nu == 0.0 && self.lambda_y == 0.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct YangianOperators {
    pub i_ops: [Matrix4; 3],
    pub j_ops: [Matrix4; 3],
    pub i_plus: Matrix4,
    pub i_minus: Matrix4,
    pub j_plus: Matrix4,
    pub j_minus: Matrix4,
    pub j3: Matrix4,
}

/// `(S₁×S₂)_c = ε_cab S₁ᵃ S₂ᵇ`.
pub fn cross_product(s: &SpinOperators) -> [Matrix4; 3] {
    let comp = |a: usize, b: usize| s.s1[a] * s.s2[b] - s.s1[b] * s.s2[a];
    [comp(1, 2), comp(2, 0), comp(0, 1)]
}

pub fn build_generators(yp: &YangianParams) -> Result<YangianOperators> {
    yp.validate()?;
    let s = build_spin_operators();
    let cross = cross_product(&s);
    let i_ops = [0, 1, 2].map(|a| s.s1[a] + s.s2[a]);
    let j_ops = [0, 1, 2].map(|a| {
        s.s1[a].scale_real(yp.mu) + s.s2[a].scale_real(yp.nu) + cross[a].scale(I * yp.lambda_y)
    });
    let ladder = |ops: &[Matrix4; 3], sign: f64| ops[0] + ops[1].scale(I * sign);
    Ok(YangianOperators {
        i_ops,
        j_ops,
        i_plus: ladder(&i_ops, 1.0),
        i_minus: ladder(&i_ops, -1.0),
        j_plus: ladder(&j_ops, 1.0),
        j_minus: ladder(&j_ops, -1.0),
        j3: j_ops[2],
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Transition {
    JPlus,
    JMinus,
    J3,
    IPlus,
    IMinus,
}

impl YangianOperators {
    pub fn operator(&self, which: Transition) -> &Matrix4 {
        match which {
            Transition::JPlus => &self.j_plus,
            Transition::JMinus => &self.j_minus,
            Transition::J3 => &self.j3,
            Transition::IPlus => &self.i_plus,
            Transition::IMinus => &self.i_minus,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum TransitionOutcome {
    /// `state` is the normalized image; `amplitude` the image norm before
    /// normalization.
    Image { state: StateVector4, amplitude: f64 },
    /// The image norm was at most [`ANNIHILATION_TOL`].
    Annihilated { norm: f64 },
}

impl TransitionOutcome {
    pub fn state(&self) -> Option<&StateVector4> {
        match self {
            TransitionOutcome::Image { state, .. } => Some(state),
            TransitionOutcome::Annihilated { .. } => None,
        }
    }

    pub fn is_annihilated(&self) -> bool {
        matches!(self, TransitionOutcome::Annihilated { .. })
    }
}

pub fn apply_transition(
    ops: &YangianOperators,
    which: Transition,
    state: &StateVector4,
) -> Result<TransitionOutcome> {
    if !state.is_finite() || !state.is_normalized(1e-12) {
        return Err(Error::InvalidInput(format!(
            "transition input must be normalized (norm² = {})",
            state.norm_sqr()
        )));
    }
    let image = ops.operator(which).apply(state);
    let norm = image.norm();
    if norm <= ANNIHILATION_TOL {
        return Ok(TransitionOutcome::Annihilated { norm });
    }
    Ok(TransitionOutcome::Image { state: image.scale(Complex64::new(1.0 / norm, 0.0)), amplitude: norm })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum TransitionFidelity {
    Value(f64),
    Annihilated { norm: f64 },
}

impl TransitionFidelity {
    pub fn value(&self) -> Option<f64> {
        match self {
            TransitionFidelity::Value(f) => Some(*f),
            TransitionFidelity::Annihilated { .. } => None,
        }
    }
}

/// `⟨ψ′|ρ(T)|ψ′⟩` where ψ′ is the normalized image of ψ₁ under J₊ or J₋.
pub fn transition_fidelity(p: &Params, yp: &YangianParams, which: Transition) -> Result<TransitionFidelity> {
    if !matches!(which, Transition::JPlus | Transition::JMinus) {
        return Err(Error::InvalidInput(format!("transition fidelity is defined for J+ and J-, got {which:?}")));
    }
    let state = thermal_density_matrix(p)?;
    let ops = build_generators(yp)?;
    let psi1 = analytic_eigensystem(p).states[0];
    match apply_transition(&ops, which, &psi1)? {
        TransitionOutcome::Image { state: image, .. } => Ok(TransitionFidelity::Value(fidelity(&state, &image)?)),
        TransitionOutcome::Annihilated { norm } => Ok(TransitionFidelity::Annihilated { norm }),
    }
}
