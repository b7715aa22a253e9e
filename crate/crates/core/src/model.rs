//! Parameter space, spin operators and the two-qubit XY Hamiltonian
//!
//! ```text
//! H = −(1+γ)/2 σx⊗σx − (1−γ)/2 σy⊗σy − B (σz⊗1 + λ 1⊗σz)
//! ```
//!
//! Two single-qubit conventions coexist here and must not be mixed up:
//!
//! * The Hamiltonian's Pauli matrices are in the computational convention,
//!   `σz|0⟩ = +|0⟩`, `σz|1⟩ = −|1⟩`. With `ξ = B(1−λ)` and `η = B(1+λ)` the
//!   diagonal of `H` in the basis `{|11⟩, |10⟩, |01⟩, |00⟩}` is
//!   `(η, ξ, −ξ, −η)`, and the eigenvectors `(|10⟩ + a₁|01⟩)/N₁` etc. with
//!   `a₁ = ξ + √(ξ²+1)` are exact.
//! * The spin-½ operators used by the Yangian generators count `|1⟩` as
//!   spin up: `S_z|1⟩ = +½|1⟩` and `S₊|0⟩ = |1⟩`, so the raising ladder takes
//!   the odd sector to `|11⟩`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{on_x_pattern, Matrix4, I, KET_00, KET_01, KET_10, KET_11, ONE, ZERO};

/// Physical knobs: interaction anisotropy γ, field anisotropy λ, field
/// strength B and temperature T (Boltzmann constant set to 1).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Params {
    pub gamma: f64,
    pub lambda_field: f64,
    pub b_field: f64,
    pub temperature: f64,
}

impl Params {
    pub fn new(gamma: f64, lambda_field: f64, b_field: f64, temperature: f64) -> Result<Self> {
        let p = Self { gamma, lambda_field, b_field, temperature };
        p.validate()?;
        Ok(p)
    }

    /// Zero-temperature parameters; convenient for spectrum-only work.
    pub fn ground(gamma: f64, lambda_field: f64, b_field: f64) -> Result<Self> {
        Self::new(gamma, lambda_field, b_field, 0.0)
    }

    pub fn with_temperature(self, temperature: f64) -> Result<Self> {
        Self { temperature, ..self }.validate_into()
    }

    fn validate_into(self) -> Result<Self> {
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("gamma", self.gamma),
            ("lambda_field", self.lambda_field),
            ("b_field", self.b_field),
            ("temperature", self.temperature),
        ] {
            if !v.is_finite() {
                return Err(Error::InvalidInput(format!("{name} must be finite, got {v}")));
            }
        }
        if self.temperature < 0.0 {
            return Err(Error::InvalidInput(format!(
                "temperature must be >= 0, got {}",
                self.temperature
            )));
        }
        Ok(())
    }

    /// ξ = B(1−λ), the Zeeman splitting inside the odd sector.
    pub fn xi(&self) -> f64 {
        self.b_field * (1.0 - self.lambda_field)
    }

    /// η = B(1+λ), the Zeeman splitting inside the even sector.
    pub fn eta(&self) -> f64 {
        self.b_field * (1.0 + self.lambda_field)
    }
}

pub type Op2 = [[Complex64; 2]; 2];

const ID2: Op2 = [[ONE, ZERO], [ZERO, ONE]];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];
}

/// Single-qubit Pauli matrix in the computational convention, written in the
/// storage order `(|1⟩, |0⟩)`.
pub fn pauli(axis: Axis) -> Op2 {
    match axis {
        Axis::X => [[ZERO, ONE], [ONE, ZERO]],
        // σy|0⟩ = i|1⟩, σy|1⟩ = −i|0⟩
        Axis::Y => [[ZERO, I], [-I, ZERO]],
        Axis::Z => [[-ONE, ZERO], [ZERO, ONE]],
    }
}

/// Single-qubit spin-½ operator with `|1⟩` as spin up, storage order `(|1⟩, |0⟩)`.
pub fn spin_half(axis: Axis) -> Op2 {
    let h = Complex64::new(0.5, 0.0);
    match axis {
        Axis::X => [[ZERO, h], [h, ZERO]],
        Axis::Y => [[ZERO, -I * h], [I * h, ZERO]],
        Axis::Z => [[h, ZERO], [ZERO, -h]],
    }
}

/// Embed a single-qubit operator on qubit 1 or 2.
pub fn on_qubit(qubit: usize, op: &Op2) -> Matrix4 {
    match qubit {
        1 => Matrix4::kron(op, &ID2),
        2 => Matrix4::kron(&ID2, op),
        _ => panic!("qubit index must be 1 or 2, got {qubit}"),
    }
}

/// Spin-½ operators of both qubits, `s1[a] = S^a ⊗ 1`, `s2[a] = 1 ⊗ S^a`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpinOperators {
    pub s1: [Matrix4; 3],
    pub s2: [Matrix4; 3],
}

impl SpinOperators {
    pub fn qubit(&self, k: usize) -> &[Matrix4; 3] {
        match k {
            1 => &self.s1,
            2 => &self.s2,
            _ => panic!("qubit index must be 1 or 2, got {k}"),
        }
    }
}

pub fn build_spin_operators() -> SpinOperators {
    let make = |qubit| Axis::ALL.map(|a| on_qubit(qubit, &spin_half(a)));
    SpinOperators { s1: make(1), s2: make(2) }
}

pub fn build_hamiltonian(p: &Params) -> Result<Matrix4> {
    p.validate()?;
    let term = |a: Axis| on_qubit(1, &pauli(a)) * on_qubit(2, &pauli(a));
    let xx = term(Axis::X).scale_real(-(1.0 + p.gamma) / 2.0);
    let yy = term(Axis::Y).scale_real(-(1.0 - p.gamma) / 2.0);
    let zeeman = (on_qubit(1, &pauli(Axis::Z)) + on_qubit(2, &pauli(Axis::Z)).scale_real(p.lambda_field))
        .scale_real(-p.b_field);
    Ok(xx + yy + zeeman)
}

/// A real symmetric 2×2 block over an ordered pair of basis states.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Block2 {
    pub basis: [usize; 2],
    pub entries: [[f64; 2]; 2],
}

impl Block2 {
    pub fn trace(&self) -> f64 {
        self.entries[0][0] + self.entries[1][1]
    }

    pub fn det(&self) -> f64 {
        self.entries[0][0] * self.entries[1][1] - self.entries[0][1] * self.entries[1][0]
    }
}

pub const EVEN_BASIS: [usize; 2] = [KET_11, KET_00];
pub const ODD_BASIS: [usize; 2] = [KET_10, KET_01];

/// Tolerance for "structurally zero" and "real" checks on input matrices.
pub const STRUCTURE_TOL: f64 = 1e-14;

/// Split an X-shaped Hermitian matrix into its even (`{|11⟩,|00⟩}`) and odd
/// (`{|10⟩,|01⟩}`) blocks. The blocks are the literal sub-matrices.
pub fn block_decompose(h: &Matrix4) -> Result<(Block2, Block2)> {
    for r in 0..4 {
        for c in 0..4 {
            let x = h[(r, c)];
            if !on_x_pattern(r, c) && x.norm() > STRUCTURE_TOL {
                return Err(Error::Structural(format!(
                    "entry ({r},{c}) = {x} lies outside the X pattern"
                )));
            }
            if x.im.abs() > STRUCTURE_TOL {
                return Err(Error::Structural(format!("entry ({r},{c}) = {x} is not real")));
            }
        }
    }
    if !h.is_hermitian(STRUCTURE_TOL) {
        return Err(Error::Structural("matrix is not symmetric".into()));
    }
    let block = |basis: [usize; 2]| Block2 {
        basis,
        entries: [0, 1].map(|i| [0, 1].map(|j| h[(basis[i], basis[j])].re)),
    };
    Ok((block(EVEN_BASIS), block(ODD_BASIS)))
}

/// Inverse of [`block_decompose`].
pub fn reassemble(even: &Block2, odd: &Block2) -> Matrix4 {
    let mut m = Matrix4::zero();
    for b in [even, odd] {
        for i in 0..2 {
            for j in 0..2 {
                m[(b.basis[i], b.basis[j])] = Complex64::new(b.entries[i][j], 0.0);
            }
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn levi_civita(a: usize, b: usize, c: usize) -> f64 {
        match (a, b, c) {
            (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
            (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
            _ => 0.0,
        }
    }

    #[test]
    fn s1z_diagonal_counts_one_as_spin_up() {
        let s = build_spin_operators();
        let d: Vec<f64> = (0..4).map(|k| s.s1[2][(k, k)].re).collect();
        assert_eq!(d, vec![0.5, 0.5, -0.5, -0.5]);
        let d2: Vec<f64> = (0..4).map(|k| s.s2[2][(k, k)].re).collect();
        assert_eq!(d2, vec![0.5, -0.5, 0.5, -0.5]);
    }

    #[test]
    fn spin_commutators_close_su2_per_qubit_and_vanish_across() {
        let s = build_spin_operators();
        for i in 1..=2 {
            for j in 1..=2 {
                for a in 0..3 {
                    for b in 0..3 {
                        let lhs = s.qubit(i)[a].commutator(&s.qubit(j)[b]);
                        let mut rhs = Matrix4::zero();
                        if i == j {
                            for c in 0..3 {
                                rhs = rhs + s.qubit(i)[c].scale(I * levi_civita(a, b, c));
                            }
                        }
                        assert!(lhs.max_abs_diff(&rhs) <= 1e-14, "i={i} j={j} a={a} b={b}");
                    }
                }
            }
        }
    }

    #[test]
    fn spin_operators_have_eigenvalues_plus_minus_half() {
        let s = build_spin_operators();
        for op in s.s1.iter().chain(s.s2.iter()) {
            // S² = 1/4 and tr S = 0 pin the spectrum to {±½, ±½}
            assert!((*op * *op).max_abs_diff(&Matrix4::identity().scale_real(0.25)) <= 1e-15);
            assert!(op.trace().norm() <= 1e-15);
            assert!(op.is_hermitian(0.0));
        }
    }

    #[test]
    fn pauli_is_twice_spin_up_to_orientation() {
        // σx = 2Sx, σy = −2Sy, σz = −2Sz: the two conventions are related by
        // relabelling |0⟩ <-> |1⟩ on each qubit
        let two = Complex64::new(2.0, 0.0);
        let spin = Axis::ALL.map(spin_half);
        let p = Axis::ALL.map(pauli);
        for r in 0..2 {
            for c in 0..2 {
                assert_eq!(p[0][r][c], spin[0][r][c] * two);
                assert_eq!(p[1][r][c], -spin[1][r][c] * two);
                assert_eq!(p[2][r][c], -spin[2][r][c] * two);
            }
        }
    }

    #[test]
    fn pure_exchange_at_zero_field_and_gamma() {
        let h = build_hamiltonian(&Params::ground(0.0, 0.37, 0.0).unwrap()).unwrap();
        let mut expected = Matrix4::zero();
        expected[(KET_10, KET_01)] = -ONE;
        expected[(KET_01, KET_10)] = -ONE;
        assert!(h.max_abs_diff(&expected) == 0.0);
    }

    #[test]
    fn entries_at_gamma1_lambda1_b1() {
        let h = build_hamiltonian(&Params::ground(1.0, 1.0, 1.0).unwrap()).unwrap();
        let expected = Matrix4::from_real([
            [2.0, 0.0, 0.0, -1.0],
            [0.0, 0.0, -1.0, 0.0],
            [0.0, -1.0, 0.0, 0.0],
            [-1.0, 0.0, 0.0, -2.0],
        ]);
        assert!(h.max_abs_diff(&expected) <= 1e-15, "{h}");
    }

    #[test]
    fn entries_at_reversed_field() {
        // ξ = 2, η = 0
        let h = build_hamiltonian(&Params::ground(0.5, -1.0, 1.0).unwrap()).unwrap();
        assert_eq!(h[(KET_10, KET_10)].re, 2.0);
        assert_eq!(h[(KET_01, KET_01)].re, -2.0);
        assert_eq!(h[(KET_11, KET_11)].re, 0.0);
        assert_eq!(h[(KET_11, KET_00)].re, -0.5);
        assert_eq!(h[(KET_10, KET_01)].re, -1.0);
    }

    #[test]
    fn nonfinite_params_rejected() {
        assert!(matches!(Params::ground(f64::NAN, 0.0, 0.0), Err(Error::InvalidInput(_))));
        let p = Params { gamma: 0.0, lambda_field: f64::INFINITY, b_field: 0.0, temperature: 0.0 };
        assert!(matches!(build_hamiltonian(&p), Err(Error::InvalidInput(_))));
        assert!(Params::new(0.0, 0.0, 0.0, -1.0).is_err());
    }

    #[test]
    fn decompose_homogeneous_field() {
        let h = build_hamiltonian(&Params::ground(0.5, 1.0, 1.0).unwrap()).unwrap();
        let (even, odd) = block_decompose(&h).unwrap();
        assert_eq!(even.entries, [[2.0, -0.5], [-0.5, -2.0]]);
        assert_eq!(odd.entries, [[0.0, -1.0], [-1.0, 0.0]]);
    }

    #[test]
    fn decompose_zero_field_zero_gamma() {
        let h = build_hamiltonian(&Params::ground(0.0, 0.3, 0.0).unwrap()).unwrap();
        let (even, odd) = block_decompose(&h).unwrap();
        assert_eq!(even.entries, [[0.0, 0.0], [0.0, 0.0]]);
        assert_eq!(odd.entries, [[0.0, -1.0], [-1.0, 0.0]]);
    }

    #[test]
    fn decompose_rejects_non_x_pattern() {
        let mut h = build_hamiltonian(&Params::ground(0.5, 1.0, 1.0).unwrap()).unwrap();
        h[(KET_11, KET_10)] = Complex64::new(1e-3, 0.0);
        h[(KET_10, KET_11)] = Complex64::new(1e-3, 0.0);
        assert!(matches!(block_decompose(&h), Err(Error::Structural(_))));
    }
}
