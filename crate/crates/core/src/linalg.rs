//! Dense complex vectors and matrices of dimension 4.
//!
//! Every index refers to the fixed two-qubit basis
//! `{|11⟩, |10⟩, |01⟩, |00⟩}`; the constants [`KET_11`] .. [`KET_00`] name
//! the positions so that code never hard-codes a bare index.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub const KET_11: usize = 0;
pub const KET_10: usize = 1;
pub const KET_01: usize = 2;
pub const KET_00: usize = 3;

/// Labels of the basis states, in storage order.
pub const BASIS_LABELS: [&str; 4] = ["|11⟩", "|10⟩", "|01⟩", "|00⟩"];

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

/// A state of two qubits as four complex amplitudes.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateVector4 {
    pub amplitudes: [Complex64; 4],
}

impl StateVector4 {
    pub const fn new(amplitudes: [Complex64; 4]) -> Self {
        Self { amplitudes }
    }

    pub fn zero() -> Self {
        Self::new([ZERO; 4])
    }

    /// The basis state at position `index`.
    pub fn basis(index: usize) -> Self {
        let mut v = Self::zero();
        v.amplitudes[index] = ONE;
        v
    }

    pub fn from_real(values: [f64; 4]) -> Self {
        Self::new(values.map(|x| Complex64::new(x, 0.0)))
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// `⟨self|other⟩`, conjugate-linear in `self`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(other.amplitudes.iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self::new(self.amplitudes.map(|c| c * factor))
    }

    /// Normalized copy, or `None` for the zero vector.
    pub fn normalized(&self) -> Option<Self> {
        let n = self.norm();
        (n > 0.0 && n.is_finite()).then(|| self.scale(Complex64::new(1.0 / n, 0.0)))
    }

    pub fn is_normalized(&self, tol: f64) -> bool {
        (self.norm_sqr() - 1.0).abs() <= tol
    }

    /// `|self⟩⟨self|`.
    pub fn projector(&self) -> Matrix4 {
        self.outer(self)
    }

    /// `|self⟩⟨other|`.
    pub fn outer(&self, other: &Self) -> Matrix4 {
        let mut m = Matrix4::zero();
        for r in 0..4 {
            for c in 0..4 {
                m[(r, c)] = self.amplitudes[r] * other.amplitudes[c].conj();
            }
        }
        m
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.amplitudes
            .iter()
            .zip(other.amplitudes.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.amplitudes.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }
}

impl Index<usize> for StateVector4 {
    type Output = Complex64;
    fn index(&self, i: usize) -> &Complex64 {
        &self.amplitudes[i]
    }
}

impl IndexMut<usize> for StateVector4 {
    fn index_mut(&mut self, i: usize) -> &mut Complex64 {
        &mut self.amplitudes[i]
    }
}

impl Add for StateVector4 {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let mut out = self;
        for (a, b) in out.amplitudes.iter_mut().zip(rhs.amplitudes) {
            *a += b;
        }
        out
    }
}

impl Sub for StateVector4 {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let mut out = self;
        for (a, b) in out.amplitudes.iter_mut().zip(rhs.amplitudes) {
            *a -= b;
        }
        out
    }
}

impl fmt::Display for StateVector4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (c, label) in self.amplitudes.iter().zip(BASIS_LABELS) {
            if c.norm() == 0.0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if c.im == 0.0 {
                write!(f, "{:.6}{}", c.re, label)?;
            } else {
                write!(f, "({:.6}{:+.6}i){}", c.re, c.im, label)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// A 4×4 complex matrix, row-major.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Matrix4 {
    pub entries: [[Complex64; 4]; 4],
}

impl Matrix4 {
    pub const fn new(entries: [[Complex64; 4]; 4]) -> Self {
        Self { entries }
    }

    pub fn zero() -> Self {
        Self::new([[ZERO; 4]; 4])
    }

    pub fn identity() -> Self {
        Self::from_diagonal([ONE; 4])
    }

    pub fn from_diagonal(d: [Complex64; 4]) -> Self {
        let mut m = Self::zero();
        for (k, v) in d.into_iter().enumerate() {
            m[(k, k)] = v;
        }
        m
    }

    pub fn from_real(rows: [[f64; 4]; 4]) -> Self {
        Self::new(rows.map(|row| row.map(|x| Complex64::new(x, 0.0))))
    }

    /// Kronecker product `a ⊗ b` of single-qubit operators.
    pub fn kron(a: &[[Complex64; 2]; 2], b: &[[Complex64; 2]; 2]) -> Self {
        let mut m = Self::zero();
        for (i1, row_a) in a.iter().enumerate() {
            for (j1, &x) in row_a.iter().enumerate() {
                for (i2, row_b) in b.iter().enumerate() {
                    for (j2, &y) in row_b.iter().enumerate() {
                        m[(2 * i1 + i2, 2 * j1 + j2)] = x * y;
                    }
                }
            }
        }
        m
    }

    pub fn dagger(&self) -> Self {
        let mut m = Self::zero();
        for r in 0..4 {
            for c in 0..4 {
                m[(r, c)] = self[(c, r)].conj();
            }
        }
        m
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self::new(self.entries.map(|row| row.map(|x| x * factor)))
    }

    pub fn scale_real(&self, factor: f64) -> Self {
        self.scale(Complex64::new(factor, 0.0))
    }

    pub fn trace(&self) -> Complex64 {
        (0..4).map(|k| self[(k, k)]).sum()
    }

    /// `[self, other] = self·other − other·self`.
    pub fn commutator(&self, other: &Self) -> Self {
        *self * *other - *other * *self
    }

    pub fn apply(&self, v: &StateVector4) -> StateVector4 {
        let mut out = StateVector4::zero();
        for r in 0..4 {
            out[r] = (0..4).map(|c| self[(r, c)] * v[c]).sum();
        }
        out
    }

    /// `⟨u|self|v⟩`.
    pub fn sandwich(&self, u: &StateVector4, v: &StateVector4) -> Complex64 {
        u.inner(&self.apply(v))
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().flatten().map(|x| x.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (*self - *other).max_abs()
    }

    /// Largest imaginary part in absolute value.
    pub fn max_abs_imag(&self) -> f64 {
        self.entries.iter().flatten().map(|x| x.im.abs()).fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.max_abs_diff(&self.dagger()) <= tol
    }

    pub fn is_finite(&self) -> bool {
        self.entries
            .iter()
            .flatten()
            .all(|c| c.re.is_finite() && c.im.is_finite())
    }

    /// Real parts as a plain array.
    pub fn real_part(&self) -> [[f64; 4]; 4] {
        self.entries.map(|row| row.map(|x| x.re))
    }

    /// Largest absolute value among the entries outside the X pattern,
    /// i.e. those coupling `{|11⟩,|00⟩}` with `{|10⟩,|01⟩}`.
    pub fn off_x_pattern_max(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for r in 0..4 {
            for c in 0..4 {
                if !on_x_pattern(r, c) {
                    worst = worst.max(self[(r, c)].norm());
                }
            }
        }
        worst
    }
}

/// Whether `(r, c)` lies on the diagonal or the anti-diagonal.
pub fn on_x_pattern(r: usize, c: usize) -> bool {
    r == c || r + c == 3
}

impl Index<(usize, usize)> for Matrix4 {
    type Output = Complex64;
    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.entries[r][c]
    }
}

impl IndexMut<(usize, usize)> for Matrix4 {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.entries[r][c]
    }
}

impl Add for Matrix4 {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let mut out = self;
        for r in 0..4 {
            for c in 0..4 {
                out[(r, c)] += rhs[(r, c)];
            }
        }
        out
    }
}

impl Sub for Matrix4 {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let mut out = self;
        for r in 0..4 {
            for c in 0..4 {
                out[(r, c)] -= rhs[(r, c)];
            }
        }
        out
    }
}

impl Neg for Matrix4 {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale_real(-1.0)
    }
}

impl Mul for Matrix4 {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zero();
        for r in 0..4 {
            for c in 0..4 {
                out[(r, c)] = (0..4).map(|k| self[(r, k)] * rhs[(k, c)]).sum();
            }
        }
        out
    }
}

impl Mul<StateVector4> for Matrix4 {
    type Output = StateVector4;
    fn mul(self, rhs: StateVector4) -> StateVector4 {
        self.apply(&rhs)
    }
}

impl fmt::Display for Matrix4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.entries {
            for (k, x) in row.iter().enumerate() {
                if k > 0 {
                    write!(f, "  ")?;
                }
                if x.im == 0.0 {
                    write!(f, "{:>12.6}", x.re)?;
                } else {
                    write!(f, "{:>12.6}{:+.6}i", x.re, x.im)?;
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
