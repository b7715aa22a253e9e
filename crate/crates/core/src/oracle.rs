//! Brute-force reference computations, independent of the closed forms.
//!
//! Nothing here knows about the block structure of the Hamiltonian: the
//! eigensolver is a plain cyclic Jacobi iteration on a dense symmetric
//! matrix, and the Gibbs state is assembled from its output.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{Matrix4, StateVector4};

pub const MAX_SWEEPS: usize = 50;
/// Convergence when the off-diagonal Frobenius norm is below this fraction of ‖A‖_F.
pub const OFF_DIAGONAL_RTOL: f64 = 1e-15;
pub const SYMMETRY_TOL: f64 = 1e-13;

/// Eigenvalues ascending; `eigenvectors[r][k]` is component `r` of vector `k`.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseEigenResult<const N: usize> {
    pub eigenvalues: [f64; N],
    pub eigenvectors: [[f64; N]; N],
}

impl<const N: usize> DenseEigenResult<N> {
    pub fn vector(&self, k: usize) -> [f64; N] {
        std::array::from_fn(|r| self.eigenvectors[r][k])
    }
}

fn frobenius<const N: usize>(a: &[[f64; N]; N]) -> f64 {
    a.iter().flatten().map(|x| x * x).sum::<f64>().sqrt()
}

fn off_diagonal<const N: usize>(a: &[[f64; N]; N]) -> f64 {
    let mut s = 0.0;
    for (r, row) in a.iter().enumerate() {
        for (c, x) in row.iter().enumerate() {
            if r != c {
                s += x * x;
            }
        }
    }
    s.sqrt()
}

/// Cyclic Jacobi diagonalization of a real symmetric matrix.
pub fn jacobi_symmetric<const N: usize>(input: &[[f64; N]; N]) -> Result<DenseEigenResult<N>> {
    let scale = input.iter().flatten().map(|x| x.abs()).fold(0.0, f64::max).max(1.0);
    for r in 0..N {
        for c in 0..r {
            if !input[r][c].is_finite() || (input[r][c] - input[c][r]).abs() > SYMMETRY_TOL * scale {
                return Err(Error::InvalidInput(format!(
                    "matrix is not symmetric at ({r},{c}): {} vs {}",
                    input[r][c], input[c][r]
                )));
            }
        }
    }
    let mut a = *input;
    let mut v = [[0.0; N]; N];
    for (k, row) in v.iter_mut().enumerate() {
        row[k] = 1.0;
    }
    let target = OFF_DIAGONAL_RTOL * frobenius(&a);

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        if off_diagonal(&a) <= target {
            converged = true;
            break;
        }
        for p in 0..N {
            for q in p + 1..N {
                let apq = a[p][q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + theta.hypot(1.0));
                let c = 1.0 / t.hypot(1.0);
                let s = t * c;
                // A ← Rᵀ A R with R the (p, q) plane rotation
                for k in 0..N {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..N {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                a[p][q] = 0.0;
                a[q][p] = 0.0;
                for row in v.iter_mut() {
                    let (vp, vq) = (row[p], row[q]);
                    row[p] = c * vp - s * vq;
                    row[q] = s * vp + c * vq;
                }
            }
        }
    }
    if !converged && off_diagonal(&a) > target {
        return Err(Error::NoConvergence { sweeps: MAX_SWEEPS, off_norm: off_diagonal(&a) });
    }

    let mut order: [usize; N] = std::array::from_fn(|k| k);
    order.sort_by(|&i, &j| a[i][i].total_cmp(&a[j][j]));
    Ok(DenseEigenResult {
        eigenvalues: order.map(|k| a[k][k]),
        eigenvectors: std::array::from_fn(|r| order.map(|k| v[r][k])),
    })
}

/// Jacobi on a real symmetric `Matrix4`. Complex entries are rejected; use
/// [`hermitian_eigen`] for those.
pub fn jacobi_eigen(a: &Matrix4) -> Result<DenseEigenResult<4>> {
    if a.max_abs_imag() > 0.0 {
        return Err(Error::InvalidInput("matrix has imaginary entries; not real symmetric".into()));
    }
    jacobi_symmetric(&a.real_part())
}

/// Eigenvalues (ascending) and orthonormal eigenvectors of a Hermitian matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianEigenResult {
    pub eigenvalues: [f64; 4],
    pub eigenvectors: [StateVector4; 4],
}

/// Hermitian eigenproblem through the real embedding
/// `[[Re A, −Im A], [Im A, Re A]]`, whose spectrum is that of `A` doubled.
pub fn hermitian_eigen(a: &Matrix4) -> Result<HermitianEigenResult> {
    if !a.is_hermitian(SYMMETRY_TOL * a.max_abs().max(1.0)) {
        return Err(Error::InvalidInput("matrix is not Hermitian".into()));
    }
    let mut big = [[0.0; 8]; 8];
    for r in 0..4 {
        for c in 0..4 {
            let z = a[(r, c)];
            big[r][c] = z.re;
            big[r + 4][c + 4] = z.re;
            big[r][c + 4] = -z.im;
            big[r + 4][c] = z.im;
        }
    }
    let emb = jacobi_symmetric(&big)?;
    // each eigenvalue appears twice; (x, y) and (−y, x) both map to x + iy up
    // to a phase, so keep one representative per complex direction
    let mut values = Vec::with_capacity(4);
    let mut vectors: Vec<StateVector4> = Vec::with_capacity(4);
    for k in 0..8 {
        if vectors.len() == 4 {
            break;
        }
        let col = emb.vector(k);
        let mut z = StateVector4::new(std::array::from_fn(|r| Complex64::new(col[r], col[r + 4])));
        for u in &vectors {
            z = z - u.scale(u.inner(&z));
        }
        if let Some(unit) = z.normalized().filter(|_| z.norm() > 0.5) {
            values.push(emb.eigenvalues[k]);
            vectors.push(unit);
        }
    }
    if vectors.len() != 4 {
        return Err(Error::Consistency("embedding did not yield four independent eigenvectors".into()));
    }
    Ok(HermitianEigenResult {
        eigenvalues: [values[0], values[1], values[2], values[3]],
        eigenvectors: [vectors[0], vectors[1], vectors[2], vectors[3]],
    })
}

/// `exp(−A/t) / Tr exp(−A/t)` by eigendecomposition.
pub fn gibbs_state(a: &Matrix4, t: f64) -> Result<Matrix4> {
    if !t.is_finite() || t <= 0.0 {
        return Err(Error::Domain(format!("temperature must be finite and > 0, got {t}")));
    }
    let (values, vectors): ([f64; 4], [StateVector4; 4]) = if a.max_abs_imag() == 0.0 {
        let eig = jacobi_eigen(a)?;
        (eig.eigenvalues, std::array::from_fn(|k| StateVector4::from_real(eig.vector(k))))
    } else {
        let eig = hermitian_eigen(a)?;
        (eig.eigenvalues, eig.eigenvectors)
    };
    let e_min = values[0];
    let w = values.map(|e| (-(e - e_min) / t).exp());
    let z: f64 = w.iter().sum();
    Ok(vectors
        .iter()
        .zip(w)
        .fold(Matrix4::zero(), |acc, (v, wk)| acc + v.projector().scale_real(wk / z)))
}

/// ⟨ψ|ρ|ψ⟩ evaluated as an explicit double sum.
pub fn direct_fidelity(rho: &Matrix4, psi: &StateVector4) -> Result<f64> {
    if !psi.is_normalized(1e-12) {
        return Err(Error::InvalidInput(format!("psi must be normalized (norm² = {})", psi.norm_sqr())));
    }
    if !rho.is_hermitian(1e-12) || (rho.trace().re - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidInput("rho must be a unit-trace Hermitian matrix".into()));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for r in 0..4 {
        for c in 0..4 {
            acc += psi[r].conj() * rho[(r, c)] * psi[c];
        }
    }
    if acc.im.abs() > 1e-13 {
        return Err(Error::Consistency(format!("quadratic form has imaginary part {}", acc.im)));
    }
    Ok(acc.re)
}
