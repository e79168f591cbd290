//! Hermitian eigendecomposition by cyclic complex Jacobi rotations, plus the
//! spectral-calculus helpers built on it (unitary exponentials).
//!
//! Dimensions in this crate stay in the low hundreds, where Jacobi is simple,
//! dependency-free and accurate to close to machine precision.

use alloc::vec::Vec;

use crate::linalg::{C64, CMatrix};

#[derive(Clone, Debug)]
pub struct Eigen {
    /// Eigenvalues, ascending.
    pub values: Vec<f64>,
    /// Matching eigenvectors as columns.
    pub vectors: CMatrix,
}

/// Eigendecomposition of a Hermitian matrix.
///
/// Panics if the matrix is visibly non-Hermitian; callers construct operators
/// through checked paths.
pub fn hermitian_eigen(a: &CMatrix) -> Eigen {
    let n = a.dim();
    let scale = a.max_abs().max(1.0);
    assert!(
        a.hermiticity_defect() <= 1e-10 * scale,
        "hermitian_eigen needs a Hermitian input"
    );
    let mut m = a.clone();
    let mut v = CMatrix::identity(n);
    let tol = 1e-14 * scale;

    for _sweep in 0..60 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off = off.max(m[(p, q)].norm());
            }
        }
        if off <= tol {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[(p, q)];
                let r = apq.norm();
                if r <= tol * 1e-2 {
                    continue;
                }
                let phase = apq / r; // e^{i phi}
                let app = m[(p, p)].re;
                let aqq = m[(q, q)].re;
                let theta = (aqq - app) / (2.0 * r);
                let t = if theta >= 0.0 {
                    -1.0 / (theta + libm::sqrt(1.0 + theta * theta))
                } else {
                    1.0 / (-theta + libm::sqrt(1.0 + theta * theta))
                };
                let c = 1.0 / libm::sqrt(1.0 + t * t);
                let s = t * c;
                let se_m = phase.conj() * s; // s e^{-i phi}
                let se_p = phase * s; // s e^{+i phi}

                // A <- A U  (columns p, q)
                for k in 0..n {
                    let akp = m[(k, p)];
                    let akq = m[(k, q)];
                    m[(k, p)] = akp * c + akq * se_m;
                    m[(k, q)] = akq * c - akp * se_p;
                }
                // A <- U^+ A  (rows p, q)
                for k in 0..n {
                    let apk = m[(p, k)];
                    let aqk = m[(q, k)];
                    m[(p, k)] = apk * c + aqk * se_p;
                    m[(q, k)] = aqk * c - apk * se_m;
                }
                // V <- V U
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * c + vkq * se_m;
                    v[(k, q)] = vkq * c - vkp * se_p;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].re.partial_cmp(&m[(j, j)].re).unwrap());
    let values: Vec<f64> = order.iter().map(|&i| m[(i, i)].re).collect();
    let vectors = CMatrix::from_fn(n, |r, c| v[(r, order[c])]);
    Eigen { values, vectors }
}

/// `exp(i k A)` for Hermitian `A`, via the eigendecomposition. Exactly unitary
/// up to the accuracy of the eigensolve.
pub fn unitary_exp(a: &CMatrix, k: f64) -> CMatrix {
    let eig = hermitian_eigen(a);
    unitary_exp_from(&eig, k)
}

/// Same as [`unitary_exp`] but reusing a precomputed decomposition, so that a
/// family over many `k` shares one eigensolve.
pub fn unitary_exp_from(eig: &Eigen, k: f64) -> CMatrix {
    let n = eig.vectors.dim();
    // V diag(e^{i k w}) V^+
    let mut scaled = CMatrix::zeros(n);
    for c in 0..n {
        let ph = C64::from_polar(1.0, k * eig.values[c]);
        for r in 0..n {
            scaled[(r, c)] = eig.vectors[(r, c)] * ph;
        }
    }
    scaled.mul(&eig.vectors.adjoint())
}
