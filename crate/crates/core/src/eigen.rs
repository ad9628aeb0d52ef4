//! Cyclic Jacobi eigensolver for dense complex Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot `a_pq` with a diagonal
//! unitary and then applies the classical real Jacobi rotation, so the whole
//! step is a 2×2 unitary acting on rows/columns `p, q`. Eigenvectors are
//! accumulated as the product of those rotations.

use crate::error::{Error, Result};
use crate::linalg::{fix_phase, inner, C64, DenseHermitian, DenseMatrix, DEFAULT_MAX_DIM, ZERO};

/// Sweeps stop once the off-diagonal Frobenius norm is below this, relative to `max(1, ‖M‖_F)`.
pub const OFF_DIAGONAL_TOL: f64 = 1e-12;
pub const MAX_SWEEPS: usize = 100;

/// Eigenvalues in ascending order with matching orthonormal eigenvector columns.
#[derive(Clone, Debug)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
    eigenvectors: DenseMatrix,
}

impl Spectrum {
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Eigenvectors as columns.
    pub fn eigenvectors(&self) -> &DenseMatrix {
        &self.eigenvectors
    }

    pub fn vector(&self, k: usize) -> Vec<C64> {
        self.eigenvectors.column(k)
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn max_eigenvalue(&self) -> f64 {
        *self.eigenvalues.last().expect("non-empty spectrum")
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues[0]
    }

    /// `V Λ V†`.
    pub fn reconstruct(&self) -> DenseMatrix {
        let n = self.eigenvalues.len();
        let v = &self.eigenvectors;
        let mut out = DenseMatrix::zeros(n);
        for (k, &lambda) in self.eigenvalues.iter().enumerate() {
            for i in 0..n {
                let vi = v[(i, k)] * lambda;
                if vi == ZERO {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += vi * v[(j, k)].conj();
                }
            }
        }
        out
    }

    /// Largest elementwise deviation of `V†V` from the identity.
    pub fn orthonormality_defect(&self) -> f64 {
        let n = self.eigenvalues.len();
        let cols: Vec<Vec<C64>> = (0..n).map(|k| self.vector(k)).collect();
        let mut worst = 0.0_f64;
        for i in 0..n {
            for j in i..n {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((inner(&cols[i], &cols[j]) - target).norm());
            }
        }
        worst
    }

    /// Number of eigenvalues with `|λ| < tol`.
    pub fn kernel_dimension(&self, tol: f64) -> usize {
        self.eigenvalues.iter().filter(|l| l.abs() < tol).count()
    }
}

/// Full eigendecomposition of a Hermitian matrix of dimension at most
/// [`DEFAULT_MAX_DIM`].
pub fn hermitian_eigen(m: &DenseHermitian) -> Result<Spectrum> {
    let n = m.dim();
    if n > DEFAULT_MAX_DIM {
        return Err(Error::Size {
            what: "eigensolver dimension",
            requested: n,
            limit: DEFAULT_MAX_DIM,
        });
    }
    if n == 0 {
        return Err(Error::contract("empty matrix"));
    }

    let mut a = m.matrix().clone();
    let mut v = DenseMatrix::identity(n);
    let threshold = OFF_DIAGONAL_TOL * m.matrix().frobenius_norm().max(1.0);

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) <= threshold {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }
    if !converged && off_diagonal_norm(&a) > threshold {
        return Err(Error::Numerical(format!(
            "Jacobi iteration did not converge in {MAX_SWEEPS} sweeps"
        )));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re).then(i.cmp(&j)));

    let eigenvalues = order.iter().map(|&k| a[(k, k)].re).collect();
    let mut vectors = DenseMatrix::zeros(n);
    for (dst, &src) in order.iter().enumerate() {
        let mut col = v.column(src);
        fix_phase(&mut col, 1e-12);
        for (i, c) in col.into_iter().enumerate() {
            vectors[(i, dst)] = c;
        }
    }
    Ok(Spectrum {
        eigenvalues,
        eigenvectors: vectors,
    })
}

fn off_diagonal_norm(a: &DenseMatrix) -> f64 {
    let n = a.dim();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

fn rotate(a: &mut DenseMatrix, v: &mut DenseMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag < f64::MIN_POSITIVE {
        return;
    }
    let phase = apq / mag;
    let (app, aqq) = (a[(p, p)].re, a[(q, q)].re);

    let theta = (aqq - app) / (2.0 * mag);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    // J = diag(1, e^{-iφ}) · [[c, s], [-s, c]]
    let e = phase.conj();
    let j = [[C64::new(c, 0.0), C64::new(s, 0.0)], [e * (-s), e * c]];

    let n = a.dim();
    for k in 0..n {
        let (akp, akq) = (a[(k, p)], a[(k, q)]);
        a[(k, p)] = akp * j[0][0] + akq * j[1][0];
        a[(k, q)] = akp * j[0][1] + akq * j[1][1];
        let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
        v[(k, p)] = vkp * j[0][0] + vkq * j[1][0];
        v[(k, q)] = vkp * j[0][1] + vkq * j[1][1];
    }
    for k in 0..n {
        let (apk, aqk) = (a[(p, k)], a[(q, k)]);
        a[(p, k)] = j[0][0].conj() * apk + j[1][0].conj() * aqk;
        a[(q, k)] = j[0][1].conj() * apk + j[1][1].conj() * aqk;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{pauli_matrices, ONE};

    #[test]
    fn sigma_z_spectrum() {
        let [_, _, z] = pauli_matrices();
        let s = hermitian_eigen(&DenseHermitian::new(z).unwrap()).unwrap();
        assert_eq!(s.eigenvalues(), &[-1.0, 1.0]);
        assert!((s.vector(1)[0] - ONE).norm() < 1e-15);
    }

    #[test]
    fn sigma_y_vectors_are_phase_fixed() {
        let [_, y, _] = pauli_matrices();
        let s = hermitian_eigen(&DenseHermitian::new(y).unwrap()).unwrap();
        assert!((s.eigenvalues()[0] + 1.0).abs() < 1e-14);
        assert!((s.eigenvalues()[1] - 1.0).abs() < 1e-14);
        for k in 0..2 {
            let v = s.vector(k);
            assert!(v[0].im.abs() < 1e-15 && v[0].re > 0.0);
        }
        assert!(s.orthonormality_defect() < 1e-14);
    }

    #[test]
    fn diagonal_input_converges_immediately() {
        let d = DenseMatrix::diagonal(&[C64::new(3.0, 0.0), C64::new(-1.0, 0.0), C64::new(2.0, 0.0)]);
        let s = hermitian_eigen(&DenseHermitian::new(d).unwrap()).unwrap();
        assert_eq!(s.eigenvalues(), &[-1.0, 2.0, 3.0]);
    }

    #[test]
    fn dense_random_hermitian_reconstructs() {
        // Deterministic but irregular entries.
        let n = 9;
        let mut m = DenseMatrix::zeros(n);
        for i in 0..n {
            for j in i..n {
                let x = ((i * 31 + j * 17) % 13) as f64 / 7.0 - 0.9;
                let y = if i == j { 0.0 } else { ((i * 7 + j * 3) % 11) as f64 / 5.0 - 1.0 };
                m[(i, j)] = C64::new(x, y);
                m[(j, i)] = C64::new(x, -y);
            }
        }
        let h = DenseHermitian::new(m.clone()).unwrap();
        let s = hermitian_eigen(&h).unwrap();
        assert!(s.reconstruct().max_abs_diff(&m).unwrap() < 1e-12);
        assert!(s.orthonormality_defect() < 1e-12);
        let sum: f64 = s.eigenvalues().iter().sum();
        assert!((sum - m.trace().re).abs() < 1e-12 * n as f64);
        assert!(s.eigenvalues().windows(2).all(|w| w[0] <= w[1]));
    }
}
