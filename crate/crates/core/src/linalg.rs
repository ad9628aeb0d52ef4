//! Dense complex matrices and the small fixed-size helpers used around them.
//!
//! Basis ordering is global: qubit 1 is the most significant bit of a basis
//! index, and `σz|0⟩ = |0⟩`.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Largest qubit count for which dense `2^n × 2^n` matrices are built by default.
pub const DENSE_LIMIT_QUBITS: usize = 12;
/// Largest qubit count for matrix-free operations on state vectors.
pub const STRUCTURED_LIMIT_QUBITS: usize = 20;
/// Default dense dimension cap, `2^DENSE_LIMIT_QUBITS`.
pub const DEFAULT_MAX_DIM: usize = 1 << DENSE_LIMIT_QUBITS;

/// Elementwise tolerance for Hermiticity.
pub const HERMITIAN_TOL: f64 = 1e-12;

pub(crate) fn check_finite(values: impl IntoIterator<Item = C64>, what: &str) -> Result<()> {
    if values.into_iter().all(|c| c.re.is_finite() && c.im.is_finite()) {
        Ok(())
    } else {
        Err(Error::contract(format!("{what} contains a non-finite component")))
    }
}

pub(crate) fn check_dense_qubits(n: usize, limit: usize) -> Result<()> {
    if n > limit {
        return Err(Error::Size {
            what: "dense qubit count",
            requested: n,
            limit,
        });
    }
    Ok(())
}

/// Square complex matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct DenseMatrix {
    dim: usize,
    data: Vec<C64>,
}

impl DenseMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let dim = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != dim) {
            return Err(Error::Shape {
                expected: dim,
                got: bad.len(),
            });
        }
        let data: Vec<C64> = rows.iter().flatten().copied().collect();
        check_finite(data.iter().copied(), "matrix")?;
        Ok(Self { dim, data })
    }

    pub(crate) fn from_raw(dim: usize, data: Vec<C64>) -> Self {
        debug_assert_eq!(data.len(), dim * dim);
        Self { dim, data }
    }

    pub fn diagonal(values: &[C64]) -> Self {
        let mut m = Self::zeros(values.len());
        for (i, v) in values.iter().enumerate() {
            m[(i, i)] = *v;
        }
        m
    }

    /// `|a⟩⟨b|`.
    pub fn outer(a: &[C64], b: &[C64]) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::Shape {
                expected: a.len(),
                got: b.len(),
            });
        }
        let dim = a.len();
        let mut data = Vec::with_capacity(dim * dim);
        for ai in a {
            data.extend(b.iter().map(|bj| ai * bj.conj()));
        }
        Ok(Self { dim, data })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.dim).map(|i| self[(i, j)]).collect()
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scale(&self, s: C64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|c| c * s).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        Ok(Self {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        Ok(Self {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                let orow = other.row(k);
                let dst = &mut out.data[i * n..(i + 1) * n];
                for (d, b) in dst.iter_mut().zip(orow) {
                    *d += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[C64]) -> Result<Vec<C64>> {
        if v.len() != self.dim {
            return Err(Error::Shape {
                expected: self.dim,
                got: v.len(),
            });
        }
        Ok((0..self.dim)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// Largest elementwise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.same_dim(other)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub fn hermiticity_defect(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0_f64;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_defect() <= tol
    }

    /// Tensor product `self ⊗ other`, refusing results wider than `max_dim`.
    pub fn kron_bounded(&self, other: &Self, max_dim: usize) -> Result<Self> {
        let dim = self
            .dim
            .checked_mul(other.dim)
            .filter(|&d| d <= max_dim)
            .ok_or(Error::Size {
                what: "tensor product dimension",
                requested: self.dim.saturating_mul(other.dim),
                limit: max_dim,
            })?;
        let (na, nb) = (self.dim, other.dim);
        let mut data = vec![ZERO; dim * dim];
        for i in 0..na {
            for j in 0..na {
                let a = self[(i, j)];
                if a == ZERO {
                    continue;
                }
                for k in 0..nb {
                    let row = (i * nb + k) * dim + j * nb;
                    for (l, b) in other.row(k).iter().enumerate() {
                        data[row + l] = a * b;
                    }
                }
            }
        }
        Ok(Self { dim, data })
    }

    pub fn kron(&self, other: &Self) -> Result<Self> {
        self.kron_bounded(other, DEFAULT_MAX_DIM)
    }

    fn same_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::Shape {
                expected: self.dim,
                got: other.dim,
            });
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for DenseMatrix {
    type Output = C64;

    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.dim + j]
    }
}

impl fmt::Debug for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "DenseMatrix({}x{})", self.dim, self.dim)?;
        for i in 0..self.dim.min(16) {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

/// A dense matrix known to be Hermitian within [`HERMITIAN_TOL`].
#[derive(Clone, Debug, PartialEq)]
pub struct DenseHermitian(DenseMatrix);

impl DenseHermitian {
    pub fn new(m: DenseMatrix) -> Result<Self> {
        check_finite(m.data.iter().copied(), "matrix")?;
        let defect = m.hermiticity_defect();
        if defect > HERMITIAN_TOL {
            return Err(Error::contract(format!(
                "matrix is not Hermitian (max |M - M^dagger| = {defect:e})"
            )));
        }
        Ok(Self(m))
    }

    pub(crate) fn new_unchecked(m: DenseMatrix) -> Self {
        Self(m)
    }

    pub fn dim(&self) -> usize {
        self.0.dim
    }

    pub fn matrix(&self) -> &DenseMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> DenseMatrix {
        self.0
    }
}

impl Index<(usize, usize)> for DenseHermitian {
    type Output = C64;

    fn index(&self, idx: (usize, usize)) -> &C64 {
        &self.0[idx]
    }
}

/// Tensor product of two Hermitian matrices, capped at the default dense dimension.
pub fn kron(a: &DenseHermitian, b: &DenseHermitian) -> Result<DenseHermitian> {
    kron_bounded(a, b, DEFAULT_MAX_DIM)
}

pub fn kron_bounded(a: &DenseHermitian, b: &DenseHermitian, max_dim: usize) -> Result<DenseHermitian> {
    a.0.kron_bounded(&b.0, max_dim).map(DenseHermitian)
}

/// Single-qubit unitary, `u[row][col]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Unitary2(pub [[C64; 2]; 2]);

impl Unitary2 {
    pub const IDENTITY: Unitary2 = Unitary2([[ONE, ZERO], [ZERO, ONE]]);

    /// Unitary whose columns are `col0` and `col1`.
    pub fn from_columns(col0: [C64; 2], col1: [C64; 2]) -> Self {
        Unitary2([[col0[0], col1[0]], [col0[1], col1[1]]])
    }

    pub fn column(&self, j: usize) -> [C64; 2] {
        [self.0[0][j], self.0[1][j]]
    }

    pub fn apply(&self, v: [C64; 2]) -> [C64; 2] {
        let u = &self.0;
        [u[0][0] * v[0] + u[0][1] * v[1], u[1][0] * v[0] + u[1][1] * v[1]]
    }

    pub fn adjoint(&self) -> Self {
        let u = &self.0;
        Unitary2([[u[0][0].conj(), u[1][0].conj()], [u[0][1].conj(), u[1][1].conj()]])
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = (&self.0, &other.0);
        let mut out = [[ZERO; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Unitary2(out)
    }

    /// Largest elementwise deviation of `U†U` from the identity.
    pub fn unitarity_defect(&self) -> f64 {
        let p = self.adjoint().mul(self);
        let mut worst = 0.0_f64;
        for i in 0..2 {
            for j in 0..2 {
                let target = if i == j { ONE } else { ZERO };
                worst = worst.max((p.0[i][j] - target).norm());
            }
        }
        worst
    }

    pub fn to_dense(&self) -> DenseMatrix {
        DenseMatrix::from_raw(2, vec![self.0[0][0], self.0[0][1], self.0[1][0], self.0[1][1]])
    }

    /// The SO(3) rotation `R` with `U (v·σ) U† = (R v)·σ`.
    pub fn bloch_rotation(&self) -> [[f64; 3]; 3] {
        let paulis = pauli_matrices();
        let u = self.to_dense();
        let ud = u.adjoint();
        let mut r = [[0.0; 3]; 3];
        for (l, sl) in paulis.iter().enumerate() {
            let conj = u.matmul(sl).and_then(|m| m.matmul(&ud)).expect("2x2 products");
            for (k, sk) in paulis.iter().enumerate() {
                // R_kl = ½ Tr(σk U σl U†)
                let t = sk.matmul(&conj).expect("2x2 product").trace();
                r[k][l] = 0.5 * t.re;
            }
        }
        r
    }
}

/// `[σx, σy, σz]` as dense 2×2 matrices.
/// Shortest decimal that parses back to `x`; integral values print without
/// a fractional part, others as `serde_json` writes them.
pub fn format_f64(x: f64) -> String {
    if x.is_finite() && x.fract() == 0.0 && x.abs() < 1e16 {
        format!("{x}")
    } else {
        serde_json::to_string(&x).unwrap_or_else(|_| x.to_string())
    }
}

pub fn pauli_matrices() -> [DenseMatrix; 3] {
    [
        DenseMatrix::from_raw(2, vec![ZERO, ONE, ONE, ZERO]),
        DenseMatrix::from_raw(2, vec![ZERO, -I, I, ZERO]),
        DenseMatrix::from_raw(2, vec![ONE, ZERO, ZERO, -ONE]),
    ]
}

pub fn inner(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn norm(v: &[C64]) -> f64 {
    v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

/// Multiplies `v` by a unit phase so that its first entry with modulus above
/// `tol` becomes real and positive.
pub(crate) fn fix_phase(v: &mut [C64], tol: f64) {
    if let Some(first) = v.iter().find(|c| c.norm() > tol).copied() {
        let phase = first.conj() / first.norm();
        for c in v.iter_mut() {
            *c *= phase;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formatting_round_trips() {
        assert_eq!(format_f64(4.0), "4");
        assert_eq!(format_f64(6.280369834735101e-16), "6.280369834735101e-16");
        for x in [0.1, 1.0 / 3.0, -2.5e-300, 1e20, std::f64::consts::PI] {
            assert_eq!(format_f64(x).parse::<f64>().unwrap(), x);
        }
    }

    fn herm(m: DenseMatrix) -> DenseHermitian {
        DenseHermitian::new(m).unwrap()
    }

    #[test]
    fn xx_flips_00_to_11() {
        let [x, _, _] = pauli_matrices();
        let xx = kron(&herm(x.clone()), &herm(x)).unwrap();
        let v = xx.matrix().mul_vec(&[ONE, ZERO, ZERO, ZERO]).unwrap();
        assert_eq!(v, vec![ZERO, ZERO, ZERO, ONE]);
    }

    #[test]
    fn identity_kron_is_block_diagonal() {
        let m = herm(
            DenseMatrix::from_rows(&[vec![C64::new(2.0, 0.0), C64::new(1.0, -3.0)], vec![C64::new(1.0, 3.0), -ONE]])
                .unwrap(),
        );
        let k = kron(&herm(DenseMatrix::identity(2)), &m).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let expected = if i / 2 == j / 2 { m[(i % 2, j % 2)] } else { ZERO };
                assert_eq!(k[(i, j)], expected);
            }
        }
    }

    #[test]
    fn zz_is_diagonal() {
        let [_, _, z] = pauli_matrices();
        let zz = kron(&herm(z.clone()), &herm(z)).unwrap();
        let expected = DenseMatrix::diagonal(&[ONE, -ONE, -ONE, ONE]);
        assert_eq!(zz.matrix(), &expected);
    }

    #[test]
    fn kron_respects_size_limit() {
        let a = herm(DenseMatrix::identity(64));
        let b = herm(DenseMatrix::identity(128));
        let err = kron(&a, &b).unwrap_err();
        assert!(matches!(err, Error::Size { requested: 8192, limit: 4096, .. }));
        assert!(kron_bounded(&a, &b, 8192).is_ok());
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = DenseMatrix::from_rows(&[vec![ZERO, ONE], vec![ZERO, ZERO]]).unwrap();
        assert!(matches!(DenseHermitian::new(m), Err(Error::Contract(_))));
    }

    #[test]
    fn rejects_nan_entries() {
        let m = DenseMatrix::from_rows(&[vec![C64::new(f64::NAN, 0.0)]]);
        assert!(m.is_err());
    }

    #[test]
    fn hadamard_rotation_swaps_x_and_z() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let u = Unitary2([[C64::new(h, 0.0), C64::new(h, 0.0)], [C64::new(h, 0.0), C64::new(-h, 0.0)]]);
        let r = u.bloch_rotation();
        let expected = [[0.0, 0.0, 1.0], [0.0, -1.0, 0.0], [1.0, 0.0, 0.0]];
        for k in 0..3 {
            for l in 0..3 {
                assert!((r[k][l] - expected[k][l]).abs() < 1e-14);
            }
        }
    }
}
