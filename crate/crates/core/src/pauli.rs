//! Pauli strings and weighted sums of them.
//!
//! Site `j` of a string (0-based, left to right) acts on qubit `j + 1`, which
//! is bit `n - 1 - j` of a basis index.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::{
    check_dense_qubits, format_f64, C64, DenseHermitian, DenseMatrix, DENSE_LIMIT_QUBITS, I, ONE, STRUCTURED_LIMIT_QUBITS, ZERO,
};
use crate::state::{DensityMatrix, StateVector};

/// Coefficients with modulus below this are dropped from a [`PauliSum`].
pub const PRUNE_TOL: f64 = 1e-15;
/// Imaginary parts allowed on coefficients of a sum treated as Hermitian.
pub const HERMITIAN_COEFF_TOL: f64 = 1e-12;
/// Imaginary residue of an expectation value that is silently discarded.
pub const IMAG_RESIDUE_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    pub fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }

    /// `self · other = phase · letter`.
    pub fn mul(self, other: Pauli) -> (C64, Pauli) {
        use Pauli::*;
        match (self, other) {
            (I, p) | (p, I) => (ONE, p),
            (a, b) if a == b => (ONE, I),
            (X, Y) => (I_PHASE, Z),
            (Y, Z) => (I_PHASE, X),
            (Z, X) => (I_PHASE, Y),
            (Y, X) => (-I_PHASE, Z),
            (Z, Y) => (-I_PHASE, X),
            (X, Z) => (-I_PHASE, Y),
            _ => unreachable!(),
        }
    }

    pub fn swap_xy(self) -> Pauli {
        match self {
            Pauli::X => Pauli::Y,
            Pauli::Y => Pauli::X,
            p => p,
        }
    }

    pub fn matrix(self) -> DenseMatrix {
        let m = match self {
            Pauli::I => vec![ONE, ZERO, ZERO, ONE],
            Pauli::X => vec![ZERO, ONE, ONE, ZERO],
            Pauli::Y => vec![ZERO, -I, I, ZERO],
            Pauli::Z => vec![ONE, ZERO, ZERO, -ONE],
        };
        DenseMatrix::from_raw(2, m)
    }

    /// Index into a Bloch vector `(x, y, z)`; `None` for the identity.
    pub fn axis(self) -> Option<usize> {
        match self {
            Pauli::I => None,
            Pauli::X => Some(0),
            Pauli::Y => Some(1),
            Pauli::Z => Some(2),
        }
    }
}

const I_PHASE: C64 = I;

/// A tensor product of single-site Pauli letters. Orders lexicographically
/// with `I < X < Y < Z`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PauliString(Vec<Pauli>);

/// Bit masks describing how a string acts on computational basis states.
#[derive(Clone, Copy, Debug)]
pub(crate) struct StringAction {
    /// Bits flipped by X or Y.
    pub flip: usize,
    /// Bits whose value contributes a sign (Y or Z).
    pub sign: usize,
    /// `i^{#Y}`.
    pub phase: C64,
}

impl StringAction {
    /// `P|b⟩ = coeff(b) |b ^ flip⟩`.
    #[inline]
    pub fn coeff(&self, b: usize) -> C64 {
        if (b & self.sign).count_ones() % 2 == 0 {
            self.phase
        } else {
            -self.phase
        }
    }
}

impl PauliString {
    pub fn new(letters: Vec<Pauli>) -> Self {
        Self(letters)
    }

    pub fn identity(n: usize) -> Self {
        Self(vec![Pauli::I; n])
    }

    /// Product of `σz` on the given 0-based sites.
    pub fn z_on(n: usize, sites: &[usize]) -> Self {
        let mut letters = vec![Pauli::I; n];
        for &s in sites {
            letters[s] = Pauli::Z;
        }
        Self(letters)
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn letters(&self) -> &[Pauli] {
        &self.0
    }

    pub fn weight(&self) -> usize {
        self.0.iter().filter(|p| **p != Pauli::I).count()
    }

    pub fn is_identity(&self) -> bool {
        self.weight() == 0
    }

    /// `self · other = phase · string`.
    pub fn mul(&self, other: &PauliString) -> Result<(C64, PauliString)> {
        self.same_n(other.n())?;
        let mut phase = ONE;
        let letters = self
            .0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| {
                let (ph, p) = a.mul(*b);
                phase *= ph;
                p
            })
            .collect();
        Ok((phase, PauliString(letters)))
    }

    pub fn swap_xy(&self) -> PauliString {
        PauliString(self.0.iter().map(|p| p.swap_xy()).collect())
    }

    /// Concatenation, i.e. `self ⊗ other`.
    pub fn tensor(&self, other: &PauliString) -> PauliString {
        PauliString(self.0.iter().chain(&other.0).copied().collect())
    }

    pub(crate) fn action(&self) -> StringAction {
        let n = self.n();
        let (mut flip, mut sign, mut ys) = (0usize, 0usize, 0u32);
        for (j, p) in self.0.iter().enumerate() {
            let bit = 1usize << (n - 1 - j);
            match p {
                Pauli::I => {}
                Pauli::X => flip |= bit,
                Pauli::Y => {
                    flip |= bit;
                    sign |= bit;
                    ys += 1;
                }
                Pauli::Z => sign |= bit,
            }
        }
        let phase = [ONE, I, -ONE, -I][(ys % 4) as usize];
        StringAction { flip, sign, phase }
    }

    /// `s · v` without building a matrix.
    pub fn apply(&self, v: &StateVector) -> Result<StateVector> {
        self.same_n(v.n())?;
        check_structured(v.n())?;
        let act = self.action();
        let amps = v.amps();
        let mut out = vec![ZERO; amps.len()];
        for (b, a) in amps.iter().enumerate() {
            out[b ^ act.flip] = act.coeff(b) * a;
        }
        Ok(StateVector::from_raw(v.n(), out))
    }

    /// `⟨v|s|v⟩`, possibly complex for unnormalized or general inputs.
    pub(crate) fn expectation_raw(&self, v: &[C64]) -> C64 {
        let act = self.action();
        v.iter()
            .enumerate()
            .filter(|(_, a)| **a != ZERO)
            .map(|(b, a)| v[b ^ act.flip].conj() * act.coeff(b) * a)
            .sum()
    }

    pub fn to_dense(&self) -> Result<DenseHermitian> {
        self.to_dense_bounded(DENSE_LIMIT_QUBITS)
    }

    pub fn to_dense_bounded(&self, max_qubits: usize) -> Result<DenseHermitian> {
        check_dense_qubits(self.n(), max_qubits)?;
        let dim = 1usize << self.n();
        let act = self.action();
        let mut m = DenseMatrix::zeros(dim);
        for b in 0..dim {
            m[(b ^ act.flip, b)] = act.coeff(b);
        }
        Ok(DenseHermitian::new_unchecked(m))
    }

    fn same_n(&self, n: usize) -> Result<()> {
        if self.n() != n {
            return Err(Error::Shape {
                expected: self.n(),
                got: n,
            });
        }
        Ok(())
    }
}

pub fn apply_string(s: &PauliString, v: &StateVector) -> Result<StateVector> {
    s.apply(v)
}

pub fn pauli_string_to_dense(s: &PauliString) -> Result<DenseHermitian> {
    s.to_dense()
}

fn check_structured(n: usize) -> Result<()> {
    if n > STRUCTURED_LIMIT_QUBITS {
        return Err(Error::Size {
            what: "structured qubit count",
            requested: n,
            limit: STRUCTURED_LIMIT_QUBITS,
        });
    }
    Ok(())
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.0 {
            write!(f, "{}", p.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::Parse("empty Pauli string".into()));
        }
        s.chars()
            .map(|c| Pauli::from_char(c).ok_or_else(|| Error::Parse(format!("invalid Pauli letter {c:?} in {s:?}"))))
            .collect::<Result<Vec<_>>>()
            .map(PauliString)
    }
}

/// Weighted sum of n-site Pauli strings, kept in canonical (sorted, pruned) form.
#[derive(Clone, Debug, PartialEq)]
pub struct PauliSum {
    n: usize,
    terms: BTreeMap<PauliString, C64>,
}

impl PauliSum {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut s = Self::zero(n);
        s.terms.insert(PauliString::identity(n), ONE);
        s
    }

    pub fn from_terms<I>(n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (PauliString, C64)>,
    {
        let mut s = Self::zero(n);
        for (p, c) in terms {
            s.add_term(p, c)?;
        }
        Ok(s)
    }

    /// Builds a real-coefficient sum from `(coeff, "letters")` pairs.
    pub fn from_real(n: usize, terms: &[(f64, &str)]) -> Result<Self> {
        let parsed = terms
            .iter()
            .map(|(c, s)| Ok((s.parse::<PauliString>()?, C64::new(*c, 0.0))))
            .collect::<Result<Vec<_>>>()?;
        Self::from_terms(n, parsed)
    }

    pub fn single(p: PauliString, c: C64) -> Self {
        let mut s = Self::zero(p.n());
        s.add_term(p, c).expect("qubit count matches by construction");
        s
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PauliString, &C64)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, p: &PauliString) -> C64 {
        self.terms.get(p).copied().unwrap_or(ZERO)
    }

    pub fn add_term(&mut self, p: PauliString, c: C64) -> Result<()> {
        if p.n() != self.n {
            return Err(Error::Shape {
                expected: self.n,
                got: p.n(),
            });
        }
        if !(c.re.is_finite() && c.im.is_finite()) {
            return Err(Error::contract("non-finite Pauli coefficient"));
        }
        let entry = self.terms.entry(p.clone()).or_insert(ZERO);
        *entry += c;
        if entry.norm() < PRUNE_TOL {
            self.terms.remove(&p);
        }
        Ok(())
    }

    pub fn add(&self, other: &PauliSum) -> Result<PauliSum> {
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), *c)?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &PauliSum) -> Result<PauliSum> {
        self.add(&other.scale(-ONE))
    }

    pub fn scale(&self, s: C64) -> PauliSum {
        let mut out = Self::zero(self.n);
        for (p, c) in &self.terms {
            out.add_term(p.clone(), c * s).expect("same qubit count");
        }
        out
    }

    pub fn scale_real(&self, s: f64) -> PauliSum {
        self.scale(C64::new(s, 0.0))
    }

    /// Operator product using the single-site multiplication table.
    pub fn mul(&self, other: &PauliSum) -> Result<PauliSum> {
        if self.n != other.n {
            return Err(Error::Shape {
                expected: self.n,
                got: other.n,
            });
        }
        let mut out = Self::zero(self.n);
        for (p, a) in &self.terms {
            for (q, b) in &other.terms {
                let (phase, r) = p.mul(q)?;
                *out.terms.entry(r).or_insert(ZERO) += phase * a * b;
            }
        }
        out.prune();
        Ok(out)
    }

    /// `self ⊗ other` on `n + m` sites.
    pub fn tensor(&self, other: &PauliSum) -> PauliSum {
        let mut out = Self::zero(self.n + other.n);
        for (p, a) in &self.terms {
            for (q, b) in &other.terms {
                *out.terms.entry(p.tensor(q)).or_insert(ZERO) += a * b;
            }
        }
        out.prune();
        out
    }

    /// Exchanges X and Y on every site of every term.
    pub fn swap_xy(&self) -> PauliSum {
        PauliSum {
            n: self.n,
            terms: self.terms.iter().map(|(p, c)| (p.swap_xy(), *c)).collect(),
        }
    }

    pub fn is_hermitian(&self) -> bool {
        self.terms.values().all(|c| c.im.abs() <= HERMITIAN_COEFF_TOL)
    }

    pub(crate) fn require_hermitian(&self) -> Result<()> {
        if self.is_hermitian() {
            Ok(())
        } else {
            Err(Error::contract("Pauli sum has non-real coefficients (operator is not Hermitian)"))
        }
    }

    /// Largest coefficient difference over the union of both term sets.
    pub fn max_coeff_diff(&self, other: &PauliSum) -> Result<f64> {
        if self.n != other.n {
            return Err(Error::Shape {
                expected: self.n,
                got: other.n,
            });
        }
        let keys = self.terms.keys().chain(other.terms.keys());
        Ok(keys
            .map(|k| (self.coefficient(k) - other.coefficient(k)).norm())
            .fold(0.0, f64::max))
    }

    /// Dense `2^n × 2^n` matrix (general, possibly non-Hermitian).
    pub fn to_dense_matrix(&self) -> Result<DenseMatrix> {
        check_dense_qubits(self.n, DENSE_LIMIT_QUBITS)?;
        let dim = 1usize << self.n;
        let mut m = DenseMatrix::zeros(dim);
        for (p, c) in &self.terms {
            let act = p.action();
            for b in 0..dim {
                m[(b ^ act.flip, b)] += c * act.coeff(b);
            }
        }
        Ok(m)
    }

    pub fn to_dense(&self) -> Result<DenseHermitian> {
        self.require_hermitian()?;
        DenseHermitian::new(self.to_dense_matrix()?)
    }

    /// Applies the sum to a state vector without building a matrix.
    pub fn apply(&self, v: &StateVector) -> Result<StateVector> {
        if v.n() != self.n {
            return Err(Error::Shape {
                expected: self.n,
                got: v.n(),
            });
        }
        check_structured(self.n)?;
        let amps = v.amps();
        let mut out = vec![ZERO; amps.len()];
        for (p, c) in &self.terms {
            let act = p.action();
            for (b, a) in amps.iter().enumerate() {
                out[b ^ act.flip] += c * act.coeff(b) * a;
            }
        }
        Ok(StateVector::from_raw(self.n, out))
    }

    /// Text form: one `<coeff> <letters>` line per term in canonical order.
    pub fn to_text(&self) -> Result<String> {
        self.require_hermitian()?;
        let mut out = String::new();
        for (p, c) in &self.terms {
            out.push_str(&format!("{} {}\n", format_f64(c.re), p));
        }
        Ok(out)
    }

    pub fn from_text(text: &str) -> Result<PauliSum> {
        let mut n = None;
        let mut terms = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut parts = line.split_whitespace();
            let (Some(coeff), Some(letters), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(Error::Parse(format!("line {}: expected `<coeff> <letters>`", lineno + 1)));
            };
            let c: f64 = coeff
                .parse()
                .map_err(|_| Error::Parse(format!("line {}: bad coefficient {coeff:?}", lineno + 1)))?;
            let p: PauliString = letters.parse()?;
            match n {
                None => n = Some(p.n()),
                Some(k) if k != p.n() => {
                    return Err(Error::Parse(format!(
                        "line {}: string {letters} has {} sites, expected {k}",
                        lineno + 1,
                        p.n()
                    )))
                }
                _ => {}
            }
            terms.push((p, C64::new(c, 0.0)));
        }
        let n = n.ok_or_else(|| Error::Parse("no terms".into()))?;
        PauliSum::from_terms(n, terms)
    }

    fn prune(&mut self) {
        self.terms.retain(|_, c| c.norm() >= PRUNE_TOL);
    }
}

/// A state argument for [`expectation_sum`].
#[derive(Clone, Copy, Debug)]
pub enum StateRef<'a> {
    Pure(&'a StateVector),
    Mixed(&'a DensityMatrix),
}

impl<'a> From<&'a StateVector> for StateRef<'a> {
    fn from(s: &'a StateVector) -> Self {
        StateRef::Pure(s)
    }
}

impl<'a> From<&'a DensityMatrix> for StateRef<'a> {
    fn from(s: &'a DensityMatrix) -> Self {
        StateRef::Mixed(s)
    }
}

/// Real expectation value of a Hermitian Pauli sum.
pub fn expectation_sum<'a>(p: &PauliSum, state: impl Into<StateRef<'a>>) -> Result<f64> {
    p.require_hermitian()?;
    let value = match state.into() {
        StateRef::Pure(v) => {
            if v.n() != p.n() {
                return Err(Error::Shape {
                    expected: p.n(),
                    got: v.n(),
                });
            }
            check_structured(v.n())?;
            p.iter().map(|(s, c)| c * s.expectation_raw(v.amps())).sum::<C64>()
        }
        StateRef::Mixed(rho) => {
            if rho.n() != p.n() {
                return Err(Error::Shape {
                    expected: p.n(),
                    got: rho.n(),
                });
            }
            let m = rho.matrix();
            let dim = m.dim();
            // Tr(ρP) = Σ_b P[b^f, b] ρ[b, b^f]
            p.iter()
                .map(|(s, c)| {
                    let act = s.action();
                    c * (0..dim).map(|b| act.coeff(b) * m[(b, b ^ act.flip)]).sum::<C64>()
                })
                .sum::<C64>()
        }
    };
    if value.im.abs() >= IMAG_RESIDUE_TOL {
        return Err(Error::Numerical(format!(
            "expectation has imaginary residue {:e}",
            value.im
        )));
    }
    Ok(value.re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{kron, DenseHermitian};
    use std::f64::consts::FRAC_1_SQRT_2;

    fn ps(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn string_dense_examples() {
        let zi = ps("ZI").to_dense().unwrap();
        assert_eq!(zi.matrix(), &DenseMatrix::diagonal(&[ONE, ONE, -ONE, -ONE]));
        let xx = ps("XX").to_dense().unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let expected = if i + j == 3 { ONE } else { ZERO };
                assert_eq!(xx[(i, j)], expected);
            }
        }
        let y = ps("Y").to_dense().unwrap();
        assert_eq!(y.matrix(), &DenseMatrix::from_rows(&[vec![ZERO, -I], vec![I, ZERO]]).unwrap());
    }

    #[test]
    fn dense_matches_kron_chain() {
        for s in ["XYZ", "ZIY", "YYX", "IZI"] {
            let p = ps(s);
            let mut m = DenseHermitian::new(p.letters()[0].matrix()).unwrap();
            for l in &p.letters()[1..] {
                m = kron(&m, &DenseHermitian::new(l.matrix()).unwrap()).unwrap();
            }
            assert_eq!(p.to_dense().unwrap(), m, "{s}");
        }
    }

    #[test]
    fn apply_examples() {
        let v01 = StateVector::basis(2, 0b01).unwrap();
        let out = ps("XZ").apply(&v01).unwrap();
        assert_eq!(out.amps(), &[ZERO, ZERO, ZERO, -ONE]);

        let v = StateVector::normalized(2, vec![c(0.3, 0.1), c(-0.2, 0.5), ONE, c(0.0, 0.7)]).unwrap();
        assert_eq!(ps("II").apply(&v).unwrap(), v);

        let bell = StateVector::new(2, vec![c(FRAC_1_SQRT_2, 0.0), ZERO, ZERO, c(FRAC_1_SQRT_2, 0.0)]).unwrap();
        assert_eq!(ps("ZZ").apply(&bell).unwrap(), bell);
    }

    #[test]
    fn apply_rejects_mismatched_size() {
        let v = StateVector::basis(3, 0).unwrap();
        assert!(matches!(ps("XX").apply(&v), Err(Error::Shape { .. })));
    }

    #[test]
    fn multiplication_table_is_closed() {
        for a in Pauli::ALL {
            for b in Pauli::ALL {
                let (phase, p) = a.mul(b);
                let lhs = a.matrix().matmul(&b.matrix()).unwrap();
                let rhs = p.matrix().scale(phase);
                assert_eq!(lhs, rhs, "{a:?}{b:?}");
            }
        }
    }

    #[test]
    fn expectation_examples() {
        let p = PauliSum::from_real(2, &[(1.0, "II"), (1.0, "ZZ")]).unwrap();
        let v00 = StateVector::basis(2, 0).unwrap();
        assert_eq!(expectation_sum(&p, &v00).unwrap(), 2.0);
    }

    #[test]
    fn expectation_rejects_non_hermitian() {
        let p = PauliSum::single(ps("X"), c(0.0, 1.0));
        let v = StateVector::basis(1, 0).unwrap();
        assert!(matches!(expectation_sum(&p, &v), Err(Error::Contract(_))));
    }

    #[test]
    fn pruning_removes_cancelled_terms() {
        let mut s = PauliSum::from_real(2, &[(0.5, "XY"), (1.0, "ZZ")]).unwrap();
        s.add_term(ps("XY"), c(-0.5, 0.0)).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.coefficient(&ps("XY")), ZERO);
        let tiny = PauliSum::from_real(1, &[(1e-16, "X")]).unwrap();
        assert!(tiny.is_empty());
    }

    #[test]
    fn text_roundtrip() {
        let s = PauliSum::from_real(3, &[(0.5, "XXY"), (-0.5, "YYY"), (0.1, "IZZ")]).unwrap();
        let text = s.to_text().unwrap();
        assert_eq!(text, "0.1 IZZ\n0.5 XXY\n-0.5 YYY\n");
        assert_eq!(PauliSum::from_text(&text).unwrap(), s);
        assert!(PauliSum::from_text("0.5 XX\n1 XYZ\n").is_err());
        assert!(PauliSum::from_text("0.5 XQ\n").is_err());
    }
}
