//! Mermin–Klyshko Bell operators, the variant CHSH expression, and checks of
//! their operator identities.
//!
//! `B₂ = ½(XX + XY + YX − YY)` anchors the recursion
//! `Bₙ = Bₙ₋₁ ⊗ ½(X + Y) + B′ₙ₋₁ ⊗ ½(X − Y)`, where a prime exchanges X and Y
//! on every site. `Bₙ²` is the identity plus every even-weight product of σz,
//! and `Bₙ = 2^{(n−1)/2}(|GHZ₊⟩⟨GHZ₊| − |GHZ₋⟩⟨GHZ₋|)`.

use std::f64::consts::SQRT_2;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{check_dense_qubits, C64, DenseMatrix, DENSE_LIMIT_QUBITS, STRUCTURED_LIMIT_QUBITS};
use crate::pauli::{Pauli, PauliString, PauliSum};
use crate::spin::SpinObservable;
use crate::states::ghz_pm;

/// `Bₙ` together with its X↔Y exchanged partner `B′ₙ`.
#[derive(Clone, Debug, PartialEq)]
pub struct BellOperatorPair {
    pub n: usize,
    pub b: PauliSum,
    pub b_prime: PauliSum,
}

fn check_bell_n(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::domain(format!("Bell operators need n >= 2, got {n}")));
    }
    if n > STRUCTURED_LIMIT_QUBITS {
        return Err(Error::Size {
            what: "Bell operator qubit count",
            requested: n,
            limit: STRUCTURED_LIMIT_QUBITS,
        });
    }
    Ok(())
}

fn single_site(terms: &[(f64, Pauli)]) -> PauliSum {
    let mut s = PauliSum::zero(1);
    for &(c, p) in terms {
        s.add_term(PauliString::new(vec![p]), C64::new(c, 0.0))
            .expect("single site");
    }
    s
}

pub fn mk_bell(n: usize) -> Result<BellOperatorPair> {
    check_bell_n(n)?;
    let mut b = PauliSum::from_real(2, &[(0.5, "XX"), (0.5, "XY"), (0.5, "YX"), (-0.5, "YY")])?;
    let mut b_prime = b.swap_xy();
    let plus = single_site(&[(0.5, Pauli::X), (0.5, Pauli::Y)]);
    let minus = single_site(&[(0.5, Pauli::X), (-0.5, Pauli::Y)]);
    for _ in 3..=n {
        let next = b.tensor(&plus).add(&b_prime.tensor(&minus))?;
        b_prime = next.swap_xy();
        b = next;
    }
    Ok(BellOperatorPair { n, b, b_prime })
}

/// `Bₙ²` in closed form: identity plus all even-weight σz products.
pub fn mk_bell_squared(n: usize) -> Result<PauliSum> {
    check_bell_n(n)?;
    let mut s = PauliSum::zero(n);
    for mask in 0usize..1 << n {
        if mask.count_ones() % 2 == 0 {
            let sites: Vec<usize> = (0..n).filter(|j| mask >> (n - 1 - j) & 1 == 1).collect();
            s.add_term(PauliString::z_on(n, &sites), C64::new(1.0, 0.0))?;
        }
    }
    Ok(s)
}

/// `Bₙ + Bₙ²`.
pub fn variant_operator(n: usize) -> Result<PauliSum> {
    mk_bell(n)?.b.add(&mk_bell_squared(n)?)
}

/// The locally measurable form `Bₙ + Σ_{i<j} σzσz + Σ_{i<j<k<l} σzσzσzσz + …`,
/// whose separable bound is `2^{n−1} + constant`.
#[derive(Clone, Debug, PartialEq)]
pub struct VariantExpression {
    pub n: usize,
    pub correlator_part: PauliSum,
    /// Even-weight σz products of weight 2, 4, … (identity excluded).
    pub zpart: PauliSum,
    /// Offset relating this form to `Bₙ + Bₙ²`.
    pub constant: f64,
}

impl VariantExpression {
    pub fn local_operator(&self) -> Result<PauliSum> {
        self.correlator_part.add(&self.zpart)
    }

    /// `correlator_part + zpart + 1`, which equals `Bₙ + Bₙ²`.
    pub fn operator_form(&self) -> Result<PauliSum> {
        self.local_operator()?.add(&PauliSum::identity(self.n))
    }

    pub fn separable_bound(&self) -> f64 {
        2f64.powi(self.n as i32 - 1) + self.constant
    }

    pub fn entangled_bound(&self) -> f64 {
        2f64.powf((self.n as f64 - 1.0) / 2.0) + 2f64.powi(self.n as i32 - 1) + self.constant
    }
}

pub fn variant_expression(n: usize) -> Result<VariantExpression> {
    let correlator_part = mk_bell(n)?.b;
    let zpart = mk_bell_squared(n)?.sub(&PauliSum::identity(n))?;
    Ok(VariantExpression {
        n,
        correlator_part,
        zpart,
        constant: -1.0,
    })
}

/// Measurement settings `A, A′` on qubit 1 and `B, B′` on qubit 2.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ChshSettings {
    pub a: SpinObservable,
    pub a_prime: SpinObservable,
    pub b: SpinObservable,
    pub b_prime: SpinObservable,
}

impl ChshSettings {
    /// `A = B = σx`, `A′ = B′ = σy`.
    pub fn canonical() -> Self {
        Self {
            a: SpinObservable::X,
            a_prime: SpinObservable::Y,
            b: SpinObservable::X,
            b_prime: SpinObservable::Y,
        }
    }

    /// Every Bloch vector rotated by the same `R`.
    pub fn rotated(&self, r: &[[f64; 3]; 3]) -> Result<Self> {
        Ok(Self {
            a: self.a.rotated(r)?,
            a_prime: self.a_prime.rotated(r)?,
            b: self.b.rotated(r)?,
            b_prime: self.b_prime.rotated(r)?,
        })
    }
}

fn correlator(a: &SpinObservable, b: &SpinObservable, weight: f64) -> Result<PauliSum> {
    let mut s = PauliSum::zero(2);
    for (pa, ca) in a.components() {
        for (pb, cb) in b.components() {
            s.add_term(PauliString::new(vec![pa, pb]), C64::new(weight * ca * cb, 0.0))?;
        }
    }
    Ok(s)
}

/// `AB + AB′ + A′B − A′B′`.
pub fn chsh_expression(settings: &ChshSettings) -> Result<PauliSum> {
    let ChshSettings { a, a_prime, b, b_prime } = settings;
    correlator(a, b, 1.0)?
        .add(&correlator(a, b_prime, 1.0)?)?
        .add(&correlator(a_prime, b, 1.0)?)?
        .add(&correlator(a_prime, b_prime, -1.0)?)
}

/// `AB + AB′ + A′B − A′B′ + 2A″B″` with `A″ = A × A′`, `B″ = B × B′`.
pub fn variant_chsh_expression(settings: &ChshSettings) -> Result<PauliSum> {
    let a2 = settings.a.cross(&settings.a_prime)?;
    let b2 = settings.b.cross(&settings.b_prime)?;
    chsh_expression(settings)?.add(&correlator(&a2, &b2, 2.0)?)
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectralCheck {
    pub n: usize,
    /// Max-abs residual between `Bₙ` and its rank-2 GHZ form.
    pub residual: f64,
    pub passed: bool,
}

pub const SPECTRAL_TOL: f64 = 1e-12;

pub fn verify_spectral_decomposition(n: usize) -> Result<SpectralCheck> {
    check_bell_n(n)?;
    check_dense_qubits(n, DENSE_LIMIT_QUBITS)?;
    let dense = mk_bell(n)?.b.to_dense_matrix()?;
    let plus = ghz_pm(n, true)?;
    let minus = ghz_pm(n, false)?;
    let scale = C64::new(2f64.powf((n as f64 - 1.0) / 2.0), 0.0);
    let form = DenseMatrix::outer(plus.amps(), plus.amps())?
        .sub(&DenseMatrix::outer(minus.amps(), minus.amps())?)?
        .scale(scale);
    let residual = dense.max_abs_diff(&form)?;
    Ok(SpectralCheck {
        n,
        residual,
        passed: residual < SPECTRAL_TOL,
    })
}

/// Max coefficient difference between the Pauli-algebra square of `Bₙ` and
/// [`mk_bell_squared`].
pub fn square_identity_residual(n: usize) -> Result<f64> {
    let b = mk_bell(n)?.b;
    b.mul(&b)?.max_coeff_diff(&mk_bell_squared(n)?)
}

/// Operator families selectable by name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Expression {
    /// Two-qubit CHSH combination with canonical settings.
    Chsh,
    /// For two qubits the variant CHSH expression with canonical settings;
    /// for `n ≥ 3` the locally measurable form `Bₙ + Σ even σz products`.
    Variant,
    /// `Bₙ + Bₙ²`.
    VariantOp,
    Mk,
    MkSquared,
}

impl Expression {
    pub const ALL: [Expression; 5] = [
        Expression::Chsh,
        Expression::Variant,
        Expression::VariantOp,
        Expression::Mk,
        Expression::MkSquared,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Expression::Chsh => "chsh",
            Expression::Variant => "variant",
            Expression::VariantOp => "variant-op",
            Expression::Mk => "mk",
            Expression::MkSquared => "mk-squared",
        }
    }

    fn require_two(self, n: usize) -> Result<()> {
        if n != 2 {
            return Err(Error::domain(format!("`{}` is a two-qubit expression, got n = {n}", self.name())));
        }
        Ok(())
    }

    pub fn operator(self, n: usize) -> Result<PauliSum> {
        match self {
            Expression::Chsh => {
                self.require_two(n)?;
                chsh_expression(&ChshSettings::canonical())
            }
            Expression::Variant if n == 2 => variant_chsh_expression(&ChshSettings::canonical()),
            Expression::Variant => variant_expression(n)?.local_operator(),
            Expression::VariantOp => variant_operator(n),
            Expression::Mk => Ok(mk_bell(n)?.b),
            Expression::MkSquared => mk_bell_squared(n),
        }
    }

    /// Known maximum over separable states, where one is established.
    pub fn separable_bound(self, n: usize) -> Option<f64> {
        let half = 2f64.powi(n as i32 - 1);
        match self {
            Expression::Chsh => Some(2.0),
            Expression::Variant if n == 2 => Some(2.0),
            Expression::Variant => Some(half - 1.0),
            Expression::VariantOp | Expression::MkSquared => Some(half),
            Expression::Mk => None,
        }
    }

    /// Maximum over all quantum states.
    pub fn entangled_bound(self, n: usize) -> Option<f64> {
        let half = 2f64.powi(n as i32 - 1);
        let root = 2f64.powf((n as f64 - 1.0) / 2.0);
        match self {
            Expression::Chsh => Some(2.0 * SQRT_2),
            Expression::Variant if n == 2 => Some(2.0 * (1.0 + SQRT_2)),
            Expression::Variant => Some(root + half - 1.0),
            Expression::VariantOp => Some(root + half),
            Expression::Mk => Some(root),
            Expression::MkSquared => Some(half),
        }
    }

    /// Local-hidden-variable maximum, where one is established.
    pub fn lhv_bound(self, n: usize) -> Option<f64> {
        match self {
            Expression::Chsh => Some(2.0),
            Expression::Variant if n == 2 => Some(4.0),
            _ => None,
        }
    }
}

impl fmt::Display for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Expression {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Expression::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Expression::ALL.iter().map(|e| e.name()).collect();
                Error::Parse(format!("unknown expression {s:?}; expected one of {}", names.join(", ")))
            })
    }
}
