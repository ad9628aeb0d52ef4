//! Pure and mixed n-qubit states.
//!
//! Amplitudes are indexed by basis state with qubit 1 as the most significant
//! bit. The JSON form of a pure state is `{"n": int, "amps": [[re, im], ...]}`.

use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;
use serde_json::Value;

use crate::eigen::hermitian_eigen;
use crate::error::{Error, Result};
use crate::linalg::{check_finite, inner, C64, DenseHermitian, DenseMatrix, ZERO};

pub const NORM_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n: usize,
    amps: Vec<C64>,
}

impl StateVector {
    /// Wraps `amps` without normalizing. Length must be exactly `2^n`.
    pub fn new(n: usize, amps: Vec<C64>) -> Result<Self> {
        if n == 0 || n >= usize::BITS as usize {
            return Err(Error::domain(format!("qubit count {n} out of range")));
        }
        if amps.len() != 1 << n {
            return Err(Error::Shape {
                expected: 1 << n,
                got: amps.len(),
            });
        }
        check_finite(amps.iter().copied(), "state vector")?;
        Ok(Self { n, amps })
    }

    /// Normalizes `amps` to unit length.
    pub fn normalized(n: usize, amps: Vec<C64>) -> Result<Self> {
        let mut s = Self::new(n, amps)?;
        let norm = s.norm_sqr().sqrt();
        if norm == 0.0 {
            return Err(Error::contract("cannot normalize the zero vector"));
        }
        for a in &mut s.amps {
            *a /= norm;
        }
        Ok(s)
    }

    pub(crate) fn from_raw(n: usize, amps: Vec<C64>) -> Self {
        debug_assert_eq!(amps.len(), 1 << n);
        Self { n, amps }
    }

    pub fn basis(n: usize, index: usize) -> Result<Self> {
        let mut amps = vec![ZERO; 1usize.checked_shl(n as u32).unwrap_or(0)];
        if index >= amps.len() {
            return Err(Error::domain(format!("basis index {index} out of range for {n} qubits")));
        }
        amps[index] = C64::new(1.0, 0.0);
        Self::new(n, amps)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amps(&self) -> &[C64] {
        &self.amps
    }

    pub fn into_amps(self) -> Vec<C64> {
        self.amps
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm_sqr() - 1.0).abs() <= NORM_TOL
    }

    pub(crate) fn require_normalized(&self) -> Result<()> {
        if self.is_normalized() {
            Ok(())
        } else {
            Err(Error::contract(format!(
                "state is not normalized (squared norm {})",
                self.norm_sqr()
            )))
        }
    }

    pub fn inner(&self, other: &Self) -> C64 {
        inner(&self.amps, &other.amps)
    }

    /// `|⟨self|other⟩|²`.
    pub fn fidelity(&self, other: &Self) -> f64 {
        self.inner(other).norm_sqr()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `|self⟩ ⊗ |other⟩`.
    pub fn tensor(&self, other: &Self) -> Self {
        let amps = self
            .amps
            .iter()
            .flat_map(|a| other.amps.iter().map(move |b| a * b))
            .collect();
        Self::from_raw(self.n + other.n, amps)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("state serialization is infallible")
    }

    /// Parses the state JSON schema. Errors name the offending field.
    pub fn from_json(text: &str) -> Result<Self> {
        let value: Value =
            serde_json::from_str(text).map_err(|e| Error::schema("<document>", e.to_string()))?;
        let obj = value
            .as_object()
            .ok_or_else(|| Error::schema("<document>", "expected a JSON object"))?;
        let n = obj
            .get("n")
            .ok_or_else(|| Error::schema("n", "missing"))?
            .as_u64()
            .ok_or_else(|| Error::schema("n", "expected a non-negative integer"))?;
        if n == 0 || n > 30 {
            return Err(Error::schema("n", format!("qubit count {n} out of range 1..=30")));
        }
        let n = n as usize;
        let raw = obj
            .get("amps")
            .ok_or_else(|| Error::schema("amps", "missing"))?
            .as_array()
            .ok_or_else(|| Error::schema("amps", "expected an array"))?;
        if raw.len() != 1 << n {
            return Err(Error::schema(
                "amps",
                format!("expected {} amplitudes for n = {n}, found {}", 1usize << n, raw.len()),
            ));
        }
        let mut amps = Vec::with_capacity(raw.len());
        for (k, entry) in raw.iter().enumerate() {
            let field = format!("amps[{k}]");
            let pair = entry
                .as_array()
                .filter(|p| p.len() == 2)
                .ok_or_else(|| Error::schema(&field, "expected [re, im]"))?;
            let re = pair[0].as_f64().ok_or_else(|| Error::schema(&field, "re is not a number"))?;
            let im = pair[1].as_f64().ok_or_else(|| Error::schema(&field, "im is not a number"))?;
            amps.push(C64::new(re, im));
        }
        Self::new(n, amps)
    }
}

impl Serialize for StateVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let amps: Vec<[f64; 2]> = self.amps.iter().map(|a| [a.re, a.im]).collect();
        let mut st = serializer.serialize_struct("StateVector", 2)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("amps", &amps)?;
        st.end()
    }
}

/// Density matrix validated as Hermitian, unit-trace and positive semidefinite.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    n: usize,
    rho: DenseMatrix,
}

impl DensityMatrix {
    pub const TRACE_TOL: f64 = 1e-10;
    pub const PSD_TOL: f64 = 1e-10;

    pub fn new(n: usize, rho: DenseMatrix) -> Result<Self> {
        if rho.dim() != 1 << n {
            return Err(Error::Shape {
                expected: 1 << n,
                got: rho.dim(),
            });
        }
        let herm = DenseHermitian::new(rho)?;
        let trace = herm.matrix().trace().re;
        if (trace - 1.0).abs() > Self::TRACE_TOL {
            return Err(Error::contract(format!("density matrix trace is {trace}, expected 1")));
        }
        let spectrum = hermitian_eigen(&herm)?;
        if spectrum.min_eigenvalue() < -Self::PSD_TOL {
            return Err(Error::contract(format!(
                "density matrix has negative eigenvalue {}",
                spectrum.min_eigenvalue()
            )));
        }
        Ok(Self {
            n,
            rho: herm.into_matrix(),
        })
    }

    /// `|ψ⟩⟨ψ|` for a normalized state.
    pub fn from_pure(psi: &StateVector) -> Result<Self> {
        psi.require_normalized()?;
        let rho = DenseMatrix::outer(psi.amps(), psi.amps())?;
        Ok(Self { n: psi.n(), rho })
    }

    /// Convex combination `Σ w_k |ψ_k⟩⟨ψ_k|`.
    pub fn mixture(components: &[(f64, &StateVector)]) -> Result<Self> {
        let first = components.first().ok_or_else(|| Error::contract("empty mixture"))?;
        let n = first.1.n();
        let mut rho = DenseMatrix::zeros(1 << n);
        for (w, psi) in components {
            if *w < 0.0 {
                return Err(Error::contract("mixture weights must be non-negative"));
            }
            let term = DenseMatrix::outer(psi.amps(), psi.amps())?;
            rho = rho.add(&term.scale(C64::new(*w, 0.0)))?;
        }
        Self::new(n, rho)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &DenseMatrix {
        &self.rho
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn length_must_match() {
        assert!(matches!(
            StateVector::new(2, vec![ZERO; 3]),
            Err(Error::Shape { expected: 4, got: 3 })
        ));
    }

    #[test]
    fn json_roundtrip_is_exact() {
        let s = StateVector::normalized(
            2,
            vec![C64::new(0.1, 0.3), C64::new(-0.7, 1e-17), C64::new(1.0 / 3.0, 0.0), C64::new(0.0, -0.2)],
        )
        .unwrap();
        let back = StateVector::from_json(&s.to_json()).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn json_errors_name_the_field() {
        let err = StateVector::from_json(r#"{"amps": [[1,0],[0,0]]}"#).unwrap_err();
        assert_eq!(err, Error::schema("n", "missing"));
        let err = StateVector::from_json(r#"{"n": 1, "amps": [[1,0],[0]]}"#).unwrap_err();
        assert!(matches!(err, Error::Schema { ref field, .. } if field == "amps[1]"));
        let err = StateVector::from_json(r#"{"n": 2, "amps": [[1,0],[0,0]]}"#).unwrap_err();
        assert!(matches!(err, Error::Schema { ref field, .. } if field == "amps"));
        let err = StateVector::from_json(r#"{"n": -1, "amps": []}"#).unwrap_err();
        assert!(matches!(err, Error::Schema { ref field, .. } if field == "n"));
    }

    #[test]
    fn density_matrix_validation() {
        let plus = StateVector::normalized(1, vec![C64::new(1.0, 0.0), C64::new(1.0, 0.0)]).unwrap();
        let zero = StateVector::basis(1, 0).unwrap();
        assert!(DensityMatrix::mixture(&[(0.5, &plus), (0.5, &zero)]).is_ok());
        assert!(DensityMatrix::mixture(&[(0.7, &plus), (0.7, &zero)]).is_err());

        let not_psd = DenseMatrix::diagonal(&[C64::new(1.5, 0.0), C64::new(-0.5, 0.0)]);
        assert!(matches!(DensityMatrix::new(1, not_psd), Err(Error::Contract(_))));
    }
}
