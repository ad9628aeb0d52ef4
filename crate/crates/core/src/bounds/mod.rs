//! Certification of separable, entangled and local-hidden-variable maxima.
//!
//! Separable states are convex mixtures of pure product states, and an
//! expectation value is linear in the state, so the separable maximum of any
//! observable is attained on a pure product state. [`separable_max`] therefore
//! searches product states only.

mod lhv;
mod separable;
mod witness;

use serde::Serialize;

pub use lhv::{lhv_max, LhvAssignment, LHV_MAX_QUBITS};
pub use separable::{separable_max, OptimizerConfig};
pub use witness::{ghz_scan, gisin_witness, GisinWitness, ScanRow, GISIN_MIN_THETA};

use crate::eigen::hermitian_eigen;
use crate::error::Result;
use crate::linalg::check_dense_qubits;
use crate::linalg::DENSE_LIMIT_QUBITS;
use crate::pauli::PauliSum;
use crate::state::StateVector;
use crate::states::ProductStateParams;

/// A value must exceed a bound by more than this to count as a violation.
pub const VIOLATION_SLACK: f64 = 1e-7;

pub fn violates(value: f64, bound: f64) -> bool {
    value > bound + VIOLATION_SLACK
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Argmax {
    Product { params: ProductStateParams },
    Eigenvector { index: usize, state: StateVector },
    Lhv { assignment: LhvAssignment },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub value: f64,
    pub argmax: Argmax,
    /// Analytic bound the search is compared against, if one is known.
    pub bound_reference: Option<f64>,
    /// `bound_reference − value`.
    pub gap: Option<f64>,
}

impl BoundReport {
    fn new(value: f64, argmax: Argmax) -> Self {
        Self {
            value,
            argmax,
            bound_reference: None,
            gap: None,
        }
    }

    pub fn with_reference(mut self, reference: Option<f64>) -> Self {
        self.bound_reference = reference;
        self.gap = reference.map(|r| r - self.value);
        self
    }
}

/// Largest eigenvalue of the dense operator, with its eigenvector.
pub fn entangled_max(op: &PauliSum) -> Result<BoundReport> {
    check_dense_qubits(op.n(), DENSE_LIMIT_QUBITS)?;
    let spectrum = hermitian_eigen(&op.to_dense()?)?;
    let index = spectrum.len() - 1;
    let state = StateVector::new(op.n(), spectrum.vector(index))?;
    Ok(BoundReport::new(
        spectrum.max_eigenvalue(),
        Argmax::Eigenvector { index, state },
    ))
}
