use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{pauli_matrices, C64, DenseMatrix};
use crate::pauli::Pauli;

pub const UNIT_TOL: f64 = 1e-10;
pub const ORTHOGONAL_TOL: f64 = 1e-10;

/// Single-qubit observable `a·σ` for a unit Bloch vector `a`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SpinObservable {
    bloch: [f64; 3],
}

impl SpinObservable {
    pub const X: SpinObservable = SpinObservable { bloch: [1.0, 0.0, 0.0] };
    pub const Y: SpinObservable = SpinObservable { bloch: [0.0, 1.0, 0.0] };
    pub const Z: SpinObservable = SpinObservable { bloch: [0.0, 0.0, 1.0] };

    pub fn new(a: [f64; 3]) -> Result<Self> {
        if a.iter().any(|x| !x.is_finite()) {
            return Err(Error::contract("Bloch vector has a non-finite component"));
        }
        let norm = dot(a, a).sqrt();
        if (norm - 1.0).abs() > UNIT_TOL {
            return Err(Error::contract(format!("Bloch vector must be a unit vector, |a| = {norm}")));
        }
        Ok(Self { bloch: a })
    }

    pub fn bloch(&self) -> [f64; 3] {
        self.bloch
    }

    /// `(σx, σy, σz)` paired with the Bloch components, zeros included.
    pub fn components(&self) -> [(Pauli, f64); 3] {
        [
            (Pauli::X, self.bloch[0]),
            (Pauli::Y, self.bloch[1]),
            (Pauli::Z, self.bloch[2]),
        ]
    }

    pub fn matrix(&self) -> DenseMatrix {
        let [x, y, z] = pauli_matrices();
        let [ax, ay, az] = self.bloch;
        x.scale(C64::new(ax, 0.0))
            .add(&y.scale(C64::new(ay, 0.0)))
            .and_then(|m| m.add(&z.scale(C64::new(az, 0.0))))
            .expect("2x2 sums")
    }

    /// Observable for `a × a′`; requires `a ⊥ a′`.
    pub fn cross(&self, other: &SpinObservable) -> Result<SpinObservable> {
        let d = dot(self.bloch, other.bloch);
        if d.abs() > ORTHOGONAL_TOL {
            return Err(Error::contract(format!(
                "cross product observable requires orthogonal settings (A ⊥ A'), a·a' = {d}"
            )));
        }
        let [a1, a2, a3] = self.bloch;
        let [b1, b2, b3] = other.bloch;
        let c = [a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1];
        // |a × a'| = 1 up to the orthogonality slack; renormalize away that slack.
        let norm = dot(c, c).sqrt();
        SpinObservable::new([c[0] / norm, c[1] / norm, c[2] / norm])
    }

    /// `R a` for a rotation matrix `R`.
    pub fn rotated(&self, r: &[[f64; 3]; 3]) -> Result<SpinObservable> {
        let a = self.bloch;
        let v = [dot(r[0], a), dot(r[1], a), dot(r[2], a)];
        SpinObservable::new(v)
    }

    pub fn dot(&self, other: &SpinObservable) -> f64 {
        dot(self.bloch, other.bloch)
    }
}

pub fn spin_observable(a: [f64; 3]) -> Result<SpinObservable> {
    SpinObservable::new(a)
}

pub fn cross_observable(a: &SpinObservable, a2: &SpinObservable) -> Result<SpinObservable> {
    a.cross(a2)
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}
