//! Two-qubit Schmidt decomposition into `cos θ|00⟩ + e^{iπ/4} sin θ|11⟩`.
//!
//! The 2×2 amplitude matrix `M` (row = qubit 1, column = qubit 2) is split by a
//! closed-form SVD. The left singular vectors come from the eigenvectors of
//! `MM†`; the Schmidt angle is `½·atan2(2|det M|, λ₊ − λ₋)`, where the
//! eigenvalue gap `√((h₁₁ − h₂₂)² + 4|h₁₂|²)` is formed without cancellation.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{fix_phase, C64, Unitary2};
use crate::state::StateVector;
use crate::states::{apply_local_unitaries, GHZ_PHASE};

#[derive(Clone, Debug, Serialize)]
pub struct SchmidtForm {
    /// Schmidt angle in `[0, π/4]`; the state is entangled iff it is positive.
    pub theta: f64,
    #[serde(serialize_with = "ser_unitary")]
    pub u1: Unitary2,
    #[serde(serialize_with = "ser_unitary")]
    pub u2: Unitary2,
    pub canonical_state: StateVector,
}

impl SchmidtForm {
    /// `(U₁ ⊗ U₂)` applied to the canonical state.
    pub fn reconstruct(&self) -> StateVector {
        apply_local_unitaries(&self.canonical_state, &self.u1, &self.u2).expect("two-qubit state")
    }
}

/// `cos θ|00⟩ + e^{iπ/4} sin θ|11⟩`.
pub fn canonical_two_qubit(theta: f64) -> StateVector {
    let zero = C64::new(0.0, 0.0);
    StateVector::new(
        2,
        vec![C64::new(theta.cos(), 0.0), zero, zero, GHZ_PHASE * theta.sin()],
    )
    .expect("four finite amplitudes")
}

pub fn schmidt_decompose(psi: &StateVector) -> Result<SchmidtForm> {
    if psi.n() != 2 {
        return Err(Error::Shape {
            expected: 2,
            got: psi.n(),
        });
    }
    psi.require_normalized()?;
    let a = psi.amps();
    let m = [[a[0], a[1]], [a[2], a[3]]];

    let h11 = m[0][0].norm_sqr() + m[0][1].norm_sqr();
    let h22 = m[1][0].norm_sqr() + m[1][1].norm_sqr();
    let h12 = m[0][0] * m[1][0].conj() + m[0][1] * m[1][1].conj();
    let gap = ((h11 - h22).powi(2) + 4.0 * h12.norm_sqr()).sqrt();
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let theta = 0.5 * (2.0 * det.norm()).atan2(gap);

    // Leading left singular vector: eigenvector of MM† for λ₊.
    let mut w1 = if h11 >= h22 {
        [C64::new(0.5 * (h11 - h22 + gap), 0.0), h12.conj()]
    } else {
        [h12, C64::new(0.5 * (h22 - h11 + gap), 0.0)]
    };
    if w1[0].norm_sqr() + w1[1].norm_sqr() == 0.0 {
        // MM† is a multiple of the identity.
        w1 = [C64::new(1.0, 0.0), C64::new(0.0, 0.0)];
    }
    normalize2(&mut w1);
    fix_phase(&mut w1, 0.0);
    let w2 = complement(w1);

    // ψ = |w1⟩|y1⟩ + |w2⟩|y2⟩ with y_k = Mᵀ w̄_k.
    let project = |w: [C64; 2]| -> [C64; 2] {
        [
            w[0].conj() * m[0][0] + w[1].conj() * m[1][0],
            w[0].conj() * m[0][1] + w[1].conj() * m[1][1],
        ]
    };
    let mut y1 = project(w1);
    let y2 = project(w2);
    normalize2(&mut y1);

    let c = complement(y1);
    let overlap = c[0].conj() * y2[0] + c[1].conj() * y2[1];
    let col1 = if overlap.norm() > 1e-300 {
        let ph = overlap / overlap.norm();
        [c[0] * ph, c[1] * ph]
    } else {
        c
    };
    let u1 = Unitary2::from_columns(w1, w2);
    let u2 = Unitary2::from_columns(y1, [col1[0] * GHZ_PHASE.conj(), col1[1] * GHZ_PHASE.conj()]);

    Ok(SchmidtForm {
        theta,
        u1,
        u2,
        canonical_state: canonical_two_qubit(theta),
    })
}

fn normalize2(v: &mut [C64; 2]) {
    let n = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
    v[0] /= n;
    v[1] /= n;
}

/// Unit vector orthogonal to the unit vector `v`.
fn complement(v: [C64; 2]) -> [C64; 2] {
    [-v[1].conj(), v[0].conj()]
}

fn ser_unitary<S: serde::Serializer>(u: &Unitary2, s: S) -> std::result::Result<S::Ok, S::Error> {
    let rows: Vec<Vec<[f64; 2]>> = u
        .0
        .iter()
        .map(|row| row.iter().map(|c| [c.re, c.im]).collect())
        .collect();
    serde::Serialize::serialize(&rows, s)
}
