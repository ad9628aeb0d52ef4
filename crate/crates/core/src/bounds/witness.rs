//! GHZ-family violation scan and the two-qubit Gisin-type witness.

use std::f64::consts::{FRAC_PI_4, SQRT_2};

use serde::Serialize;

use super::violates;
use crate::bell::{variant_chsh_expression, variant_operator, ChshSettings};
use crate::error::{Error, Result};
use crate::pauli::expectation_sum;
use crate::schmidt::schmidt_decompose;
use crate::state::StateVector;
use crate::states::ghz_general;

/// States whose Schmidt angle is at or below this are treated as product states.
pub const GISIN_MIN_THETA: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ScanRow {
    pub theta: f64,
    pub measured: f64,
    pub analytic: f64,
    pub separable_bound: f64,
}

/// `⟨Bₙ + Bₙ²⟩` on `cos θ|0ⁿ⟩ + e^{i(n−1)π/4} sin θ|1ⁿ⟩` over a uniform grid on
/// `[0, π/4]`, next to `2^{(n−1)/2} sin 2θ + 2^{n−1}`.
pub fn ghz_scan(n: usize, theta_steps: usize) -> Result<Vec<ScanRow>> {
    if n < 2 {
        return Err(Error::domain(format!("GHZ scan needs n >= 2, got {n}")));
    }
    if theta_steps < 2 {
        return Err(Error::domain(format!("theta_steps must be at least 2, got {theta_steps}")));
    }
    let op = variant_operator(n)?;
    let root = 2f64.powf((n as f64 - 1.0) / 2.0);
    let separable_bound = 2f64.powi(n as i32 - 1);
    (0..theta_steps)
        .map(|k| {
            let theta = FRAC_PI_4 * (k as f64 / (theta_steps - 1) as f64);
            let state = ghz_general(n, theta)?.state;
            Ok(ScanRow {
                theta,
                measured: expectation_sum(&op, &state)?,
                analytic: root * (2.0 * theta).sin() + separable_bound,
                separable_bound,
            })
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct GisinWitness {
    pub theta: f64,
    pub settings: ChshSettings,
    /// `⟨AB + AB′ + A′B − A′B′ + 2A″B″⟩`; separable bound 2, quantum maximum `2(1 + √2)`.
    pub chsh_variant_value: f64,
    /// The same measurement in `⟨B + B²⟩` normalization, `(chsh_variant_value + 2) / 2`;
    /// separable bound 2, quantum maximum `2 + √2`.
    pub operator_value: f64,
    /// `√2 sin 2θ + 2` from the Schmidt angle alone.
    pub predicted_operator_value: f64,
    pub violates_separable_bound: bool,
}

/// Settings on which an entangled two-qubit pure state beats the separable
/// bound of the variant CHSH expression.
///
/// The canonical settings `A = B = σx`, `A′ = B′ = σy` are optimal for
/// `cos θ|00⟩ + e^{iπ/4} sin θ|11⟩`; for a general state they are carried
/// over by the local unitaries of its Schmidt form, `A = U₁σxU₁†` and so on.
pub fn gisin_witness(psi: &StateVector) -> Result<GisinWitness> {
    let form = schmidt_decompose(psi)?;
    if form.theta <= GISIN_MIN_THETA {
        return Err(Error::NotEntangled {
            theta: form.theta,
            threshold: GISIN_MIN_THETA,
        });
    }
    let r1 = form.u1.bloch_rotation();
    let r2 = form.u2.bloch_rotation();
    let canonical = ChshSettings::canonical();
    let settings = ChshSettings {
        a: canonical.a.rotated(&r1)?,
        a_prime: canonical.a_prime.rotated(&r1)?,
        b: canonical.b.rotated(&r2)?,
        b_prime: canonical.b_prime.rotated(&r2)?,
    };
    let chsh_variant_value = expectation_sum(&variant_chsh_expression(&settings)?, psi)?;
    let operator_value = 0.5 * (chsh_variant_value + 2.0);
    Ok(GisinWitness {
        theta: form.theta,
        settings,
        chsh_variant_value,
        operator_value,
        predicted_operator_value: SQRT_2 * (2.0 * form.theta).sin() + 2.0,
        violates_separable_bound: violates(chsh_variant_value, 2.0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::C64;
    use crate::schmidt::canonical_two_qubit;

    #[test]
    fn scan_examples() {
        let rows = ghz_scan(2, 181).unwrap();
        assert_eq!(rows.len(), 181);
        let last = rows.last().unwrap();
        assert_eq!(last.theta, FRAC_PI_4);
        assert!((last.measured - (SQRT_2 + 2.0)).abs() < 1e-12);

        // θ = π/6 sits on the 7-point grid at k = 4.
        let rows = ghz_scan(3, 7).unwrap();
        assert!((rows[4].theta - std::f64::consts::PI / 6.0).abs() < 1e-15);
        assert!((rows[4].measured - (3f64.sqrt() + 4.0)).abs() < 1e-12);
        assert!((rows[4].measured - 5.7320508).abs() < 1e-7);

        for n in 2..=5 {
            let first = ghz_scan(n, 2).unwrap()[0];
            assert_eq!(first.measured, 2f64.powi(n as i32 - 1));
            assert!(!violates(first.measured, first.separable_bound));
        }
    }

    #[test]
    fn scan_rejects_bad_arguments() {
        assert!(ghz_scan(1, 10).is_err());
        assert!(ghz_scan(3, 1).is_err());
    }

    #[test]
    fn witness_examples() {
        let w = gisin_witness(&canonical_two_qubit(FRAC_PI_4)).unwrap();
        assert!((w.operator_value - (SQRT_2 + 2.0)).abs() < 1e-12);
        assert!((w.chsh_variant_value - 2.0 * (1.0 + SQRT_2)).abs() < 1e-12);
        assert!(w.violates_separable_bound);

        let z = C64::new(0.0, 0.0);
        let psi = StateVector::new(2, vec![C64::new(0.6, 0.0), z, z, C64::new(0.8, 0.0)]).unwrap();
        let w = gisin_witness(&psi).unwrap();
        assert!((w.operator_value - (SQRT_2 * 0.96 + 2.0)).abs() < 1e-12);
        assert!((w.operator_value - 3.3576).abs() < 1e-4);
    }

    #[test]
    fn witness_rejects_products() {
        let psi = StateVector::basis(2, 0b01).unwrap();
        assert!(matches!(gisin_witness(&psi), Err(Error::NotEntangled { .. })));
    }
}
