//! State factories: the generalized GHZ family, product states, and seeded
//! random states.
//!
//! Random draws use xoshiro256** seeded through SplitMix64 (the reference
//! `seed_from_u64` expansion). A uniform `f64` in `[0, 1)` is `(x >> 11)·2⁻⁵³`
//! for the next 64-bit output `x`; normal deviates come from the Box–Muller
//! transform `√(−2 ln u₁)·cos(2π u₂)` with `u₁ ∈ (0, 1]`, one output per pair.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4, PI, TAU};

use rand_xoshiro::rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{C64, STRUCTURED_LIMIT_QUBITS, Unitary2, ZERO};
use crate::state::StateVector;

/// The two-qubit relative phase `e^{iπ/4}`.
pub const GHZ_PHASE: C64 = C64::new(FRAC_1_SQRT_2, FRAC_1_SQRT_2);

/// Relative phase `e^{i(n−1)π/4}` of the n-qubit GHZ family.
///
/// This is the phase of `⟨1ⁿ|Bₙ|0ⁿ⟩`: each level of the Bell-operator
/// recursion multiplies it by `e^{iπ/4}` (the phase of `⟨1|σx + σy|0⟩ = 1 + i`).
/// It equals [`GHZ_PHASE`] for two qubits.
pub fn ghz_phase(n: usize) -> C64 {
    C64::from_polar(1.0, (n as f64 - 1.0) * FRAC_PI_4)
}

/// Slack on the angle ranges of [`ProductStateParams`] and [`ghz_general`].
const ANGLE_SLACK: f64 = 1e-12;

pub struct SeededRng(Xoshiro256StarStar);

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        Self(Xoshiro256StarStar::seed_from_u64(seed))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform in `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `(0, 1]`.
    fn uniform_open(&mut self) -> f64 {
        ((self.next_u64() >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn normal(&mut self) -> f64 {
        let r = (-2.0 * self.uniform_open().ln()).sqrt();
        r * (TAU * self.uniform()).cos()
    }

    pub fn complex_normal(&mut self) -> C64 {
        let re = self.normal();
        C64::new(re, self.normal())
    }
}

/// Per-qubit Bloch angles: qubit `j` is `cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProductStateParams {
    angles: Vec<(f64, f64)>,
}

impl ProductStateParams {
    /// Requires `θ ∈ [0, π]` and `φ ∈ [0, 2π)` for every qubit.
    pub fn new(angles: Vec<(f64, f64)>) -> Result<Self> {
        if angles.is_empty() {
            return Err(Error::domain("product state needs at least one qubit"));
        }
        for (j, &(theta, phi)) in angles.iter().enumerate() {
            if !(-ANGLE_SLACK..=PI + ANGLE_SLACK).contains(&theta) {
                return Err(Error::domain(format!("theta[{j}] = {theta} outside [0, pi]")));
            }
            if !(0.0..TAU).contains(&phi) {
                return Err(Error::domain(format!("phi[{j}] = {phi} outside [0, 2pi)")));
            }
        }
        Ok(Self { angles })
    }

    /// Canonical angles for the given unit Bloch vectors.
    pub fn from_bloch(vectors: &[[f64; 3]]) -> Result<Self> {
        let angles = vectors
            .iter()
            .map(|&[x, y, z]| {
                let r = (x * x + y * y + z * z).sqrt();
                let theta = (z / r).clamp(-1.0, 1.0).acos();
                let mut phi = y.atan2(x);
                if phi < 0.0 {
                    phi += TAU;
                }
                if phi >= TAU {
                    phi = 0.0;
                }
                (theta, phi)
            })
            .collect();
        Self::new(angles)
    }

    pub fn n(&self) -> usize {
        self.angles.len()
    }

    pub fn angles(&self) -> &[(f64, f64)] {
        &self.angles
    }

    /// Amplitudes `(⟨0|ψ_j⟩, ⟨1|ψ_j⟩)` of qubit `j`.
    pub fn qubit(&self, j: usize) -> [C64; 2] {
        let (theta, phi) = self.angles[j];
        [
            C64::new((theta / 2.0).cos(), 0.0),
            C64::from_polar((theta / 2.0).sin(), phi),
        ]
    }

    pub fn bloch(&self, j: usize) -> [f64; 3] {
        let (theta, phi) = self.angles[j];
        [theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos()]
    }
}

pub fn product_state(params: &ProductStateParams) -> Result<StateVector> {
    let n = params.n();
    if n > STRUCTURED_LIMIT_QUBITS {
        return Err(Error::Size {
            what: "product state qubit count",
            requested: n,
            limit: STRUCTURED_LIMIT_QUBITS,
        });
    }
    let mut amps = vec![C64::new(1.0, 0.0)];
    for j in 0..n {
        let q = params.qubit(j);
        amps = amps.iter().flat_map(|a| [a * q[0], a * q[1]]).collect();
    }
    StateVector::new(n, amps)
}

/// `cos θ |0ⁿ⟩ + ω sin θ |1ⁿ⟩` for `0 ≤ θ ≤ π/4`, with `ω = e^{i(n−1)π/4}`.
#[derive(Clone, Debug, PartialEq)]
pub struct GhzFamilyState {
    pub n: usize,
    pub theta: f64,
    pub state: StateVector,
}

pub fn ghz_general(n: usize, theta: f64) -> Result<GhzFamilyState> {
    if n < 2 {
        return Err(Error::domain(format!("GHZ family needs n >= 2, got {n}")));
    }
    if n > STRUCTURED_LIMIT_QUBITS {
        return Err(Error::Size {
            what: "GHZ qubit count",
            requested: n,
            limit: STRUCTURED_LIMIT_QUBITS,
        });
    }
    if !(0.0..=FRAC_PI_4).contains(&theta) {
        return Err(Error::domain(format!("theta = {theta} outside [0, pi/4]")));
    }
    let mut amps = vec![ZERO; 1 << n];
    amps[0] = C64::new(theta.cos(), 0.0);
    amps[(1 << n) - 1] = ghz_phase(n) * theta.sin();
    Ok(GhzFamilyState {
        n,
        theta,
        state: StateVector::new(n, amps)?,
    })
}

/// `(|0ⁿ⟩ ± e^{i(n−1)π/4}|1ⁿ⟩)/√2`, the `±2^{(n−1)/2}` eigenvectors of `Bₙ`.
pub fn ghz_pm(n: usize, plus: bool) -> Result<StateVector> {
    if n == 0 || n > STRUCTURED_LIMIT_QUBITS {
        return Err(Error::domain(format!("qubit count {n} out of range")));
    }
    let mut amps = vec![ZERO; 1 << n];
    amps[0] = C64::new(FRAC_1_SQRT_2, 0.0);
    let sign = if plus { 1.0 } else { -1.0 };
    amps[(1 << n) - 1] = ghz_phase(n) * (sign * FRAC_1_SQRT_2);
    StateVector::new(n, amps)
}

/// Haar-random pure state: normalized vector of complex standard normals.
pub fn random_state(n: usize, seed: u64) -> Result<StateVector> {
    if n == 0 || n > STRUCTURED_LIMIT_QUBITS {
        return Err(Error::domain(format!("qubit count {n} out of range")));
    }
    let mut rng = SeededRng::new(seed);
    let amps = (0..1usize << n).map(|_| rng.complex_normal()).collect();
    StateVector::normalized(n, amps)
}

/// Product parameters with `θ` uniform on `[0, π)` and `φ` uniform on `[0, 2π)`.
pub fn random_product(n: usize, seed: u64) -> Result<ProductStateParams> {
    let mut rng = SeededRng::new(seed);
    random_product_with(n, &mut rng)
}

pub fn random_product_with(n: usize, rng: &mut SeededRng) -> Result<ProductStateParams> {
    let angles = (0..n)
        .map(|_| {
            let theta = PI * rng.uniform();
            (theta, TAU * rng.uniform())
        })
        .collect();
    ProductStateParams::new(angles)
}

/// Haar-random single-qubit unitary (Gram–Schmidt on two complex normal vectors).
pub fn random_unitary2(rng: &mut SeededRng) -> Unitary2 {
    let mut a = [rng.complex_normal(), rng.complex_normal()];
    let na = (a[0].norm_sqr() + a[1].norm_sqr()).sqrt();
    a = [a[0] / na, a[1] / na];
    let b = [rng.complex_normal(), rng.complex_normal()];
    let proj = a[0].conj() * b[0] + a[1].conj() * b[1];
    let mut b = [b[0] - proj * a[0], b[1] - proj * a[1]];
    let nb = (b[0].norm_sqr() + b[1].norm_sqr()).sqrt();
    b = [b[0] / nb, b[1] / nb];
    Unitary2::from_columns(a, b)
}

/// `(U₁ ⊗ U₂)|ψ⟩` for a two-qubit state.
pub fn apply_local_unitaries(psi: &StateVector, u1: &Unitary2, u2: &Unitary2) -> Result<StateVector> {
    if psi.n() != 2 {
        return Err(Error::Shape {
            expected: 2,
            got: psi.n(),
        });
    }
    let a = psi.amps();
    let mut out = vec![ZERO; 4];
    for (i, row) in out.chunks_mut(2).enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            for k in 0..2 {
                for l in 0..2 {
                    *cell += u1.0[i][k] * u2.0[j][l] * a[2 * k + l];
                }
            }
        }
    }
    StateVector::new(2, out)
}
