//! Mermin–Klyshko Bell operators, a variant of the CHSH expression augmented
//! with `2A″B″`, and numerical certification of their separable, entangled and
//! local-hidden-variable maxima.
//!
//! Qubit 1 is the most significant bit of every basis index and
//! `σz|0⟩ = |0⟩`. GHZ-type states on n qubits carry the
//! relative phase `e^{i(n−1)π/4}`.

pub mod bell;
pub mod bounds;
pub mod cli;
pub mod eigen;
pub mod error;
pub mod linalg;
pub mod pauli;
pub mod schmidt;
pub mod spin;
pub mod state;
pub mod states;

pub use error::{Error, Result};
pub use linalg::C64;
