//! Multi-start block-coordinate ascent over pure product states.
//!
//! For a Pauli sum the product-state expectation is multilinear in the
//! per-qubit Bloch vectors: `⟨P₁⊗…⊗Pₙ⟩ = Πⱼ rⱼ[Pⱼ]` (identity contributes 1).
//! With every other qubit fixed the objective is `c + g·rⱼ`, maximised over
//! the sphere at `rⱼ = g/|g|` with value `c + |g|`, so each coordinate step is
//! exact. A sweep updates every qubit once; sweeps stop when the gain drops
//! below `step_tolerance`.

use rayon::prelude::*;
use serde::Serialize;

use super::{Argmax, BoundReport};
use crate::error::{Error, Result};
use crate::linalg::STRUCTURED_LIMIT_QUBITS;
use crate::pauli::{expectation_sum, PauliSum};
use crate::states::{product_state, random_product_with, ProductStateParams, SeededRng};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct OptimizerConfig {
    pub restarts: usize,
    /// Maximum number of sweeps per restart.
    pub max_iterations: usize,
    pub step_tolerance: f64,
    pub seed: u64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            restarts: 64,
            max_iterations: 500,
            step_tolerance: 1e-9,
            seed: 0,
        }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<()> {
        if self.restarts == 0 || self.max_iterations == 0 {
            return Err(Error::contract("restarts and max_iterations must be at least 1"));
        }
        if !(self.step_tolerance > 0.0) {
            return Err(Error::contract("step_tolerance must be positive"));
        }
        Ok(())
    }
}

/// Terms as `(coefficient, [(site, axis)])`, identity letters dropped.
struct BlochObjective {
    terms: Vec<(f64, Vec<(usize, usize)>)>,
}

impl BlochObjective {
    fn new(op: &PauliSum) -> Self {
        let terms = op
            .iter()
            .map(|(p, c)| {
                let factors = p
                    .letters()
                    .iter()
                    .enumerate()
                    .filter_map(|(site, l)| l.axis().map(|axis| (site, axis)))
                    .collect();
                (c.re, factors)
            })
            .collect();
        Self { terms }
    }

    fn value(&self, r: &[[f64; 3]]) -> f64 {
        self.terms
            .iter()
            .map(|(c, f)| c * f.iter().map(|&(s, k)| r[s][k]).product::<f64>())
            .sum()
    }

    /// `(c, g)` with objective `= c + g·r[site]` for the other sites fixed.
    fn affine_in(&self, r: &[[f64; 3]], site: usize) -> (f64, [f64; 3]) {
        let mut c0 = 0.0;
        let mut g = [0.0; 3];
        for (c, factors) in &self.terms {
            let mut rest = *c;
            let mut axis = None;
            for &(s, k) in factors {
                if s == site {
                    axis = Some(k);
                } else {
                    rest *= r[s][k];
                }
            }
            match axis {
                Some(k) => g[k] += rest,
                None => c0 += rest,
            }
        }
        (c0, g)
    }

    fn ascend(&self, r: &mut [[f64; 3]], cfg: &OptimizerConfig) -> f64 {
        let mut current = self.value(r);
        for _ in 0..cfg.max_iterations {
            for site in 0..r.len() {
                let (_, g) = self.affine_in(r, site);
                let norm = (g[0] * g[0] + g[1] * g[1] + g[2] * g[2]).sqrt();
                if norm > 0.0 {
                    r[site] = [g[0] / norm, g[1] / norm, g[2] / norm];
                }
            }
            let next = self.value(r);
            let gain = next - current;
            current = next;
            if gain < cfg.step_tolerance {
                break;
            }
        }
        current
    }
}

/// Best product-state expectation of a Hermitian `op` found by seeded
/// multi-start ascent. Restarts run in parallel; ties go to the lowest restart.
pub fn separable_max(op: &PauliSum, cfg: &OptimizerConfig) -> Result<BoundReport> {
    cfg.validate()?;
    op.require_hermitian()?;
    let n = op.n();
    if n > STRUCTURED_LIMIT_QUBITS {
        return Err(Error::Size {
            what: "separable search qubit count",
            requested: n,
            limit: STRUCTURED_LIMIT_QUBITS,
        });
    }
    let objective = BlochObjective::new(op);

    let mut rng = SeededRng::new(cfg.seed);
    let starts = (0..cfg.restarts)
        .map(|_| random_product_with(n, &mut rng))
        .collect::<Result<Vec<_>>>()?;

    let results: Vec<(f64, Vec<[f64; 3]>)> = starts
        .par_iter()
        .map(|p| {
            let mut r: Vec<[f64; 3]> = (0..n).map(|j| p.bloch(j)).collect();
            let v = objective.ascend(&mut r, cfg);
            (v, r)
        })
        .collect();

    let (mut best_value, mut best) = (f64::NEG_INFINITY, None);
    for (v, r) in &results {
        if *v > best_value {
            best_value = *v;
            best = Some(r);
        }
    }
    let best = best.ok_or_else(|| Error::Numerical("no restart produced a finite value".into()))?;
    let params = ProductStateParams::from_bloch(best)?;
    let value = expectation_sum(op, &product_state(&params)?)?;
    Ok(BoundReport::new(value, Argmax::Product { params }))
}
