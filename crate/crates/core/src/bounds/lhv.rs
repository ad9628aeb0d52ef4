//! Exhaustive local-hidden-variable maximum.
//!
//! Each site carries a predetermined outcome `±1` for each of its X, Y and Z
//! observables. An assignment is a `3n`-bit word (bit `3j + k` set means the
//! axis-`k` outcome on site `j` is `−1`), and a string's value is the product
//! of its letters' outcomes, i.e. the parity of the word masked by the string.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use super::{Argmax, BoundReport};
use crate::error::{Error, Result};
use crate::pauli::PauliSum;

/// `8^n` assignments are enumerated, so `n` is capped here.
pub const LHV_MAX_QUBITS: usize = 8;

const CHUNK: u64 = 1 << 12;

/// Per-site outcomes `[v_x, v_y, v_z]`, each `±1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LhvAssignment {
    pub signs: Vec<[i8; 3]>,
}

impl LhvAssignment {
    fn decode(word: u64, n: usize) -> Self {
        let signs = (0..n)
            .map(|j| {
                let mut s = [1i8; 3];
                for (k, v) in s.iter_mut().enumerate() {
                    if word >> (3 * j + k) & 1 == 1 {
                        *v = -1;
                    }
                }
                s
            })
            .collect();
        Self { signs }
    }
}

impl fmt::Display for LhvAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, s) in self.signs.iter().enumerate() {
            if j > 0 {
                f.write_str(" ")?;
            }
            for v in s {
                f.write_str(if *v > 0 { "+" } else { "-" })?;
            }
        }
        Ok(())
    }
}

pub fn lhv_max(op: &PauliSum) -> Result<BoundReport> {
    op.require_hermitian()?;
    let n = op.n();
    if n > LHV_MAX_QUBITS {
        return Err(Error::Size {
            what: "LHV enumeration qubit count (8^n assignments; branch-and-bound is not provided)",
            requested: n,
            limit: LHV_MAX_QUBITS,
        });
    }
    let terms: Vec<(f64, u64)> = op
        .iter()
        .map(|(p, c)| {
            let mask = p
                .letters()
                .iter()
                .enumerate()
                .filter_map(|(j, l)| l.axis().map(|k| 1u64 << (3 * j + k)))
                .fold(0, |acc, b| acc | b);
            (c.re, mask)
        })
        .collect();

    let value_of = |word: u64| -> f64 {
        terms
            .iter()
            .map(|&(c, m)| if (word & m).count_ones() % 2 == 0 { c } else { -c })
            .sum()
    };

    let total = 1u64 << (3 * n);
    let chunks = total.div_ceil(CHUNK);
    let per_chunk: Vec<(f64, u64)> = (0..chunks)
        .into_par_iter()
        .map(|ch| {
            let (start, end) = (ch * CHUNK, ((ch + 1) * CHUNK).min(total));
            let mut best = (f64::NEG_INFINITY, start);
            for word in start..end {
                let v = value_of(word);
                if v > best.0 {
                    best = (v, word);
                }
            }
            best
        })
        .collect();

    let (value, word) = per_chunk
        .into_iter()
        .fold((f64::NEG_INFINITY, 0), |acc, x| if x.0 > acc.0 { x } else { acc });
    Ok(BoundReport::new(
        value,
        Argmax::Lhv {
            assignment: LhvAssignment::decode(word, n),
        },
    ))
}
