// SPDX-License-Identifier: Apache-2.0

//! Exhaustive oracles for toy-scale hardness claims.

use crate::corefn::{Distribution, TruthTable};
use crate::hardness::minsize::{min_size_table, MinSizeTable};
use crate::{Error, Result};

/// Largest arity [`best_junta_correlation`] enumerates.
pub const JUNTA_FIT_MAX_ARITY: u32 = 16;

#[derive(Clone, Debug, PartialEq)]
pub struct JuntaFit {
    /// Input indices, ascending; `subset[0]` is the most significant bit of the projected class.
    pub subset: Vec<u32>,
    /// Optimal value on each projected class, ties to 0.
    pub table: Vec<bool>,
    pub correlation: f64,
}

fn next_subset(s: &mut [u32], n: u32) -> bool {
    let k = s.len();
    for i in (0..k).rev() {
        if s[i] < n - (k - i) as u32 {
            s[i] += 1;
            for j in i + 1..k {
                s[j] = s[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Best correlation `E_H[(-1)^(f + g)]` of `f` with any function of `k` of its
/// inputs. For each subset the optimum takes the heavier value on every
/// projected class; the first subset in lexicographic order wins ties.
pub fn best_junta_correlation(f: &TruthTable, k: u32, h: &Distribution) -> Result<JuntaFit> {
    let n = f.arity();
    if h.arity() != n {
        return Err(Error::ArityMismatch { left: n, right: h.arity() });
    }
    if n > JUNTA_FIT_MAX_ARITY {
        return Err(Error::ScaleGuard(format!(
            "junta fitting enumerates subsets only up to n = {JUNTA_FIT_MAX_ARITY}"
        )));
    }
    if k > n {
        return Err(Error::InvalidArgument(format!("junta size {k} exceeds n = {n}")));
    }
    let w = h.weights();
    let mut subset: Vec<u32> = (0..k).collect();
    let mut best: Option<JuntaFit> = None;
    let mut diff = vec![0.0f64; 1usize << k];
    loop {
        diff.iter_mut().for_each(|d| *d = 0.0);
        for x in 0..1u64 << n {
            let mut c = 0usize;
            for &j in &subset {
                c = (c << 1) | ((x >> (n - 1 - j)) & 1) as usize;
            }
            if f.get(x) {
                diff[c] += w[x as usize];
            } else {
                diff[c] -= w[x as usize];
            }
        }
        let corr: f64 = diff.iter().map(|d| d.abs()).sum();
        if best.as_ref().is_none_or(|b| corr > b.correlation) {
            let table = diff.iter().map(|&d| d > 0.0).collect();
            best = Some(JuntaFit { subset: subset.clone(), table, correlation: corr });
        }
        if !next_subset(&mut subset, n) {
            break;
        }
    }
    Ok(best.expect("at least one subset"))
}

/// Whether every table of circuit size at most `s` agrees with `f` on fewer
/// than `(1 - delta) 2^n` inputs.
pub fn verify_inapprox_bruteforce(f: &TruthTable, s: u32, delta: f64) -> Result<bool> {
    let table = min_size_table(f.arity(), s)?;
    verify_inapprox_with(&table, f, delta)
}

/// [`verify_inapprox_bruteforce`] against a precomputed enumeration.
pub fn verify_inapprox_with(table: &MinSizeTable, f: &TruthTable, delta: f64) -> Result<bool> {
    if f.arity() != table.arity() {
        return Err(Error::ArityMismatch { left: f.arity(), right: table.arity() });
    }
    Ok(best_small_agreement(table, f) < (1.0 - delta) * f.len() as f64)
}

/// Largest number of inputs on which some enumerated table agrees with `f`.
pub fn best_small_agreement(table: &MinSizeTable, f: &TruthTable) -> f64 {
    let fm = f.words()[0];
    let len = f.len();
    table.iter().map(|(t, _)| len - (t.words()[0] ^ fm).count_ones() as u64).max().unwrap_or(0) as f64
}
