// SPDX-License-Identifier: Apache-2.0

use crate::corefn::table::{TruthTable, MAX_ARITY};
use crate::{Error, Result};

/// Tolerance on `sum(weights) = 1` for a constructed distribution.
pub const SUM_TOLERANCE: f64 = 1e-9;

/// Slack added to the smoothness bound `1 / (delta 2^n)`.
pub const SMOOTH_SLACK: f64 = 1e-12;

/// Dense probability mass function over `{0,1}^n`, indexed like [`TruthTable`].
///
/// Arity 0 is allowed here (a single point of mass 1) so that conditioning on a
/// subcube of depth 0 is well defined.
#[derive(Clone, Debug, PartialEq)]
pub struct Distribution {
    n: u32,
    weights: Vec<f64>,
}

fn check_dist_arity(n: u32) -> Result<()> {
    if n <= MAX_ARITY {
        Ok(())
    } else {
        Err(Error::ArityOutOfRange { n, min: 0, max: MAX_ARITY })
    }
}

impl Distribution {
    pub fn new(n: u32, weights: Vec<f64>) -> Result<Self> {
        check_dist_arity(n)?;
        if weights.len() as u64 != 1u64 << n {
            return Err(Error::InvalidDistribution(format!("expected {} weights, got {}", 1u64 << n, weights.len())));
        }
        if let Some((i, w)) = weights.iter().enumerate().find(|(_, w)| !(w.is_finite() && **w >= 0.0)) {
            return Err(Error::InvalidDistribution(format!("weight {w} at index {i}")));
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::InvalidDistribution(format!("weights sum to {sum}")));
        }
        Ok(Self { n, weights })
    }

    /// Normalizes arbitrary nonnegative weights with positive total.
    pub fn from_unnormalized(n: u32, mut weights: Vec<f64>) -> Result<Self> {
        check_dist_arity(n)?;
        let sum: f64 = weights.iter().sum();
        if !(sum > 0.0 && sum.is_finite()) {
            return Err(Error::InvalidDistribution(format!("total mass {sum}")));
        }
        weights.iter_mut().for_each(|w| *w /= sum);
        Self::new(n, weights)
    }

    pub fn uniform(n: u32) -> Result<Self> {
        check_dist_arity(n)?;
        let len = 1usize << n;
        Ok(Self { n, weights: vec![1.0 / len as f64; len] })
    }

    pub fn point_mass(n: u32, x: u64) -> Result<Self> {
        check_dist_arity(n)?;
        if x >= 1u64 << n {
            return Err(Error::InvalidArgument(format!("point {x} out of range for n = {n}")));
        }
        let mut weights = vec![0.0; 1usize << n];
        weights[x as usize] = 1.0;
        Ok(Self { n, weights })
    }

    /// Uniform over the set bits of `support`; uniform over everything if it is empty.
    pub fn uniform_on(support: &TruthTable) -> Result<Self> {
        let n = support.arity();
        let count = support.count_ones();
        if count == 0 {
            return Self::uniform(n);
        }
        let w = 1.0 / count as f64;
        let weights = support.iter().map(|b| if b { w } else { 0.0 }).collect();
        Ok(Self { n, weights })
    }

    #[inline]
    pub fn arity(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    #[inline]
    pub fn weight(&self, x: u64) -> f64 {
        self.weights[x as usize]
    }

    pub fn max_weight(&self) -> f64 {
        self.weights.iter().copied().fold(0.0, f64::max)
    }

    /// `H'(c) = Pr_{x~H}[x in c x {0,1}^(n-t)]` on the first `t` bits.
    pub fn marginal_prefix(&self, t: u32) -> Result<Self> {
        if t == 0 || t > self.n {
            return Err(Error::InvalidArgument(format!("prefix length {t} for n = {}", self.n)));
        }
        if t == self.n {
            return Ok(self.clone());
        }
        let block = 1usize << (self.n - t);
        let weights = self.weights.chunks_exact(block).map(|b| b.iter().sum()).collect();
        Ok(Self { n: t, weights })
    }

    /// `H_c(y) = H(c o y) / H'(c)` on the last `ell` bits.
    pub fn conditional_suffix(&self, c: u64, ell: u32) -> Result<Self> {
        if ell > self.n {
            return Err(Error::InvalidArgument(format!("suffix length {ell} for n = {}", self.n)));
        }
        if c >= 1u64 << (self.n - ell) {
            return Err(Error::InvalidArgument(format!("prefix {c} out of range")));
        }
        let block = 1usize << ell;
        let start = c as usize * block;
        let slice = &self.weights[start..start + block];
        let mass: f64 = slice.iter().sum();
        if mass <= 0.0 {
            return Err(Error::EmptySubcube { prefix: c });
        }
        Ok(Self { n: ell, weights: slice.iter().map(|w| w / mass).collect() })
    }

    /// No point carries more than `1 / (delta 2^n)` mass.
    pub fn is_smooth(&self, delta: f64) -> Result<bool> {
        if !(delta > 0.0 && delta <= 1.0) {
            return Err(Error::InvalidArgument(format!("smoothness delta {delta} not in (0, 1]")));
        }
        let bound = 1.0 / (delta * (1u64 << self.n) as f64);
        Ok(self.max_weight() <= bound + SMOOTH_SLACK)
    }
}

/// `Pr_{x~H}[f(x) = g(x)]`.
pub fn agreement(f: &TruthTable, g: &TruthTable, h: &Distribution) -> Result<f64> {
    if f.arity() != g.arity() {
        return Err(Error::ArityMismatch { left: f.arity(), right: g.arity() });
    }
    if f.arity() != h.arity() {
        return Err(Error::ArityMismatch { left: f.arity(), right: h.arity() });
    }
    let w = h.weights();
    let len = w.len();
    let mut total = 0.0;
    for (wi, (a, b)) in f.words().iter().zip(g.words()).enumerate() {
        let eq = !(a ^ b);
        let base = wi * 64;
        let end = (base + 64).min(len);
        let mut word = 0.0;
        for (j, &wt) in w[base..end].iter().enumerate() {
            if (eq >> j) & 1 == 1 {
                word += wt;
            }
        }
        total += word;
    }
    Ok(total)
}

/// `E_{x~H}[(-1)^(f(x)+g(x))] = 2 agreement - 1`.
pub fn correlation(f: &TruthTable, g: &TruthTable, h: &Distribution) -> Result<f64> {
    Ok(2.0 * agreement(f, g, h)? - 1.0)
}
