// SPDX-License-Identifier: Apache-2.0

use rand::RngCore;

use crate::{Error, Result};

/// Largest arity accepted for dense tables and distributions.
pub const MAX_ARITY: u32 = 26;

/// Dense bit-packed truth table of `f: {0,1}^n -> {0,1}`.
///
/// Input `x = (x_1, ..., x_n)` lives at index `sum_j x_j 2^(n-j)`, so `x_1` is
/// the most significant index bit and every prefix subcube `c x {0,1}^l` is the
/// contiguous index block `[c 2^l, (c+1) 2^l)`. Bit `i` is stored at word
/// `i / 64`, bit position `i % 64`. For `n < 6` the single word keeps its unused
/// high bits at zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruthTable {
    n: u32,
    words: Vec<u64>,
}

impl std::fmt::Debug for TruthTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "TruthTable(n={}, {})", self.n, crate::corefn::io::bits_to_hex(self))
    }
}

pub(crate) fn words_for(n: u32) -> usize {
    if n <= 6 {
        1
    } else {
        1usize << (n - 6)
    }
}

pub(crate) fn tail_mask(n: u32) -> u64 {
    if n >= 6 {
        u64::MAX
    } else {
        (1u64 << (1u32 << n)) - 1
    }
}

pub(crate) fn check_arity(n: u32) -> Result<()> {
    if (1..=MAX_ARITY).contains(&n) {
        Ok(())
    } else {
        Err(Error::ArityOutOfRange { n, min: 1, max: MAX_ARITY })
    }
}

impl TruthTable {
    pub fn zeros(n: u32) -> Result<Self> {
        check_arity(n)?;
        Ok(Self { n, words: vec![0; words_for(n)] })
    }

    pub fn constant(n: u32, value: bool) -> Result<Self> {
        let mut t = Self::zeros(n)?;
        if value {
            t.words.iter_mut().for_each(|w| *w = u64::MAX);
            t.mask_tail();
        }
        Ok(t)
    }

    /// Wraps raw words; the caller guarantees the length and tail invariants.
    pub(crate) fn from_words_unchecked(n: u32, words: Vec<u64>) -> Self {
        debug_assert_eq!(words.len(), words_for(n));
        let mut t = Self { n, words };
        t.mask_tail();
        t
    }

    pub fn from_words(n: u32, words: Vec<u64>) -> Result<Self> {
        check_arity(n)?;
        if words.len() != words_for(n) {
            return Err(Error::InvalidArgument(format!(
                "expected {} words for n = {n}, got {}",
                words_for(n),
                words.len()
            )));
        }
        Ok(Self::from_words_unchecked(n, words))
    }

    pub fn from_fn(n: u32, mut f: impl FnMut(u64) -> bool) -> Result<Self> {
        let mut t = Self::zeros(n)?;
        for x in 0..t.len() {
            if f(x) {
                t.set(x, true);
            }
        }
        Ok(t)
    }

    /// Uniformly random table: every bit an independent fair coin drawn from `rng`.
    pub fn random(n: u32, rng: &mut impl RngCore) -> Result<Self> {
        let mut t = Self::zeros(n)?;
        for w in t.words.iter_mut() {
            *w = rng.next_u64();
        }
        t.mask_tail();
        Ok(t)
    }

    /// `x_1 xor ... xor x_n`.
    pub fn parity(n: u32) -> Result<Self> {
        Self::from_fn(n, |x| x.count_ones() & 1 == 1)
    }

    /// Projection onto input variable `x_{j+1}` (0-based `j`).
    pub fn var(n: u32, j: u32) -> Result<Self> {
        if j >= n {
            return Err(Error::InvalidArgument(format!("variable {j} out of range for n = {n}")));
        }
        let shift = n - 1 - j;
        Self::from_fn(n, |x| (x >> shift) & 1 == 1)
    }

    #[inline]
    pub fn arity(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn len(&self) -> u64 {
        1u64 << self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, x: u64) -> bool {
        debug_assert!(x < self.len());
        (self.words[(x >> 6) as usize] >> (x & 63)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, x: u64, value: bool) {
        debug_assert!(x < self.len());
        let w = &mut self.words[(x >> 6) as usize];
        let m = 1u64 << (x & 63);
        if value {
            *w |= m;
        } else {
            *w &= !m;
        }
    }

    pub(crate) fn mask_tail(&mut self) {
        let m = tail_mask(self.n);
        if let Some(last) = self.words.last_mut() {
            *last &= m;
        }
    }

    pub fn not(&self) -> Self {
        let mut t = Self { n: self.n, words: self.words.iter().map(|w| !w).collect() };
        t.mask_tail();
        t
    }

    pub fn xor(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::ArityMismatch { left: self.n, right: other.n });
        }
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a ^ b).collect();
        Ok(Self { n: self.n, words })
    }

    pub fn count_ones(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    /// `E_x[(-1)^f(x)]` under the uniform distribution.
    pub fn bias(&self) -> f64 {
        let ones = self.count_ones() as f64;
        let total = self.len() as f64;
        (total - 2.0 * ones) / total
    }

    /// `f(x) = g(x_1..x_k)` on `n >= k` inputs.
    pub fn junta_embed(&self, n: u32) -> Result<Self> {
        check_arity(n)?;
        if self.n > n {
            return Err(Error::InvalidArgument(format!("cannot embed a {}-input table into {n} inputs", self.n)));
        }
        let shift = n - self.n;
        if shift == 0 {
            return Ok(self.clone());
        }
        let mut out = Self::zeros(n)?;
        if n <= 6 {
            for x in 0..out.len() {
                if self.get(x >> shift) {
                    out.set(x, true);
                }
            }
            return Ok(out);
        }
        let run = 1u64 << shift;
        if run >= 64 {
            let per = (run / 64) as usize;
            for c in 0..self.len() {
                if self.get(c) {
                    let start = c as usize * per;
                    out.words[start..start + per].iter_mut().for_each(|w| *w = u64::MAX);
                }
            }
        } else {
            let fill = (1u64 << run) - 1;
            let per_word = 64 / run;
            for (wi, w) in out.words.iter_mut().enumerate() {
                let base = wi as u64 * per_word;
                let mut acc = 0u64;
                for j in 0..per_word {
                    if self.get(base + j) {
                        acc |= fill << (j * run);
                    }
                }
                *w = acc;
            }
        }
        Ok(out)
    }

    /// Restriction of `f` to the subcube `c x {0,1}^ell`, as a table on `ell` bits.
    pub fn subcube(&self, c: u64, ell: u32) -> Result<Self> {
        if ell == 0 || ell > self.n {
            return Err(Error::InvalidArgument(format!("subcube depth {ell} for n = {}", self.n)));
        }
        if c >= 1u64 << (self.n - ell) {
            return Err(Error::InvalidArgument(format!("prefix {c} out of range")));
        }
        let start = c << ell;
        if ell >= 6 {
            let per = 1usize << (ell - 6);
            let s = (start >> 6) as usize;
            Ok(Self { n: ell, words: self.words[s..s + per].to_vec() })
        } else {
            let word = self.words[(start >> 6) as usize] >> (start & 63);
            Ok(Self::from_words_unchecked(ell, vec![word]))
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len()).map(move |x| self.get(x))
    }
}
