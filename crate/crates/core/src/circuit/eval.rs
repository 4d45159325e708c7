// SPDX-License-Identifier: Apache-2.0

//! Circuit evaluation.
//!
//! `truth_table` tracks, for every gate, the contiguous interval of variables
//! its value can depend on, and stores only the table over that interval. A
//! gate's table is built by stretching and repeating its operands' tables to
//! their joint interval. Values are dropped after their last use, so memory
//! stays near the widest live frontier instead of `size * 2^n` bits.

use std::borrow::Cow;

use super::{Circuit, Ref};
use crate::corefn::table::{check_arity, tail_mask, words_for};
use crate::corefn::TruthTable;
use crate::{Error, Result};

impl Circuit {
    /// Value on the input with index `x` (`x_1` is the most significant bit).
    pub fn eval(&self, x: u64) -> Result<bool> {
        if self.n < 64 && x >> self.n != 0 {
            return Err(Error::InvalidArgument(format!("input {x} out of range for arity {}", self.n)));
        }
        let n = self.n;
        let mut vals = Vec::with_capacity(self.gates.len());
        let get = |r: Ref, vals: &[bool]| match r {
            Ref::Const(v) => v,
            Ref::Input(j) => (x >> (n - 1 - j)) & 1 == 1,
            Ref::Gate(g) => vals[g as usize],
        };
        for g in &self.gates {
            let v = g.op.apply(get(g.a, &vals), get(g.b, &vals));
            vals.push(v);
        }
        Ok(get(self.output, &vals))
    }

    /// Full truth table by pointwise evaluation; the slow reference path.
    pub fn truth_table_pointwise(&self) -> Result<TruthTable> {
        check_arity(self.n)?;
        TruthTable::from_fn(self.n, |x| self.eval(x).expect("index in range"))
    }

    /// Full truth table, bit-packed.
    pub fn truth_table(&self) -> Result<TruthTable> {
        check_arity(self.n)?;
        let n = self.n;
        let mut last_use = vec![0usize; self.gates.len()];
        for (i, g) in self.gates.iter().enumerate() {
            for r in [g.a, g.b] {
                if let Ref::Gate(j) = r {
                    last_use[j as usize] = i;
                }
            }
        }
        if let Ref::Gate(j) = self.output {
            last_use[j as usize] = usize::MAX;
        }

        let mut vals: Vec<Option<Local>> = vec![None; self.gates.len()];
        for (i, g) in self.gates.iter().enumerate() {
            let a = leaf_or_gate(g.a, &vals);
            let b = leaf_or_gate(g.b, &vals);
            let (lo, w) = union(&a, &b);
            let ea = a.expand(lo, w);
            let eb = b.expand(lo, w);
            let mut words: Vec<u64> = ea.iter().zip(eb.iter()).map(|(&x, &y)| g.op.apply_words(x, y)).collect();
            if let Some(last) = words.last_mut() {
                *last &= tail_mask(w);
            }
            vals[i] = Some(Local { lo, w, words });
            for r in [g.a, g.b] {
                if let Ref::Gate(j) = r {
                    if last_use[j as usize] == i {
                        vals[j as usize] = None;
                    }
                }
            }
        }
        let out = leaf_or_gate(self.output, &vals);
        let words = out.expand(0, n).into_owned();
        Ok(TruthTable::from_words_unchecked(n, words))
    }
}

/// A table over the variables `lo .. lo + w` (0-based), `2^w` bits.
#[derive(Clone, Debug)]
struct Local {
    lo: u32,
    w: u32,
    words: Vec<u64>,
}

fn leaf_or_gate<'a>(r: Ref, vals: &'a [Option<Local>]) -> Cow<'a, Local> {
    match r {
        Ref::Const(v) => Cow::Owned(Local { lo: 0, w: 0, words: vec![v as u64] }),
        Ref::Input(j) => Cow::Owned(Local { lo: j, w: 1, words: vec![0b10] }),
        Ref::Gate(g) => Cow::Borrowed(vals[g as usize].as_ref().expect("gate value still live")),
    }
}

fn union(a: &Local, b: &Local) -> (u32, u32) {
    match (a.w, b.w) {
        (0, 0) => (0, 0),
        (0, _) => (b.lo, b.w),
        (_, 0) => (a.lo, a.w),
        _ => {
            let lo = a.lo.min(b.lo);
            let hi = (a.lo + a.w).max(b.lo + b.w);
            (lo, hi - lo)
        }
    }
}

impl Local {
    /// The same function as a table over `lo .. lo + w`, which must contain `self`'s interval.
    fn expand(&self, lo: u32, w: u32) -> Cow<'_, [u64]> {
        if self.w == 0 {
            let fill = if self.words[0] & 1 == 1 { u64::MAX } else { 0 };
            let mut words = vec![fill; words_for(w)];
            if let Some(last) = words.last_mut() {
                *last &= tail_mask(w);
            }
            return Cow::Owned(words);
        }
        if self.lo == lo && self.w == w {
            return Cow::Borrowed(&self.words);
        }
        debug_assert!(self.lo >= lo && self.lo + self.w <= lo + w);
        let top = self.lo - lo;
        let bottom = (lo + w) - (self.lo + self.w);
        let stretched = stretch(&self.words, self.w, bottom);
        Cow::Owned(repeat(stretched, self.w + bottom, top))
    }
}

/// Replaces every bit of a `2^src_log`-bit table by `2^by` copies of itself.
fn stretch(words: &[u64], src_log: u32, by: u32) -> Vec<u64> {
    if by == 0 {
        return words.to_vec();
    }
    let dst_log = src_log + by;
    let src_bits = 1u64 << src_log;
    let bit = |i: u64| (words[(i >> 6) as usize] >> (i & 63)) & 1 == 1;
    let mut out;
    if by >= 6 {
        out = vec![0u64; words_for(dst_log)];
        let per = 1usize << (by - 6);
        for i in 0..src_bits {
            if bit(i) {
                let start = i as usize * per;
                out[start..start + per].fill(u64::MAX);
            }
        }
    } else {
        out = words.to_vec();
        for step in 0..by {
            out = double_bits(&out, src_log + step);
        }
    }
    out
}

/// Spreads the low 32 bits of `x` to the even bit positions.
#[inline]
fn spread(x: u64) -> u64 {
    let mut x = x & 0xffff_ffff;
    x = (x | (x << 16)) & 0x0000_ffff_0000_ffff;
    x = (x | (x << 8)) & 0x00ff_00ff_00ff_00ff;
    x = (x | (x << 4)) & 0x0f0f_0f0f_0f0f_0f0f;
    x = (x | (x << 2)) & 0x3333_3333_3333_3333;
    x = (x | (x << 1)) & 0x5555_5555_5555_5555;
    x | (x << 1)
}

/// Stretch by exactly one level.
fn double_bits(words: &[u64], src_log: u32) -> Vec<u64> {
    if src_log < 6 {
        return vec![spread(words[0])];
    }
    let mut out = Vec::with_capacity(words.len() * 2);
    for &w in words {
        out.push(spread(w));
        out.push(spread(w >> 32));
    }
    out
}

/// Concatenates `2^times` copies of a `2^src_log`-bit table.
fn repeat(words: Vec<u64>, src_log: u32, times: u32) -> Vec<u64> {
    if times == 0 {
        return words;
    }
    let dst_log = src_log + times;
    if src_log >= 6 {
        let mut out = Vec::with_capacity(words_for(dst_log));
        for _ in 0..(1u64 << times) {
            out.extend_from_slice(&words);
        }
        return out;
    }
    let mut v = words[0];
    let mut len = 1u32 << src_log;
    while len < 64 && len < (1u32 << dst_log.min(6)) {
        v |= v << len;
        len *= 2;
    }
    vec![v; words_for(dst_log)]
}
