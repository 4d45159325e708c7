// SPDX-License-Identifier: Apache-2.0

//! Exact circuits for arbitrary truth tables.
//!
//! The first `k - r` variables drive a multiplexer tree (`x_1` at the root);
//! identical subtrees at a depth are built once. The `2^(k-r)` leaves are
//! functions of the last `r` variables and come from a shared pool where every
//! distinct leaf table is built once, as an OR of aligned block indicators.

use std::collections::{HashMap, HashSet};

use super::{Circuit, CircuitBuilder, Op, Ref};
use crate::corefn::TruthTable;
use crate::{Error, Result};

/// Largest table arity accepted by [`build_junta_table`].
pub const MAX_JUNTA_ARITY: u32 = 24;

fn ceil_log2(x: u64) -> u32 {
    if x <= 1 {
        0
    } else {
        64 - (x - 1).leading_zeros()
    }
}

/// Pool depth `r = ceil(log2(max(k - 2 ceil(log2 k), 1)))`.
pub fn cutoff_level(k: u32) -> u32 {
    let inner = k as i64 - 2 * ceil_log2(k as u64) as i64;
    ceil_log2(inner.max(1) as u64).min(k)
}

/// Bits `[start, start + len)` of a table, `len <= 64` and aligned to `len`.
fn bits(t: &TruthTable, start: u64, len: u64) -> u64 {
    let w = t.words()[(start >> 6) as usize] >> (start & 63);
    if len == 64 {
        w
    } else {
        w & ((1u64 << len) - 1)
    }
}

fn low_mask(len: u64) -> u64 {
    if len == 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

/// Smallest aligned block (level, index) of a `2^r`-bit table containing all set bits.
fn smallest_block(t: u64, r: u32) -> (u32, u64) {
    let lo = t.trailing_zeros();
    let hi = 63 - t.leading_zeros();
    let span = if lo == hi { 0 } else { 32 - (lo ^ hi).leading_zeros() };
    (r - span, (lo >> span) as u64)
}

fn block_mask(r: u32, level: u32, block: u64) -> u64 {
    let size = 1u64 << (r - level);
    low_mask(size) << (block * size)
}

struct Pool {
    r: u32,
    base: u32,
    full: u64,
    proj: Vec<u64>,
    memo: HashMap<u64, Ref>,
}

impl Pool {
    fn new(k: u32, r: u32) -> Self {
        let len = 1u64 << r;
        let proj =
            (0..r).map(|p| (0..len).filter(|j| (j >> (r - 1 - p)) & 1 == 1).fold(0u64, |m, j| m | (1 << j))).collect();
        Self { r, base: k - r, full: low_mask(len), proj, memo: HashMap::new() }
    }

    fn free(&self, t: u64) -> Option<Ref> {
        if t == 0 {
            Some(Ref::Const(false))
        } else if t == self.full {
            Some(Ref::Const(true))
        } else {
            self.proj.iter().position(|&m| m == t).map(|p| Ref::Input(self.base + p as u32))
        }
    }

    fn get(&mut self, b: &mut CircuitBuilder, t: u64) -> Ref {
        if let Some(r) = self.free(t) {
            return r;
        }
        if let Some(&r) = self.memo.get(&t) {
            return r;
        }
        let (level, block) = smallest_block(t, self.r);
        let out = if t == block_mask(self.r, level, block) {
            self.indicator(b, level, block)
        } else {
            let t0 = t & block_mask(self.r, level + 1, 2 * block);
            let t1 = t & block_mask(self.r, level + 1, 2 * block + 1);
            let r0 = self.get(b, t0);
            let r1 = self.get(b, t1);
            b.push(Op::OR, r0, r1)
        };
        self.memo.insert(t, out);
        out
    }

    /// Conjunction of literals fixing the top `level` pool variables to `block`.
    fn indicator(&mut self, b: &mut CircuitBuilder, level: u32, block: u64) -> Ref {
        let base = self.base;
        let x = |p: u32| Ref::Input(base + p);
        match level {
            1 => b.push(Op::NOR, x(0), x(0)),
            2 => {
                let op = match block {
                    0b11 => Op::AND,
                    0b10 => Op::ANDNB,
                    0b01 => Op::ANDNA,
                    _ => Op::NOR,
                };
                b.push(op, x(0), x(1))
            }
            _ => {
                let parent = self.get(b, block_mask(self.r, level - 1, block >> 1));
                let op = if block & 1 == 1 { Op::AND } else { Op::ANDNB };
                b.push(op, parent, x(level - 1))
            }
        }
    }

    /// Gates [`Pool::get`] would add for `t`, given what is already in `seen`.
    fn cost(&self, t: u64, seen: &mut HashSet<u64>) -> u64 {
        if self.free(t).is_some() || !seen.insert(t) {
            return 0;
        }
        let (level, block) = smallest_block(t, self.r);
        if t == block_mask(self.r, level, block) {
            if level <= 2 {
                1
            } else {
                1 + self.cost(block_mask(self.r, level - 1, block >> 1), seen)
            }
        } else {
            let t0 = t & block_mask(self.r, level + 1, 2 * block);
            let t1 = t & block_mask(self.r, level + 1, 2 * block + 1);
            1 + self.cost(t0, seen) + self.cost(t1, seen)
        }
    }
}

/// `s ? a1 : a0` with the fewest gates the operand shapes allow.
fn mux(b: &mut CircuitBuilder, s: Ref, a1: Ref, a0: Ref) -> Ref {
    use Ref::Const;
    if a1 == a0 {
        return a0;
    }
    match (a1, a0) {
        (Const(true), Const(false)) => s,
        (Const(false), Const(true)) => b.push(Op::NOR, s, s),
        (_, Const(false)) => b.push(Op::AND, s, a1),
        (_, Const(true)) => b.push(Op::ORNA, s, a1),
        (Const(false), _) => b.push(Op::ANDNA, s, a0),
        (Const(true), _) => b.push(Op::OR, s, a0),
        _ => {
            let t = b.push(Op::XOR, a0, a1);
            let u = b.push(Op::AND, s, t);
            b.push(Op::XOR, a0, u)
        }
    }
}

fn check_junta_arity(k: u32) -> Result<()> {
    if k > MAX_JUNTA_ARITY {
        return Err(Error::ScaleGuard(format!("table circuits are limited to {MAX_JUNTA_ARITY} inputs, got {k}")));
    }
    Ok(())
}

/// A circuit computing `g` exactly.
pub fn build_junta_table(g: &TruthTable) -> Result<Circuit> {
    let k = g.arity();
    check_junta_arity(k)?;
    let r = cutoff_level(k);
    let tree = k - r;
    let leaf_len = 1u64 << r;
    let mut b = CircuitBuilder::new(k);
    let mut pool = Pool::new(k, r);
    let mut level: Vec<Ref> = (0..1u64 << tree).map(|c| pool.get(&mut b, bits(g, c * leaf_len, leaf_len))).collect();
    for d in (0..tree).rev() {
        let mut memo: HashMap<(Ref, Ref), Ref> = HashMap::new();
        level = level
            .chunks_exact(2)
            .map(|pair| {
                let (a0, a1) = (pair[0], pair[1]);
                *memo.entry((a1, a0)).or_insert_with(|| mux(&mut b, Ref::Input(d), a1, a0))
            })
            .collect();
    }
    Ok(b.finish(level[0]))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Shape {
    Zero,
    One,
    Other,
}

fn mux_cost(a1: Shape, a0: Shape) -> u64 {
    use Shape::*;
    match (a1, a0) {
        (One, Zero) => 0,
        (Zero, One) | (_, Zero) | (_, One) | (Zero, _) | (One, _) => 1,
        (Other, Other) => 3,
    }
}

fn shape_words(w: &[u64]) -> Shape {
    if w.iter().all(|&x| x == 0) {
        Shape::Zero
    } else if w.iter().all(|&x| x == u64::MAX) {
        Shape::One
    } else {
        Shape::Other
    }
}

fn shape_bits(v: u64, len: u64) -> Shape {
    if v == 0 {
        Shape::Zero
    } else if v == low_mask(len) {
        Shape::One
    } else {
        Shape::Other
    }
}

/// Gate count of [`build_junta_table`] computed from the table alone: for each
/// tree depth, the distinct subfunctions that depend on that depth's variable,
/// priced by their cofactors' shapes, plus the pool's distinct leaves.
pub fn predict_junta_size(g: &TruthTable) -> Result<u64> {
    let k = g.arity();
    check_junta_arity(k)?;
    let r = cutoff_level(k);
    let tree = k - r;
    let mut total = 0u64;
    for d in 0..tree {
        let half = 1u64 << (k - d - 1);
        if half >= 64 {
            let hw = (half / 64) as usize;
            let mut seen: HashSet<&[u64]> = HashSet::new();
            for block in g.words().chunks_exact(2 * hw) {
                let (a0, a1) = block.split_at(hw);
                if a0 != a1 && seen.insert(block) {
                    total += mux_cost(shape_words(a1), shape_words(a0));
                }
            }
        } else {
            let mut seen: HashSet<(u64, u64)> = HashSet::new();
            for c in 0..1u64 << d {
                let a0 = bits(g, 2 * c * half, half);
                let a1 = bits(g, (2 * c + 1) * half, half);
                if a0 != a1 && seen.insert((a1, a0)) {
                    total += mux_cost(shape_bits(a1, half), shape_bits(a0, half));
                }
            }
        }
    }
    let pool = Pool::new(k, r);
    let leaf_len = 1u64 << r;
    let mut seen = HashSet::new();
    for c in 0..1u64 << tree {
        total += pool.cost(bits(g, c * leaf_len, leaf_len), &mut seen);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng_from_seed;

    #[test]
    fn cutoff_values() {
        let got: Vec<u32> = (1..=24).map(cutoff_level).collect();
        let want = [0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 2, 2, 3, 3, 3, 3, 3, 3, 4, 4, 4, 4, 4, 4];
        assert_eq!(got, want);
    }

    #[test]
    fn trivial_tables() {
        let z = build_junta_table(&TruthTable::zeros(5).unwrap()).unwrap();
        assert_eq!(z.size(), 0);
        assert_eq!(z.output(), Ref::Const(false));
        for k in 1..=8 {
            for j in 0..k {
                let c = build_junta_table(&TruthTable::var(k, j).unwrap()).unwrap();
                assert_eq!(c.size(), 0, "k = {k}, j = {j}");
                assert_eq!(c.output(), Ref::Input(j));
            }
        }
        assert!(build_junta_table(&TruthTable::zeros(25).unwrap()).is_err());
    }

    #[test]
    fn exhaustive_small_roundtrip() {
        for k in 1..=4u32 {
            for w in 0..1u64 << (1u32 << k) {
                let g = TruthTable::from_words(k, vec![w]).unwrap();
                let c = build_junta_table(&g).unwrap();
                assert_eq!(c.truth_table().unwrap(), g);
                assert_eq!(c.size() as u64, predict_junta_size(&g).unwrap());
            }
        }
    }

    #[test]
    fn random_roundtrip_and_prediction() {
        let mut rng = rng_from_seed(3);
        for k in 1..=12 {
            for _ in 0..8 {
                let g = TruthTable::random(k, &mut rng).unwrap();
                let c = build_junta_table(&g).unwrap();
                assert_eq!(c.truth_table().unwrap(), g);
                assert_eq!(c.size() as u64, predict_junta_size(&g).unwrap());
            }
        }
    }

    #[test]
    fn structural_size_bound() {
        // every tree node costs at most 3 gates, every pool table at most 1 of its own
        let mut rng = rng_from_seed(4);
        for k in [10, 14, 16] {
            let r = cutoff_level(k);
            let g = TruthTable::random(k, &mut rng).unwrap();
            let c = build_junta_table(&g).unwrap();
            let bound = 3 * ((1u64 << (k - r)) - 1) + (1u64 << (1u32 << r));
            assert!((c.size() as u64) <= bound, "{} > {bound}", c.size());
        }
    }
}
