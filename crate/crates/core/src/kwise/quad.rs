// SPDX-License-Identifier: Apache-2.0

//! The degree-3 polynomial generator `G(s)_x = iota(s1 + s2 x + s3 x^2 + s4 x^3)`
//! over GF(2^k), with output positions identified with field elements.
//!
//! For a fixed seed the map `x -> G(s)_x` is a quadratic form over GF(2) in the
//! bits of `x`: `iota(a y)` is linear in `y`, squaring is linear in
//! characteristic 2, and `x^3 = x * x^2` is bilinear in the bits of `x`. The
//! circuit and the fast table expansion both work from that form; the Horner
//! evaluation in [`quad_gen_bit`] is the reference.

use super::Generator;
use crate::circuit::{Circuit, CircuitBuilder, Op, Ref};
use crate::corefn::TruthTable;
use crate::gf2k::{iota, FieldCtx};
use crate::{Error, Result, Rng};
use rand::Rng as _;

/// Seed `(s1, s2, s3, s4)`, coefficients of `1, x, x^2, x^3`.
pub type QuadSeed = [u64; 4];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuadGenSpec {
    pub ctx: FieldCtx,
    pub seed: QuadSeed,
}

/// Output bit at position `x < 2^k` by direct polynomial evaluation.
pub fn quad_gen_bit(spec: &QuadGenSpec, x: u64) -> Result<bool> {
    if x >= spec.ctx.order() {
        return Err(Error::InvalidArgument(format!("position {x} out of range for GF(2^{})", spec.ctx.degree())));
    }
    if spec.seed.iter().any(|&s| s > spec.ctx.mask()) {
        return Err(Error::InvalidArgument("seed coefficient is not a field element".into()));
    }
    Ok(iota(spec.ctx.poly_eval_deg3(&spec.seed, x)))
}

/// `c0 ^ parity(linear & x) ^ sum_{i<j} Q_ij x_i x_j` with `rows[i]` holding
/// the `j > i` with `Q_ij = 1`. Bit `i` is the coefficient of `alpha^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadForm {
    k: u32,
    c0: bool,
    linear: u64,
    rows: Vec<u64>,
}

#[inline]
fn parity(x: u64) -> bool {
    x.count_ones() & 1 == 1
}

impl QuadForm {
    pub fn new(spec: &QuadGenSpec) -> Self {
        let ctx = &spec.ctx;
        let k = ctx.degree();
        let [s1, s2, s3, s4] = spec.seed;
        let mut pow = vec![1u64; 3 * k as usize];
        for e in 1..pow.len() {
            pow[e] = ctx.mul(pow[e - 1], 2);
        }
        let t3 = ctx.trace_mask(s3);
        let t4 = ctx.trace_mask(s4);
        let mut linear = ctx.trace_mask(s2);
        let mut rows = vec![0u64; k as usize];
        for i in 0..k as usize {
            if parity(t3 & pow[2 * i]) {
                linear ^= 1 << i;
            }
            for j in 0..k as usize {
                if parity(t4 & pow[i + 2 * j]) {
                    match i.cmp(&j) {
                        std::cmp::Ordering::Equal => linear ^= 1 << i,
                        std::cmp::Ordering::Less => rows[i] ^= 1 << j,
                        std::cmp::Ordering::Greater => rows[j] ^= 1 << i,
                    }
                }
            }
        }
        Self { k, c0: iota(s1), linear, rows }
    }

    pub fn eval(&self, x: u64) -> bool {
        let mut v = self.c0 ^ parity(self.linear & x);
        for (i, &row) in self.rows.iter().enumerate() {
            if (x >> i) & 1 == 1 {
                v ^= parity(row & x);
            }
        }
        v
    }

    /// All `2^k` outputs, 64 positions per step.
    pub fn expand(&self) -> TruthTable {
        let k = self.k;
        if k <= 6 {
            return TruthTable::from_fn(k, |x| self.eval(x)).expect("arity checked by field");
        }
        let low = 0x3fu64;
        let mut lin_table = [0u64; 64];
        for (m, slot) in lin_table.iter_mut().enumerate() {
            *slot = (0..64u64).filter(|&xl| parity(m as u64 & xl)).fold(0, |w, xl| w | (1 << xl));
        }
        let qll = (0..64u64)
            .filter(|&xl| {
                (0..6).filter(|&i| (xl >> i) & 1 == 1).fold(false, |v, i| v ^ parity(self.rows[i] & low & xl))
            })
            .fold(0u64, |w, xl| w | (1 << xl));
        let high_rows: Vec<u64> = self.rows.iter().map(|r| r >> 6).collect();
        let lin_low = self.linear & low;
        let lin_high = self.linear >> 6;
        let words = (0..1u64 << (k - 6))
            .map(|h| {
                let mut a = self.c0 ^ parity(lin_high & h);
                for (i, &hr) in high_rows.iter().enumerate().take(k as usize).skip(6) {
                    if (h >> (i - 6)) & 1 == 1 {
                        a ^= parity(hr & h);
                    }
                }
                let mut m = lin_low;
                for (i, &hr) in high_rows[..6].iter().enumerate() {
                    if parity(hr & h) {
                        m ^= 1 << i;
                    }
                }
                (if a { u64::MAX } else { 0 }) ^ lin_table[m as usize] ^ qll
            })
            .collect();
        TruthTable::from_words(k, words).expect("length matches arity")
    }

    /// Circuit for the form. Element bit `j` is input `x_{k-j}` (the position
    /// index puts `x_1` in the most significant bit).
    pub fn circuit(&self) -> Circuit {
        let k = self.k;
        let input = |j: usize| Ref::Input(k - 1 - j as u32);
        let mut b = CircuitBuilder::new(k);
        let mut terms = Vec::new();
        for (i, &row) in self.rows.iter().enumerate() {
            if row == 0 {
                continue;
            }
            let mut js = (0..k as usize).filter(|&j| (row >> j) & 1 == 1);
            let mut y = input(js.next().expect("nonzero row"));
            for j in js {
                y = b.push(Op::XOR, y, input(j));
            }
            terms.push(b.push(Op::AND, input(i), y));
        }
        terms.extend((0..k as usize).filter(|&j| (self.linear >> j) & 1 == 1).map(input));
        let out = match terms.len() {
            0 => Ref::Const(self.c0),
            1 if self.c0 => b.push(Op::NOR, terms[0], terms[0]),
            1 => terms[0],
            len => {
                let mut acc = terms[0];
                for (idx, &t) in terms[1..].iter().enumerate() {
                    let last = idx + 2 == len;
                    acc = b.push(if last && self.c0 { Op::XNOR } else { Op::XOR }, acc, t);
                }
                acc
            }
        };
        b.finish(out)
    }
}

/// Circuit computing `x -> iota(s1 + s2 x + s3 x^2 + s4 x^3)` on `k` inputs,
/// at most `k(k-1)/2 + 2k` gates.
pub fn build_quad_gen_circuit(spec: &QuadGenSpec) -> Circuit {
    QuadForm::new(spec).circuit()
}

/// The family of quadratic generators over one field.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuadGen {
    ctx: FieldCtx,
}

impl QuadGen {
    /// Uses the smallest irreducible modulus of degree `k`.
    pub fn new(k: u32) -> Result<Self> {
        Ok(Self { ctx: FieldCtx::find_irreducible(k)? })
    }

    pub fn with_ctx(ctx: FieldCtx) -> Self {
        Self { ctx }
    }

    pub fn ctx(&self) -> FieldCtx {
        self.ctx
    }

    pub fn spec(&self, seed: QuadSeed) -> QuadGenSpec {
        QuadGenSpec { ctx: self.ctx, seed }
    }

    /// `s1` in the most significant field.
    pub fn pack_seed(&self, seed: &QuadSeed) -> u128 {
        let k = self.ctx.degree();
        seed.iter().fold(0u128, |acc, &s| (acc << k) | s as u128)
    }

    pub fn unpack_seed(&self, packed: u128) -> Result<QuadSeed> {
        let k = self.ctx.degree();
        if 4 * k < 128 && packed >> (4 * k) != 0 {
            return Err(Error::InvalidArgument(format!("seed {packed:#x} exceeds {} bits", 4 * k)));
        }
        let m = self.ctx.mask() as u128;
        Ok([3u32, 2, 1, 0].map(|p| ((packed >> (p * k)) & m) as u64))
    }
}

impl Generator for QuadGen {
    type Seed = QuadSeed;

    fn arity(&self) -> u32 {
        self.ctx.degree()
    }

    fn seed_bits(&self) -> u32 {
        4 * self.ctx.degree()
    }

    fn seed_at(&self, index: u64) -> QuadSeed {
        self.unpack_seed(index as u128).expect("index below seed count")
    }

    fn random_seed(&self, rng: &mut Rng) -> QuadSeed {
        let m = self.ctx.mask();
        [(); 4].map(|_| rng.gen::<u64>() & m)
    }

    fn bit(&self, seed: &QuadSeed, x: u64) -> Result<bool> {
        quad_gen_bit(&self.spec(*seed), x)
    }

    fn expand(&self, seed: &QuadSeed) -> Result<TruthTable> {
        Ok(QuadForm::new(&self.spec(*seed)).expand())
    }

    fn circuit(&self, seed: &QuadSeed) -> Result<Circuit> {
        Ok(build_quad_gen_circuit(&self.spec(*seed)))
    }

    fn seed_hex(&self, seed: &QuadSeed) -> String {
        format!("{:x}", self.pack_seed(seed))
    }

    fn name(&self) -> &'static str {
        "quad"
    }
}
