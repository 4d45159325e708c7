// SPDX-License-Identifier: Apache-2.0

//! Code-based 4-wise uniform generator.
//!
//! A random linear code `Enc: GF(2)^n -> GF(2)^m` with measured relative
//! distance `delta`, `16n` index multisets `S_i` of size `ceil(10/delta)` drawn
//! uniformly from `[m]`, and random local functions `g_i` tabulated on the
//! patterns `Enc(x)_{S_i}` that actually occur. Position `x` gets the vector
//! `v(x) = (g_i(Enc(x)_{S_i}))_i` and `G(s)_x = <v(x), s>`. If the vectors of
//! nonzero positions are 4-wise linearly independent, every four of those
//! positions are exactly uniform over the seed.

use std::collections::{BTreeMap, HashSet};

use rand::Rng as _;

use super::Generator;
use crate::circuit::{build_junta_table, Circuit, CircuitBuilder, Op, Ref};
use crate::corefn::TruthTable;
use crate::{Error, Result, Rng};

/// Largest arity for which the independence certificate is checked.
pub const CERTIFY_MAX_ARITY: u32 = 8;

/// Largest arity accepted by the builder (every position's patterns are tabulated).
pub const MAX_LINEAR_ARITY: u32 = 12;

/// Largest pattern width a local table accepts.
const MAX_SET_SIZE: u32 = 128;

/// Distinct code coordinates above which no gate-level netlist is emitted for a `g_i`.
pub const MAX_LOCAL_CIRCUIT_INPUTS: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LinearGenConfig {
    /// Code length `m = rate_factor * n`.
    pub rate_factor: u32,
    /// Seed length and number of local functions, per message bit.
    pub outputs_per_bit: u32,
    /// Set size numerator: `|S_i| = ceil(set_numerator / delta)`.
    pub set_numerator: u32,
}

impl Default for LinearGenConfig {
    fn default() -> Self {
        Self { rate_factor: 4, outputs_per_bit: 16, set_numerator: 10 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertificateStatus {
    Verified,
    /// Arity above [`CERTIFY_MAX_ARITY`]; uniformity is not established.
    Skipped,
    Failed,
}

impl CertificateStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Verified => "verified",
            Self::Skipped => "skipped",
            Self::Failed => "failed",
        }
    }
}

/// Seed bits packed little-endian into words; ordered as an integer.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearSeed(pub Vec<u64>);

impl Ord for LinearSeed {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }
}

impl PartialOrd for LinearSeed {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug)]
pub struct LinearGen {
    n: u32,
    m: u32,
    min_weight: u32,
    /// Row `j` is `Enc(e_j)`; message bit `j` is bit `j` of the position index.
    rows: Vec<u128>,
    sets: Vec<Vec<u32>>,
    locals: Vec<BTreeMap<u128, bool>>,
    /// `v(x)` for every position, `seed_words` words each, when every pattern is tabulated.
    vectors: Option<Vec<u64>>,
    certificate: CertificateStatus,
}

fn seed_words(seed_len: u32) -> usize {
    seed_len.div_ceil(64) as usize
}

fn binomial_f64(n: f64, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i as f64) / (i as f64 + 1.0))
}

impl LinearGen {
    /// Rejection sampling: draw a code, sets and local bits, certify, restart on failure.
    pub fn build(n: u32, config: &LinearGenConfig, rng: &mut Rng, max_restarts: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::ArityOutOfRange { n, min: 2, max: MAX_LINEAR_ARITY });
        }
        if n > MAX_LINEAR_ARITY {
            return Err(Error::ScaleGuard(format!("linear generator arity {n} above {MAX_LINEAR_ARITY}")));
        }
        let m = config.rate_factor * n;
        if m == 0 || m > 128 || config.outputs_per_bit == 0 || config.set_numerator == 0 {
            return Err(Error::InvalidArgument(format!("unusable linear generator config {config:?}")));
        }
        let outputs = config.outputs_per_bit * n;
        for _ in 0..max_restarts.max(1) {
            let mask = if m == 128 { u128::MAX } else { (1u128 << m) - 1 };
            let rows: Vec<u128> = (0..n).map(|_| rng.gen::<u128>() & mask).collect();
            let min_weight = min_weight(&rows, n);
            if min_weight == 0 {
                continue;
            }
            let t = (config.set_numerator * m).div_ceil(min_weight);
            if t > MAX_SET_SIZE {
                continue;
            }
            let sets: Vec<Vec<u32>> = (0..outputs).map(|_| (0..t).map(|_| rng.gen_range(0..m)).collect()).collect();
            let mut locals = vec![BTreeMap::new(); outputs as usize];
            for x in 0..1u64 << n {
                let enc = encode(&rows, x);
                for (set, table) in sets.iter().zip(locals.iter_mut()) {
                    table.entry(pattern(enc, set)).or_insert_with(|| rng.gen::<bool>());
                }
            }
            let gen = Self::assemble(n, m, min_weight, rows, sets, locals);
            if gen.certificate != CertificateStatus::Failed {
                return Ok(gen);
            }
        }
        let points = (1u64 << n) as f64 - 1.0;
        let subsets: f64 = (1..=4).map(|a| binomial_f64(points, a)).sum();
        let per_attempt = subsets * (2.0f64 / 3.0).powi(outputs as i32);
        Err(Error::BudgetExhausted(format!(
            "no certified linear generator for n = {n} after {max_restarts} restarts \
             (union bound on failure per attempt: {per_attempt:.3e})"
        )))
    }

    /// Reassembles a generator from its parts, recomputing distance, vectors and certificate.
    pub fn from_parts(
        n: u32,
        m: u32,
        rows: Vec<u128>,
        sets: Vec<Vec<u32>>,
        locals: Vec<BTreeMap<u128, bool>>,
    ) -> Result<Self> {
        if !(2..=MAX_LINEAR_ARITY).contains(&n) || m == 0 || m > 128 {
            return Err(Error::InvalidArgument(format!("unsupported linear generator shape n = {n}, m = {m}")));
        }
        if rows.len() != n as usize || rows.iter().any(|&r| m < 128 && r >> m != 0) {
            return Err(Error::InvalidArgument("code rows do not match n and m".into()));
        }
        if sets.is_empty() || sets.len() != locals.len() {
            return Err(Error::InvalidArgument("set and table counts differ".into()));
        }
        if sets.iter().any(|s| s.is_empty() || s.len() > MAX_SET_SIZE as usize || s.iter().any(|&i| i >= m)) {
            return Err(Error::InvalidArgument("set index out of range".into()));
        }
        let min_weight = min_weight(&rows, n);
        Ok(Self::assemble(n, m, min_weight, rows, sets, locals))
    }

    fn assemble(
        n: u32,
        m: u32,
        min_weight: u32,
        rows: Vec<u128>,
        sets: Vec<Vec<u32>>,
        locals: Vec<BTreeMap<u128, bool>>,
    ) -> Self {
        let mut gen =
            Self { n, m, min_weight, rows, sets, locals, vectors: None, certificate: CertificateStatus::Skipped };
        let words = seed_words(gen.seed_len());
        let mut vectors = Vec::with_capacity(words << n);
        let mut complete = true;
        for x in 0..1u64 << n {
            match gen.vector(x) {
                Ok(v) => vectors.extend(v),
                Err(_) => {
                    complete = false;
                    break;
                }
            }
        }
        if complete {
            gen.vectors = Some(vectors);
        }
        gen.certificate = if n > CERTIFY_MAX_ARITY {
            CertificateStatus::Skipped
        } else if complete && gen.certify() {
            CertificateStatus::Verified
        } else {
            CertificateStatus::Failed
        };
        gen
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn seed_len(&self) -> u32 {
        self.sets.len() as u32
    }

    pub fn min_weight(&self) -> u32 {
        self.min_weight
    }

    /// Measured relative distance of the code.
    pub fn delta(&self) -> f64 {
        self.min_weight as f64 / self.m as f64
    }

    pub fn rows(&self) -> &[u128] {
        &self.rows
    }

    pub fn sets(&self) -> &[Vec<u32>] {
        &self.sets
    }

    pub fn locals(&self) -> &[BTreeMap<u128, bool>] {
        &self.locals
    }

    pub fn certificate(&self) -> CertificateStatus {
        self.certificate
    }

    pub fn encode(&self, x: u64) -> u128 {
        encode(&self.rows, x)
    }

    /// `v(x)`, packed little-endian.
    pub fn vector(&self, x: u64) -> Result<Vec<u64>> {
        if x >> self.n != 0 {
            return Err(Error::InvalidArgument(format!("position {x} out of range for n = {}", self.n)));
        }
        if let Some(v) = &self.vectors {
            let w = seed_words(self.seed_len());
            return Ok(v[x as usize * w..(x as usize + 1) * w].to_vec());
        }
        let enc = self.encode(x);
        let mut out = vec![0u64; seed_words(self.seed_len())];
        for (i, (set, table)) in self.sets.iter().zip(&self.locals).enumerate() {
            let pat = pattern(enc, set);
            let bit = *table.get(&pat).ok_or(Error::UnseenPattern { index: i, pattern: pat })?;
            out[i / 64] |= (bit as u64) << (i % 64);
        }
        Ok(out)
    }

    /// Whether the vectors of the nonzero positions are 4-wise linearly
    /// independent: nonzero, pairwise distinct, no pair sum equal to a vector,
    /// and all pair sums distinct.
    pub fn independence_certificate(&self) -> Result<bool> {
        if self.n > CERTIFY_MAX_ARITY {
            return Err(Error::ScaleGuard(format!("certificate limited to n <= {CERTIFY_MAX_ARITY}")));
        }
        Ok(self.vectors.is_some() && self.certify())
    }

    fn certify(&self) -> bool {
        let Some(all) = &self.vectors else { return false };
        let w = seed_words(self.seed_len());
        let vecs: Vec<&[u64]> = (1..1usize << self.n).map(|x| &all[x * w..(x + 1) * w]).collect();
        let mut singles: HashSet<&[u64]> = HashSet::with_capacity(vecs.len());
        for v in &vecs {
            if v.iter().all(|&x| x == 0) || !singles.insert(v) {
                return false;
            }
        }
        let mut pairs: HashSet<Vec<u64>> = HashSet::with_capacity(vecs.len() * vecs.len() / 2);
        for a in 0..vecs.len() {
            for b in a + 1..vecs.len() {
                let s: Vec<u64> = vecs[a].iter().zip(vecs[b]).map(|(x, y)| x ^ y).collect();
                if singles.contains(s.as_slice()) || !pairs.insert(s) {
                    return false;
                }
            }
        }
        true
    }

    fn check_seed(&self, seed: &LinearSeed) -> Result<()> {
        let len = self.seed_len();
        let ok =
            seed.0.len() == seed_words(len) && (len.is_multiple_of(64) || seed.0.last().unwrap() >> (len % 64) == 0);
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!("seed must have exactly {len} bits")))
        }
    }

    /// Circuit for `x -> <v(x), s>`: every selected `g_i` as a table over the
    /// distinct code coordinates it reads, each coordinate a parity of inputs.
    fn build_circuit(&self, seed: &LinearSeed) -> Result<Circuit> {
        self.check_seed(seed)?;
        let n = self.n;
        let mut b = CircuitBuilder::new(n);
        let mut coord_refs: BTreeMap<u32, Ref> = BTreeMap::new();
        let mut terms = Vec::new();
        for (i, (set, table)) in self.sets.iter().zip(&self.locals).enumerate() {
            if (seed.0[i / 64] >> (i % 64)) & 1 == 0 {
                continue;
            }
            let mut coords: Vec<u32> = set.clone();
            coords.sort_unstable();
            coords.dedup();
            if coords.len() > MAX_LOCAL_CIRCUIT_INPUTS {
                return Err(Error::CircuitUnavailable(format!(
                    "local function {i} reads {} coordinates (limit {MAX_LOCAL_CIRCUIT_INPUTS})",
                    coords.len()
                )));
            }
            let mut wiring = Vec::with_capacity(coords.len());
            for &c in &coords {
                let r = match coord_refs.get(&c) {
                    Some(&r) => r,
                    None => {
                        // message bit j is input x_{n-j}
                        let vars: Vec<Ref> = (0..n)
                            .filter(|&j| (self.rows[j as usize] >> c) & 1 == 1)
                            .map(|j| Ref::Input(n - 1 - j))
                            .collect();
                        let r = match vars.split_first() {
                            None => Ref::Const(false),
                            Some((&first, rest)) => rest.iter().fold(first, |acc, &v| b.push(Op::XOR, acc, v)),
                        };
                        coord_refs.insert(c, r);
                        r
                    }
                };
                wiring.push(r);
            }
            let d = coords.len() as u32;
            let local = TruthTable::from_fn(d, |z| {
                // z bit for coords[q] is bit d-1-q
                let pat = set.iter().enumerate().fold(0u128, |p, (t, c)| {
                    let q = coords.binary_search(c).expect("coordinate listed");
                    p | ((((z >> (d - 1 - q as u32)) & 1) as u128) << t)
                });
                table.get(&pat).copied().unwrap_or(false)
            })?;
            let sub = build_junta_table(&local)?;
            terms.push(b.append(&sub, &wiring));
        }
        let out = match terms.split_first() {
            None => Ref::Const(false),
            Some((&first, rest)) => rest.iter().fold(first, |acc, &t| b.push(Op::XOR, acc, t)),
        };
        Ok(b.finish(out))
    }
}

fn encode(rows: &[u128], x: u64) -> u128 {
    rows.iter().enumerate().filter(|(j, _)| (x >> j) & 1 == 1).fold(0, |acc, (_, r)| acc ^ r)
}

fn pattern(enc: u128, set: &[u32]) -> u128 {
    set.iter().enumerate().fold(0, |p, (t, &c)| p | (((enc >> c) & 1) << t))
}

/// Minimum weight of a nonzero codeword, by Gray-code enumeration of messages.
fn min_weight(rows: &[u128], n: u32) -> u32 {
    let mut enc = 0u128;
    let mut best = u32::MAX;
    for i in 1..1u64 << n {
        enc ^= rows[i.trailing_zeros() as usize];
        best = best.min(enc.count_ones());
    }
    best
}

/// [`LinearGen::build`] with the default constants.
pub fn linear_gen_build(n: u32, rng: &mut Rng, max_restarts: u32) -> Result<LinearGen> {
    LinearGen::build(n, &LinearGenConfig::default(), rng, max_restarts)
}

/// `<v(x), seed>` over GF(2).
pub fn linear_gen_bit(gen: &LinearGen, seed: &LinearSeed, x: u64) -> Result<bool> {
    gen.check_seed(seed)?;
    let v = gen.vector(x)?;
    Ok(v.iter().zip(&seed.0).fold(0, |acc, (a, b)| acc ^ (a & b).count_ones()) & 1 == 1)
}

impl Generator for LinearGen {
    type Seed = LinearSeed;

    fn arity(&self) -> u32 {
        self.n
    }

    fn seed_bits(&self) -> u32 {
        self.seed_len()
    }

    fn seed_at(&self, index: u64) -> LinearSeed {
        let mut words = vec![0u64; seed_words(self.seed_len())];
        words[0] = index;
        LinearSeed(words)
    }

    fn random_seed(&self, rng: &mut Rng) -> LinearSeed {
        let len = self.seed_len();
        let mut words: Vec<u64> = (0..seed_words(len)).map(|_| rng.gen()).collect();
        if !len.is_multiple_of(64) {
            *words.last_mut().unwrap() &= (1u64 << (len % 64)) - 1;
        }
        LinearSeed(words)
    }

    fn bit(&self, seed: &LinearSeed, x: u64) -> Result<bool> {
        if let Some(v) = &self.vectors {
            if x >> self.n == 0 && seed.0.len() == seed_words(self.seed_len()) {
                let w = seed.0.len();
                let v = &v[x as usize * w..(x as usize + 1) * w];
                return Ok(v.iter().zip(&seed.0).fold(0, |acc, (a, b)| acc ^ (a & b).count_ones()) & 1 == 1);
            }
        }
        linear_gen_bit(self, seed, x)
    }

    fn expand(&self, seed: &LinearSeed) -> Result<TruthTable> {
        self.check_seed(seed)?;
        // position index x has message bit j at index bit j
        let mut t = TruthTable::zeros(self.n)?;
        for x in 0..1u64 << self.n {
            if self.bit(seed, x)? {
                t.set(x, true);
            }
        }
        Ok(t)
    }

    fn circuit(&self, seed: &LinearSeed) -> Result<Circuit> {
        self.build_circuit(seed)
    }

    fn seed_hex(&self, seed: &LinearSeed) -> String {
        let digits = self.seed_len().div_ceil(4) as usize;
        let full: String = seed.0.iter().rev().map(|w| format!("{w:016x}")).collect();
        full[full.len() - digits..].to_string()
    }

    fn name(&self) -> &'static str {
        "linear"
    }
}
