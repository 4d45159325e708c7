// SPDX-License-Identifier: Apache-2.0

//! 4-wise uniform generators and testers for uniformity and anticoncentration.

pub mod io;
mod linear;
mod quad;

pub use linear::{
    linear_gen_bit, linear_gen_build, CertificateStatus, LinearGen, LinearGenConfig, LinearSeed, CERTIFY_MAX_ARITY,
};
pub use quad::{build_quad_gen_circuit, quad_gen_bit, QuadForm, QuadGen, QuadGenSpec, QuadSeed};

use rayon::prelude::*;

use crate::circuit::{build_parity, Circuit};
use crate::corefn::TruthTable;
use crate::{Error, Result, Rng};

/// A seeded family of strings of length `2^arity`.
pub trait Generator: Sync {
    type Seed: Clone + Ord + Send + Sync + std::fmt::Debug;

    fn arity(&self) -> u32;

    fn seed_bits(&self) -> u32;

    /// Number of seeds when it fits in a `u64`.
    fn seed_count(&self) -> Option<u64> {
        (self.seed_bits() < 64).then(|| 1u64 << self.seed_bits())
    }

    /// The seed with the given rank; ranks follow the seed order.
    fn seed_at(&self, index: u64) -> Self::Seed;

    fn random_seed(&self, rng: &mut Rng) -> Self::Seed;

    fn bit(&self, seed: &Self::Seed, x: u64) -> Result<bool>;

    fn expand(&self, seed: &Self::Seed) -> Result<TruthTable>;

    /// Circuit on `arity` inputs computing `x -> G(seed)_x`.
    fn circuit(&self, seed: &Self::Seed) -> Result<Circuit>;

    fn seed_hex(&self, seed: &Self::Seed) -> String;

    fn name(&self) -> &'static str;
}

/// The 2-wise generator `G(s)_r = <s, r>` over `{0,1}^m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InnerProductGen {
    m: u32,
}

impl InnerProductGen {
    pub fn new(m: u32) -> Result<Self> {
        crate::corefn::table::check_arity(m)?;
        Ok(Self { m })
    }
}

impl Generator for InnerProductGen {
    type Seed = u64;

    fn arity(&self) -> u32 {
        self.m
    }

    fn seed_bits(&self) -> u32 {
        self.m
    }

    fn seed_at(&self, index: u64) -> u64 {
        index
    }

    fn random_seed(&self, rng: &mut Rng) -> u64 {
        use rand::Rng as _;
        rng.gen_range(0..1u64 << self.m)
    }

    fn bit(&self, seed: &u64, x: u64) -> Result<bool> {
        if x >> self.m != 0 {
            return Err(Error::InvalidArgument(format!("position {x} out of range")));
        }
        Ok((seed & x).count_ones() & 1 == 1)
    }

    fn expand(&self, seed: &u64) -> Result<TruthTable> {
        TruthTable::from_fn(self.m, |x| (seed & x).count_ones() & 1 == 1)
    }

    fn circuit(&self, seed: &u64) -> Result<Circuit> {
        let vars: Vec<u32> = (0..self.m).filter(|&t| (seed >> (self.m - 1 - t)) & 1 == 1).collect();
        if vars.is_empty() {
            Ok(Circuit::constant(self.m, false))
        } else {
            build_parity(self.m, &vars)
        }
    }

    fn seed_hex(&self, seed: &u64) -> String {
        format!("{seed:x}")
    }

    fn name(&self) -> &'static str {
        "inner-product"
    }
}

/// Largest seed space enumerated exhaustively.
pub const EXHAUSTIVE_SEED_LIMIT: u64 = 1 << 24;

/// Number of standard deviations a sampled pattern count may stray.
pub const SIGMA_BOUND: f64 = 5.0;

/// How the seed space is covered.
pub enum SeedMode<'a> {
    Exhaustive,
    Sampled { seeds: u64, rng: &'a mut Rng },
}

fn seed_list<G: Generator>(gen: &G, mode: SeedMode<'_>) -> Result<(Vec<G::Seed>, bool)> {
    match mode {
        SeedMode::Exhaustive => match gen.seed_count() {
            Some(count) if count <= EXHAUSTIVE_SEED_LIMIT => Ok(((0..count).map(|i| gen.seed_at(i)).collect(), true)),
            _ => Err(Error::BudgetExhausted(format!(
                "{} seed bits exceed the exhaustive limit of 2^24; give a sample budget",
                gen.seed_bits()
            ))),
        },
        SeedMode::Sampled { seeds, rng } => {
            if seeds == 0 {
                return Err(Error::InvalidArgument("sample budget must be positive".into()));
            }
            Ok(((0..seeds).map(|_| gen.random_seed(rng)).collect(), false))
        }
    }
}

/// Pattern counts for one position set; pattern bit `t` is the output at `positions[t]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternCounts {
    pub positions: Vec<u64>,
    pub counts: Vec<u64>,
    pub uniform: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KwiseReport {
    pub order: u32,
    pub seeds: u64,
    pub exhaustive: bool,
    pub sets: Vec<PatternCounts>,
}

impl KwiseReport {
    pub fn all_uniform(&self) -> bool {
        self.sets.iter().all(|s| s.uniform)
    }
}

/// All `order`-subsets of `0..len` in lexicographic order.
pub fn all_position_sets(len: u64, order: u32) -> Vec<Vec<u64>> {
    fn rec(start: u64, len: u64, left: u32, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for p in start..len {
            if len - p < left as u64 {
                break;
            }
            cur.push(p);
            rec(p + 1, len, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, len, order, &mut Vec::new(), &mut out);
    out
}

/// Counts output patterns on each position set. Exhaustive mode requires every
/// count to equal `seeds / 2^order`; sampled mode allows [`SIGMA_BOUND`] standard deviations.
pub fn verify_kwise<G: Generator>(
    gen: &G,
    order: u32,
    positions: Option<Vec<Vec<u64>>>,
    mode: SeedMode<'_>,
) -> Result<KwiseReport> {
    if order == 0 || order > 16 {
        return Err(Error::InvalidArgument(format!("uniformity order {order} not in 1..=16")));
    }
    let len = 1u64 << gen.arity();
    let sets = match positions {
        Some(sets) => sets,
        None => {
            if len > 64 {
                return Err(Error::BudgetExhausted("too many positions to enumerate all sets; list them".into()));
            }
            all_position_sets(len, order)
        }
    };
    for s in &sets {
        if s.len() != order as usize || s.iter().any(|&p| p >= len) {
            return Err(Error::InvalidArgument(format!("bad position set {s:?}")));
        }
    }
    let (seeds, exhaustive) = seed_list(gen, mode)?;
    let mut points: Vec<u64> = sets.iter().flatten().copied().collect();
    points.sort_unstable();
    points.dedup();
    let slot = |p: u64| points.binary_search(&p).expect("point listed");
    let set_slots: Vec<Vec<usize>> = sets.iter().map(|s| s.iter().map(|&p| slot(p)).collect()).collect();
    let patterns = 1usize << order;

    let counts = seeds
        .par_chunks(1024)
        .map(|chunk| -> Result<Vec<u64>> {
            let mut counts = vec![0u64; sets.len() * patterns];
            let mut bits = vec![false; points.len()];
            for seed in chunk {
                for (b, &p) in bits.iter_mut().zip(&points) {
                    *b = gen.bit(seed, p)?;
                }
                for (si, slots) in set_slots.iter().enumerate() {
                    let pat = slots.iter().enumerate().fold(0usize, |w, (t, &s)| w | ((bits[s] as usize) << t));
                    counts[si * patterns + pat] += 1;
                }
            }
            Ok(counts)
        })
        .try_reduce(
            || vec![0u64; sets.len() * patterns],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                Ok(a)
            },
        )?;

    let total = seeds.len() as u64;
    let p = 1.0 / patterns as f64;
    let mean = total as f64 * p;
    let sigma = (total as f64 * p * (1.0 - p)).sqrt();
    let sets = sets
        .into_iter()
        .zip(counts.chunks(patterns))
        .map(|(positions, c)| {
            let uniform = if exhaustive {
                c.iter().all(|&x| x * patterns as u64 == total)
            } else {
                c.iter().all(|&x| (x as f64 - mean).abs() <= SIGMA_BOUND * sigma)
            };
            PatternCounts { positions, counts: c.to_vec(), uniform }
        })
        .collect();
    Ok(KwiseReport { order, seeds: total, exhaustive, sets })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Anticoncentration {
    pub hits: u64,
    pub seeds: u64,
}

impl Anticoncentration {
    pub fn fraction(&self) -> f64 {
        self.hits as f64 / self.seeds as f64
    }
}

/// Fraction of seeds with `|sum_i v_i (-1)^{G(s)_i}| >= ||v||_2 / sqrt(3)`.
pub fn anticoncentration_check<G: Generator>(gen: &G, v: &[f64], mode: SeedMode<'_>) -> Result<Anticoncentration> {
    let len = 1u64 << gen.arity();
    if v.len() as u64 != len {
        return Err(Error::InvalidArgument(format!("weight vector has {} entries, expected {len}", v.len())));
    }
    let norm2: f64 = v.iter().map(|x| x * x).sum();
    let (seeds, _) = seed_list(gen, mode)?;
    let hits = seeds
        .par_iter()
        .map(|seed| -> Result<u64> {
            let t = gen.expand(seed)?;
            let s: f64 = v.iter().enumerate().map(|(i, &w)| if t.get(i as u64) { -w } else { w }).sum();
            Ok((3.0 * s * s >= norm2 * (1.0 - 1e-12)) as u64)
        })
        .try_reduce(|| 0, |a, b| Ok(a + b))?;
    Ok(Anticoncentration { hits, seeds: seeds.len() as u64 })
}
