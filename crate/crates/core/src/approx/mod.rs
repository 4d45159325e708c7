// SPDX-License-Identifier: Apache-2.0

//! Approximating circuits over arbitrary distributions.
//!
//! Split the cube into prefix subcubes `c x {0,1}^ell`. For a generator output
//! `G = G(s)`, each subcube has a weighted sign sum
//! `T_c = sum_y H_c(y) (-1)^{f(c y) + G(c y)}`. The circuit outputs
//! `h(c) ^ G(x)` with `h(c) = [T_c < 0]`, which correlates with `f` by exactly
//! `E_{c ~ H'} |T_c|` where `H'` is the prefix marginal. A 4-wise uniform
//! generator makes `|T_c|` large on a constant fraction of subcubes for some
//! seed.

mod baseline;
mod report;

pub use baseline::{adversarial_distribution, exact_subcube_baseline, majority_subcube_baseline};
pub use report::{parse_report, ApproxReport, ReportFields};

use rayon::prelude::*;

use crate::circuit::{build_junta_table, lift_prefix, xor_compose, SizeReport};
use crate::config::SEED_BUDGET_CAP;
use crate::corefn::{agreement, approx_params, ApproxParams, Distribution, TruthTable};
use crate::kwise::Generator;
use crate::{Error, Result, Rng};

/// Relative slack on the `3 T_c^2 >= sum H_c^2` comparison, for rounding only.
const THRESHOLD_SLACK: f64 = 1e-12;

/// Slack on the final `agreement >= 1/2 + gamma` check, for rounding only.
const TARGET_SLACK: f64 = 1e-12;

/// Per-subcube statistics for one seed.
#[derive(Clone, Debug, PartialEq)]
pub struct SubcubeStats {
    pub ell: u32,
    /// `H'(c)`, the mass of subcube `c`.
    pub mass: Vec<f64>,
    /// `T_c`, zero on subcubes without mass.
    pub t: Vec<f64>,
    /// `sqrt(sum_y H_c(y)^2 / 3)`, zero on subcubes without mass.
    pub threshold: Vec<f64>,
    pub indicator: Vec<bool>,
    /// `E_{c ~ H'}[I_c]`.
    pub good_fraction: f64,
}

impl SubcubeStats {
    /// `E_{c ~ H'} |T_c|`, the correlation the seed yields.
    pub fn correlation(&self) -> f64 {
        self.mass.iter().zip(&self.t).map(|(m, t)| m * t.abs()).sum()
    }

    pub fn predicted_agreement(&self) -> f64 {
        (1.0 + self.correlation()) / 2.0
    }
}

/// Seed-independent per-subcube data.
struct Blocks {
    ell: u32,
    mass: Vec<f64>,
    sq: Vec<f64>,
}

impl Blocks {
    fn new(h: &Distribution, ell: u32) -> Self {
        let size = 1usize << ell;
        let (mass, sq) =
            h.weights().chunks(size).map(|b| (b.iter().sum::<f64>(), b.iter().map(|w| w * w).sum::<f64>())).unzip();
        Self { ell, mass, sq }
    }

    /// `S_c = H'(c) T_c` for the disagreement table `d = f ^ G`.
    fn signed_sums(&self, d: &TruthTable, h: &Distribution) -> Vec<f64> {
        let w = h.weights();
        let mut neg = vec![0.0f64; self.mass.len()];
        for (i, &word) in d.words().iter().enumerate() {
            let mut bits = word;
            let base = (i as u64) << 6;
            while bits != 0 {
                let x = base + bits.trailing_zeros() as u64;
                neg[(x >> self.ell) as usize] += w[x as usize];
                bits &= bits - 1;
            }
        }
        self.mass.iter().zip(neg).map(|(m, n)| m - 2.0 * n).collect()
    }

    fn good(&self, c: usize, s: f64) -> bool {
        self.mass[c] > 0.0 && 3.0 * s * s >= self.sq[c] * (1.0 - THRESHOLD_SLACK)
    }

    /// `(sum_c |S_c|, good fraction)`.
    fn score(&self, sums: &[f64]) -> (f64, f64) {
        let corr = sums.iter().map(|s| s.abs()).sum();
        let good = sums.iter().enumerate().filter(|&(c, &s)| self.good(c, s)).map(|(c, _)| self.mass[c]).sum();
        (corr, good)
    }

    fn stats(&self, sums: &[f64]) -> SubcubeStats {
        let mut t = Vec::with_capacity(sums.len());
        let mut threshold = Vec::with_capacity(sums.len());
        let mut indicator = Vec::with_capacity(sums.len());
        for (c, &s) in sums.iter().enumerate() {
            let m = self.mass[c];
            if m > 0.0 {
                t.push(s / m);
                threshold.push((self.sq[c] / 3.0).sqrt() / m);
            } else {
                t.push(0.0);
                threshold.push(0.0);
            }
            indicator.push(self.good(c, s));
        }
        let (_, good_fraction) = self.score(sums);
        SubcubeStats { ell: self.ell, mass: self.mass.clone(), t, threshold, indicator, good_fraction }
    }
}

fn check_shapes<G: Generator>(f: &TruthTable, h: &Distribution, ell: u32, gen: &G) -> Result<()> {
    let n = f.arity();
    if h.arity() != n {
        return Err(Error::ArityMismatch { left: n, right: h.arity() });
    }
    if gen.arity() != n {
        return Err(Error::ArityMismatch { left: n, right: gen.arity() });
    }
    if ell >= n {
        return Err(Error::InvalidArgument(format!("subcube depth {ell} must be below n = {n}")));
    }
    Ok(())
}

/// Per-subcube sums, thresholds and indicators for one seed.
pub fn subcube_stats<G: Generator>(
    f: &TruthTable,
    h: &Distribution,
    ell: u32,
    gen: &G,
    seed: &G::Seed,
) -> Result<SubcubeStats> {
    check_shapes(f, h, ell, gen)?;
    let blocks = Blocks::new(h, ell);
    let d = f.xor(&gen.expand(seed)?)?;
    Ok(blocks.stats(&blocks.signed_sums(&d, h)))
}

/// `h(c) = [T_c < 0]` on `n - ell` bits; subcubes with `T_c = 0` get 0.
pub fn build_h<G: Generator>(
    f: &TruthTable,
    h: &Distribution,
    ell: u32,
    gen: &G,
    seed: &G::Seed,
) -> Result<TruthTable> {
    check_shapes(f, h, ell, gen)?;
    let blocks = Blocks::new(h, ell);
    let d = f.xor(&gen.expand(seed)?)?;
    let sums = blocks.signed_sums(&d, h);
    TruthTable::from_fn(f.arity() - ell, |c| sums[c as usize] < 0.0)
}

#[derive(Clone, Debug)]
pub struct SeedSelection<S> {
    pub seed: S,
    pub stats: SubcubeStats,
    pub seeds_tried: u64,
}

/// Candidate seeds: the whole space when it fits in the budget, else `budget`
/// draws, sorted and deduplicated.
fn candidates<G: Generator>(gen: &G, budget: u64, rng: &mut Rng) -> Vec<G::Seed> {
    match gen.seed_count() {
        Some(count) if count <= budget => (0..count).map(|i| gen.seed_at(i)).collect(),
        _ => {
            let mut seeds: Vec<G::Seed> = (0..budget).map(|_| gen.random_seed(rng)).collect();
            seeds.sort();
            seeds.dedup();
            seeds
        }
    }
}

/// The candidate maximizing the agreement `h(c) ^ G(s)` reaches, lowest seed on ties.
pub fn select_seed<G: Generator>(
    f: &TruthTable,
    h: &Distribution,
    ell: u32,
    gen: &G,
    budget: u64,
    rng: &mut Rng,
) -> Result<SeedSelection<G::Seed>> {
    check_shapes(f, h, ell, gen)?;
    if budget == 0 {
        return Err(Error::InvalidArgument("seed budget must be positive".into()));
    }
    let blocks = Blocks::new(h, ell);
    let seeds = candidates(gen, budget, rng);
    let scores: Vec<f64> = seeds
        .par_iter()
        .map(|s| -> Result<f64> {
            let d = f.xor(&gen.expand(s)?)?;
            Ok(blocks.score(&blocks.signed_sums(&d, h)).0)
        })
        .collect::<Result<_>>()?;
    let mut best = 0;
    for (i, &sc) in scores.iter().enumerate() {
        if sc > scores[best] {
            best = i;
        }
    }
    let seed = seeds[best].clone();
    let d = f.xor(&gen.expand(&seed)?)?;
    let stats = blocks.stats(&blocks.signed_sums(&d, h));
    Ok(SeedSelection { seed, stats, seeds_tried: seeds.len() as u64 })
}

/// [`build_approximator_with`] with the depth derived from `gamma`, enforcing
/// the admissible range `27 / 2^(n/2) < gamma < 1/2`.
pub fn build_approximator<G: Generator>(
    f: &TruthTable,
    h: &Distribution,
    gamma: f64,
    gen: &G,
    budget: u64,
    rng: &mut Rng,
) -> Result<ApproxReport> {
    let params = approx_params(gamma, f.arity())?;
    build_approximator_with(f, h, params, gen, budget, rng)
}

/// Circuit `h(prefix) ^ G(s)` reaching agreement at least `1/2 + gamma` with
/// `f` under `H`. The seed budget doubles after each miss, up to
/// [`SEED_BUDGET_CAP`]. At depth 0 the circuit is an exact table for `f`.
pub fn build_approximator_with<G: Generator>(
    f: &TruthTable,
    h: &Distribution,
    params: ApproxParams,
    gen: &G,
    budget: u64,
    rng: &mut Rng,
) -> Result<ApproxReport> {
    let n = f.arity();
    let ell = params.ell;
    check_shapes(f, h, ell, gen)?;
    let target = params.target_agreement();

    if ell == 0 {
        let circuit = build_junta_table(f)?;
        let achieved = agreement(f, &circuit.truth_table()?, h)?;
        let sizes = SizeReport::new(n, params.gamma, circuit.size(), 0, 0);
        return Ok(ApproxReport {
            n,
            params,
            generator: gen.name().to_string(),
            chosen_seed: None,
            seeds_tried: 0,
            good_fraction: 1.0,
            predicted_agreement: 1.0,
            achieved_agreement: achieved,
            circuit,
            sizes,
        });
    }

    let mut b = budget.max(1);
    let mut tried = 0;
    let selection = loop {
        let sel = select_seed(f, h, ell, gen, b, rng)?;
        tried += sel.seeds_tried;
        let exhaustive = gen.seed_count().is_some_and(|c| c <= b);
        if sel.stats.predicted_agreement() >= target - TARGET_SLACK {
            break sel;
        }
        if exhaustive || b >= SEED_BUDGET_CAP {
            return Err(Error::TargetMissed { achieved: sel.stats.predicted_agreement(), target, seeds: tried });
        }
        b = (b * 2).min(SEED_BUDGET_CAP);
    };

    let h_table = build_h(f, h, ell, gen, &selection.seed)?;
    let table_circuit = lift_prefix(&build_junta_table(&h_table)?, n)?;
    let gen_circuit = gen.circuit(&selection.seed)?;
    let circuit = xor_compose(&table_circuit, &gen_circuit)?;
    let achieved = agreement(f, &circuit.truth_table()?, h)?;
    if achieved < target - TARGET_SLACK {
        return Err(Error::TargetMissed { achieved, target, seeds: tried });
    }
    let sizes = SizeReport::new(n, params.gamma, table_circuit.size(), gen_circuit.size(), 1);
    Ok(ApproxReport {
        n,
        params,
        generator: gen.name().to_string(),
        chosen_seed: Some(gen.seed_hex(&selection.seed)),
        seeds_tried: tried,
        good_fraction: selection.stats.good_fraction,
        predicted_agreement: selection.stats.predicted_agreement(),
        achieved_agreement: achieved,
        circuit,
        sizes,
    })
}
