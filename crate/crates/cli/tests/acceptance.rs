// SPDX-License-Identifier: Apache-2.0

//! Acceptance run: one `ACCEPTANCE <i> PASS|FAIL` line per criterion.
//! Exits nonzero when any criterion fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::collections::BTreeSet;
use std::time::Instant;

use common::{
    random_distribution, random_smooth, slow_mul, some_dependent_quad, tail_log2_exact_big, tail_log2_legendre,
    LogTables,
};
use hardcore::approx::{
    adversarial_distribution, build_approximator, build_approximator_with, majority_subcube_baseline, subcube_stats,
};
use hardcore::circuit::netlist::{parse_netlist, write_netlist};
use hardcore::circuit::predict_junta_size;
use hardcore::config::DEFAULT_SEED_BUDGET;
use hardcore::corefn::{agreement, ApproxParams, Distribution, TruthTable};
use hardcore::gf2k::FieldCtx;
use hardcore::hardness::{
    best_junta_correlation, chernoff_tail, existence_certificate, min_size_table, sample_hard_junta,
    verify_inapprox_with, TailMode,
};
use hardcore::kwise::{
    anticoncentration_check, linear_gen_build, verify_kwise, CertificateStatus, Generator, QuadGen, SeedMode,
};
use hardcore::{rng_from_seed, Rng};
use rand::Rng as _;

/// Criterion 3: recomputed agreement floor.
const C3_FLOOR: f64 = 0.52;
/// Criterion 3: total wall-clock limit in seconds.
const C3_SECONDS: f64 = 180.0;
/// Criterion 5: averaging floor `2/11`, compared as `11 * sum >= 2 * count`.
const C5_NUM: f64 = 2.0;
const C5_DEN: f64 = 11.0;
/// Criterion 7: sampled seeds per position set.
const C7_SAMPLES: u64 = 200_000;
/// Criterion 8: required number of hard juntas out of 100.
const C8_REQUIRED: usize = 90;
/// Criterion 9: relative error allowed against the tail oracle.
const C9_TAIL_REL: f64 = 1e-9;

type Outcome = (bool, String);

fn stream(seed: u64, stream: u64) -> Rng {
    let mut r = rng_from_seed(seed);
    r.set_stream(stream);
    r
}

/// Exact 4-wise uniformity of the quadratic generator over GF(4) and GF(8).
fn c1() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for k in [2u32, 3] {
        let gen = QuadGen::new(k).unwrap();
        let r = verify_kwise(&gen, 4, None, SeedMode::Exhaustive).unwrap();
        let equal = r.sets.iter().filter(|p| p.counts.iter().all(|&c| c == p.counts[0])).count();
        ok &= r.exhaustive && equal == r.sets.len() && r.seeds == 1 << (4 * k);
        parts.push(format!("GF(2^{k}) {}/{} quads equal counts over {} seeds", equal, r.sets.len(), r.seeds));
    }
    (ok, parts.join("; "))
}

/// Anticoncentration fraction at least 2/11 for 20 weight vectors over GF(16).
fn c2() -> Outcome {
    let gen = QuadGen::new(4).unwrap();
    let mut rng = stream(2, 0);
    let mut min = f64::INFINITY;
    let mut ok = true;
    for _ in 0..20 {
        let v: Vec<f64> = (0..16).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let r = anticoncentration_check(&gen, &v, SeedMode::Exhaustive).unwrap();
        ok &= r.seeds == 1 << 16 && 11 * r.hits >= 2 * r.seeds;
        min = min.min(r.fraction());
    }
    (ok, format!("min fraction {min:.6} over 20 vectors, 65536 seeds each (bound {:.6})", 2.0 / 11.0))
}

/// End-to-end approximator at n = 22, gamma = 0.02 under three distributions.
fn c3() -> Outcome {
    let start = Instant::now();
    let n = 22;
    let gamma = 0.02;
    let f = TruthTable::random(n, &mut rng_from_seed(1)).unwrap();
    let gen = QuadGen::new(n).unwrap();
    let ell = ApproxParams::relaxed(gamma, n).unwrap().ell;
    let uniform = Distribution::uniform(n).unwrap();
    let smooth = random_smooth(n, 0.5, &mut stream(1, 3));
    let adversarial = adversarial_distribution(&f, &majority_subcube_baseline(&f, n - ell).unwrap()).unwrap();
    let mut ok = ell == 2;
    let mut parts = vec![format!("ell={ell}")];
    for (name, h) in [("uniform", uniform), ("smooth", smooth), ("adversarial", adversarial)] {
        let r = build_approximator(&f, &h, gamma, &gen, DEFAULT_SEED_BUDGET, &mut rng_from_seed(1)).unwrap();
        let c = parse_netlist(&write_netlist(&r.circuit)).unwrap();
        let a = agreement(&f, &c.truth_table().unwrap(), &h).unwrap();
        ok &= a >= C3_FLOOR;
        parts.push(format!("{name} {a:.6}"));
    }
    let secs = start.elapsed().as_secs_f64();
    ok &= secs < C3_SECONDS;
    parts.push(format!("{secs:.1}s"));
    (ok, parts.join(", "))
}

/// Gate counts within the frozen size bound, and the clamped case equal to the junta builder's count.
fn c4() -> Outcome {
    let mut ok = true;
    let mut worst = 0.0f64;
    for n in [20u32, 22, 24] {
        let f = TruthTable::random(n, &mut stream(1, 0)).unwrap();
        let h = Distribution::uniform(n).unwrap();
        let gen = QuadGen::new(n).unwrap();
        for gamma in [0.02, 0.01, 0.005] {
            let p = ApproxParams::relaxed(gamma, n).unwrap();
            let r = build_approximator_with(&f, &h, p, &gen, DEFAULT_SEED_BUDGET, &mut stream(1, 2)).unwrap();
            let gates = r.circuit.size();
            ok &= gates == r.sizes.measured_gates && r.sizes.within_bound();
            worst = worst.max(gates as f64 / r.sizes.bound());
        }
    }
    let f = TruthTable::random(16, &mut rng_from_seed(1)).unwrap();
    let h = Distribution::uniform(16).unwrap();
    let r = build_approximator(&f, &h, 0.25, &QuadGen::new(16).unwrap(), DEFAULT_SEED_BUDGET, &mut rng_from_seed(1))
        .unwrap();
    let predicted = predict_junta_size(&f).unwrap();
    let exact = r.params.ell == 0 && r.params.clamped && r.circuit.size() as u64 == predicted;
    ok &= exact;
    (
        ok,
        format!(
            "9 grid points, max gates/bound {worst:.3}; clamped n=16 gamma=0.25: {} gates vs predicted {predicted}",
            r.circuit.size()
        ),
    )
}

/// Mean good fraction over all seeds at least 2/11 for 50 pairs per generator.
fn c5() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    let mut rng = stream(5, 0);
    for n in [2u32, 3] {
        let gen = QuadGen::new(n).unwrap();
        let ell = n - 1;
        let count = gen.seed_count().unwrap();
        let mut min = f64::INFINITY;
        for _ in 0..50 {
            let f = TruthTable::random(n, &mut rng).unwrap();
            let h = random_distribution(n, &mut rng);
            let sum: f64 =
                (0..count).map(|i| subcube_stats(&f, &h, ell, &gen, &gen.seed_at(i)).unwrap().good_fraction).sum();
            ok &= C5_DEN * sum >= C5_NUM * count as f64;
            min = min.min(sum / count as f64);
        }
        parts.push(format!("GF(2^{n}) ell={ell} min mean {min:.6}"));
    }
    (ok, parts.join("; "))
}

/// Parity has no junta correlation and the majority baseline is exactly 1/2.
fn c6() -> Outcome {
    let mut ok = true;
    let mut checked = 0;
    for n in 1..=10u32 {
        let f = TruthTable::parity(n).unwrap();
        let h = Distribution::uniform(n).unwrap();
        for k in 0..n {
            ok &= best_junta_correlation(&f, k, &h).unwrap().correlation == 0.0;
            let c = majority_subcube_baseline(&f, k).unwrap();
            ok &= agreement(&f, &c.truth_table().unwrap(), &h).unwrap() == 0.5;
            checked += 1;
        }
    }
    (ok, format!("{checked} (n, k) pairs exact"))
}

/// Code-based generator at n = 6: certified, and 50 sampled quads uniform at 5 sigma.
fn c7() -> Outcome {
    let start = Instant::now();
    let gen = match linear_gen_build(6, &mut stream(7, 0), 100) {
        Ok(g) => g,
        Err(e) => return (false, format!("build failed: {e}")),
    };
    let vs: Vec<Vec<u64>> = (1..64u64).map(|x| gen.vector(x).unwrap()).collect();
    let independent = !some_dependent_quad(&vs);
    let mut rng = stream(7, 1);
    let mut sets = BTreeSet::new();
    while sets.len() < 50 {
        let mut s = BTreeSet::new();
        while s.len() < 4 {
            s.insert(rng.gen_range(0..64u64));
        }
        sets.insert(s.into_iter().collect::<Vec<u64>>());
    }
    let sets: Vec<Vec<u64>> = sets.into_iter().collect();
    let mut seeds = stream(7, 2);
    let r = verify_kwise(&gen, 4, Some(sets), SeedMode::Sampled { seeds: C7_SAMPLES, rng: &mut seeds }).unwrap();
    let uniform = r.sets.iter().filter(|p| p.uniform).count();
    let ok = gen.certificate() == CertificateStatus::Verified && independent && uniform == 50 && r.seeds == C7_SAMPLES;
    (
        ok,
        format!(
            "certificate {}, subset-sum oracle {}, {uniform}/50 quads uniform at {C7_SAMPLES} seeds, {:.1}s",
            gen.certificate().as_str(),
            if independent { "independent" } else { "dependent" },
            start.elapsed().as_secs_f64()
        ),
    )
}

/// Toy tightness: at least 90 of 100 random 4-juntas not 0.75-approximable by two gates.
fn c8() -> Outcome {
    let table = min_size_table(4, 2).unwrap();
    let mut hard = 0;
    for seed in 0..100 {
        let (f, _) = sample_hard_junta(4, 2, 0.25, Some(4), &mut rng_from_seed(seed)).unwrap();
        if verify_inapprox_with(&table, &f, 0.25).unwrap() {
            hard += 1;
        }
    }
    let cert = existence_certificate(4, 4, 2, 0.25).unwrap();
    (
        hard >= C8_REQUIRED,
        format!(
            "{hard}/100 hard (need {C8_REQUIRED}); certificate product {:.1}, valid={}",
            cert.product(),
            cert.valid
        ),
    )
}

fn rel_err(a: f64, b: f64) -> f64 {
    ((a - b) * std::f64::consts::LN_2).exp_m1().abs()
}

/// Tail vs oracle, field multiplication vs log tables, minimum-size witnesses.
fn c9() -> Outcome {
    let mut worst = 0.0f64;
    let mut cases = 0;
    let mut modes_ok = true;
    for trials in [1u64, 5, 16, 64, 100, 1000, 4096] {
        for t in 0..=trials.min(64) {
            let t = t * trials / trials.min(64);
            let got = chernoff_tail(trials, t).unwrap();
            modes_ok &= got.mode == TailMode::Exact;
            worst = worst.max(rel_err(got.log2, tail_log2_exact_big(trials, t)));
            cases += 1;
        }
    }
    for k in [13u32, 16, 20] {
        let trials = 1u64 << k;
        for frac in [0.51, 0.6, 0.7, 0.75, 0.9] {
            let t = (frac * trials as f64).ceil() as u64;
            let got = chernoff_tail(trials, t).unwrap();
            modes_ok &= got.mode == TailMode::Exact;
            worst = worst.max(rel_err(got.log2, tail_log2_legendre(trials, t)));
            cases += 1;
        }
    }
    let tail_ok = modes_ok && worst <= C9_TAIL_REL;

    let mut mul_ok = true;
    for k in 2..=8u32 {
        let ctx = FieldCtx::find_irreducible(k).unwrap();
        let logs = LogTables::new(k, ctx.modulus());
        for a in 0..1u64 << k {
            for b in 0..1u64 << k {
                let m = ctx.mul(a, b);
                mul_ok &= m == logs.mul(a, b) && m == slow_mul(k, ctx.modulus(), a, b);
            }
        }
    }

    let mut witnesses = 0;
    let mut wit_ok = true;
    for (n, s) in [(2u32, 2u32), (3, 4), (4, 3)] {
        let table = min_size_table(n, s).unwrap();
        for (t, z) in table.iter() {
            let c = parse_netlist(&write_netlist(&table.witness(&t).unwrap())).unwrap();
            wit_ok &= c.truth_table_pointwise().unwrap() == t && c.size() as u32 == z;
            witnesses += 1;
        }
    }
    (
        tail_ok && mul_ok && wit_ok,
        format!(
            "tail max rel err {worst:.2e} over {cases} cases; mul k<=8 {}; {witnesses} witnesses {}",
            if mul_ok { "exact" } else { "MISMATCH" },
            if wit_ok { "re-evaluate" } else { "MISMATCH" }
        ),
    )
}

fn main() {
    let criteria: [(u32, fn() -> Outcome); 9] =
        [(1, c1), (2, c2), (3, c3), (4, c4), (5, c5), (6, c6), (7, c7), (8, c8), (9, c9)];
    let mut failed = 0;
    for (i, run) in criteria {
        let start = Instant::now();
        let (ok, detail) = run();
        if !ok {
            failed += 1;
        }
        println!(
            "ACCEPTANCE {i} {}: {detail} [{:.1}s]",
            if ok { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64()
        );
    }
    println!("ACCEPTANCE SUMMARY: {}/9 pass", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
