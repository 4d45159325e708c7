// SPDX-License-Identifier: Apache-2.0

mod common;

use common::{agreement_pointwise, random_distribution, random_smooth};
use hardcore::approx::{
    adversarial_distribution, build_approximator, build_approximator_with, build_h, exact_subcube_baseline,
    majority_subcube_baseline, select_seed, subcube_stats,
};
use hardcore::circuit::netlist::{parse_netlist, write_netlist};
use hardcore::config::DEFAULT_SEED_BUDGET;
use hardcore::corefn::{agreement, ApproxParams, Distribution, TruthTable};
use hardcore::kwise::{Generator, QuadGen};
use hardcore::rng_from_seed;

/// `(mass_c, T_c, sum_y H_c(y)^2)` by direct summation over each block.
fn oracle_blocks(f: &TruthTable, g: &TruthTable, h: &Distribution, ell: u32) -> Vec<(f64, f64, f64)> {
    let n = f.arity();
    (0..1u64 << (n - ell))
        .map(|c| {
            let xs: Vec<u64> = (0..1u64 << ell).map(|y| (c << ell) | y).collect();
            let mass: f64 = xs.iter().map(|&x| h.weight(x)).sum();
            if mass == 0.0 {
                return (0.0, 0.0, 0.0);
            }
            let t: f64 = xs
                .iter()
                .map(|&x| {
                    let s = if f.get(x) == g.get(x) { 1.0 } else { -1.0 };
                    s * h.weight(x) / mass
                })
                .sum();
            let q: f64 = xs.iter().map(|&x| (h.weight(x) / mass).powi(2)).sum();
            (mass, t, q)
        })
        .collect()
}

#[test]
fn stats_match_direct_block_sums() {
    let mut rng = rng_from_seed(11);
    for (n, ell) in [(6u32, 2u32), (8, 3), (9, 1)] {
        let gen = QuadGen::new(n).unwrap();
        for _ in 0..5 {
            let f = TruthTable::random(n, &mut rng).unwrap();
            let h = random_distribution(n, &mut rng);
            let seed = gen.random_seed(&mut rng);
            let st = subcube_stats(&f, &h, ell, &gen, &seed).unwrap();
            let g = gen.expand(&seed).unwrap();
            let oracle = oracle_blocks(&f, &g, &h, ell);
            let mut good_mass = 0.0;
            for (c, &(m, t, q)) in oracle.iter().enumerate() {
                assert!((st.mass[c] - m).abs() < 1e-12);
                assert!((st.t[c] - t).abs() < 1e-12, "T_{c}: {} vs {t}", st.t[c]);
                assert!((st.threshold[c] - (q / 3.0).sqrt()).abs() < 1e-12);
                let margin = 3.0 * t * t - q;
                if margin.abs() > 1e-9 {
                    assert_eq!(st.indicator[c], m > 0.0 && margin > 0.0, "indicator of {c}");
                }
                if st.indicator[c] {
                    good_mass += m;
                }
            }
            assert!((st.good_fraction - good_mass).abs() < 1e-12);
        }
    }
}

/// Predicted agreement from the stats, agreement of the built function, and
/// agreement of the re-parsed netlist coincide.
#[test]
fn correlation_chain() {
    let mut rng = rng_from_seed(5);
    for (n, ell) in [(10u32, 2u32), (12, 3)] {
        let gen = QuadGen::new(n).unwrap();
        let f = TruthTable::random(n, &mut rng).unwrap();
        let h = random_distribution(n, &mut rng);
        let params = ApproxParams::with_ell(0.01, n, ell).unwrap();
        let report = build_approximator_with(&f, &h, params, &gen, 64, &mut rng_from_seed(3)).unwrap();
        let sel = select_seed(&f, &h, ell, &gen, 64, &mut rng_from_seed(3)).unwrap();
        assert_eq!(report.chosen_seed.as_deref(), Some(gen.seed_hex(&sel.seed).as_str()));

        let hc = build_h(&f, &h, ell, &gen, &sel.seed).unwrap();
        let g = gen.expand(&sel.seed).unwrap();
        let built = TruthTable::from_fn(n, |x| hc.get(x >> ell) ^ g.get(x)).unwrap();
        let direct = agreement_pointwise(&f, &built, &h);

        let c = parse_netlist(&write_netlist(&report.circuit)).unwrap();
        let from_net = agreement_pointwise(&f, &c.truth_table_pointwise().unwrap(), &h);

        let corr: f64 = oracle_blocks(&f, &g, &h, ell).iter().map(|(m, t, _)| m * t.abs()).sum();
        assert!((sel.stats.predicted_agreement() - (1.0 + corr) / 2.0).abs() < 1e-12);
        assert!((report.predicted_agreement - direct).abs() < 1e-12);
        assert!((report.achieved_agreement - from_net).abs() < 1e-12);
        assert!((direct - from_net).abs() < 1e-12);
    }
}

/// A good subcube has `|T_c| >= sqrt(sum H_c^2 / 3) >= sqrt(1 / (3 2^ell))`,
/// so the correlation is at least `good_fraction * sqrt(1 / (3 2^ell))`.
#[test]
fn cauchy_schwarz_floor_every_seed() {
    let mut rng = rng_from_seed(8);
    for (n, ell) in [(2u32, 1u32), (3, 1), (3, 2)] {
        let gen = QuadGen::new(n).unwrap();
        let f = TruthTable::random(n, &mut rng).unwrap();
        let h = random_distribution(n, &mut rng);
        let unit = (1.0 / (3.0 * 2f64.powi(ell as i32))).sqrt();
        for i in 0..gen.seed_count().unwrap() {
            let st = subcube_stats(&f, &h, ell, &gen, &gen.seed_at(i)).unwrap();
            assert!(st.correlation() >= st.good_fraction * unit - 1e-12, "seed {i}");
        }
    }
    let gen = QuadGen::new(10).unwrap();
    let f = TruthTable::random(10, &mut rng).unwrap();
    let h = random_distribution(10, &mut rng);
    let unit = (1.0 / (3.0 * 16.0f64)).sqrt();
    for _ in 0..200 {
        let st = subcube_stats(&f, &h, 4, &gen, &gen.random_seed(&mut rng)).unwrap();
        assert!(st.correlation() >= st.good_fraction * unit - 1e-12);
    }
}

#[test]
fn average_good_fraction_over_all_seeds() {
    let mut rng = rng_from_seed(21);
    for (n, ell) in [(2u32, 1u32), (3, 1), (3, 2)] {
        let gen = QuadGen::new(n).unwrap();
        let count = gen.seed_count().unwrap();
        for pair in 0..10 {
            let f = TruthTable::random(n, &mut rng).unwrap();
            let h = if pair % 2 == 0 { random_distribution(n, &mut rng) } else { random_smooth(n, 0.5, &mut rng) };
            let total: f64 =
                (0..count).map(|i| subcube_stats(&f, &h, ell, &gen, &gen.seed_at(i)).unwrap().good_fraction).sum();
            assert!(total / count as f64 >= 2.0 / 11.0, "n={n} ell={ell} pair {pair}: {}", total / count as f64);
        }
    }
}

#[test]
fn selection_is_reproducible() {
    let gen = QuadGen::new(10).unwrap();
    let mut rng = rng_from_seed(2);
    let f = TruthTable::random(10, &mut rng).unwrap();
    let h = random_distribution(10, &mut rng);
    let a = select_seed(&f, &h, 4, &gen, 50, &mut rng_from_seed(9)).unwrap();
    let b = select_seed(&f, &h, 4, &gen, 50, &mut rng_from_seed(9)).unwrap();
    assert_eq!(a.seed, b.seed);
    assert_eq!(a.stats, b.stats);
    assert!(a.seeds_tried <= 50);
}

#[test]
fn complement_of_generator_gives_h_one() {
    let n = 7;
    let gen = QuadGen::new(n).unwrap();
    let mut rng = rng_from_seed(4);
    let seed = gen.random_seed(&mut rng);
    let f = gen.expand(&seed).unwrap().not();
    let h = random_distribution(n, &mut rng);
    let hc = build_h(&f, &h, 3, &gen, &seed).unwrap();
    let st = subcube_stats(&f, &h, 3, &gen, &seed).unwrap();
    for c in 0..1u64 << (n - 3) {
        if st.mass[c as usize] > 0.0 {
            assert!(hc.get(c));
            assert!((st.t[c as usize] + 1.0).abs() < 1e-12);
        }
    }
}

/// Regression pin for the default end-to-end run at n = 22, gamma = 0.02.
#[test]
fn end_to_end_n22_uniform() {
    let mut rng = rng_from_seed(1);
    let f = TruthTable::random(22, &mut rng).unwrap();
    let h = Distribution::uniform(22).unwrap();
    let gen = QuadGen::new(22).unwrap();
    let r = build_approximator(&f, &h, 0.02, &gen, DEFAULT_SEED_BUDGET, &mut rng).unwrap();
    assert_eq!(r.params.ell, 2);
    assert!(r.achieved_agreement >= 0.52);
    let direct = agreement(&f, &r.circuit.truth_table().unwrap(), &h).unwrap();
    assert_eq!(direct, r.achieved_agreement);
    assert_eq!(r.achieved_agreement, 0.6878883838653564);
    assert_eq!(r.chosen_seed.as_deref(), Some("97503c46a730a8642b9568"));

    // same f under a point mass: the single point is matched
    let x0 = 0x2b_cafe;
    let p = Distribution::point_mass(22, x0).unwrap();
    let r = build_approximator(&f, &p, 0.02, &gen, DEFAULT_SEED_BUDGET, &mut rng).unwrap();
    assert_eq!(r.achieved_agreement, 1.0);
    assert_eq!(r.circuit.eval(x0).unwrap(), f.get(x0));
}

#[test]
fn majority_baseline_parity_and_juntas() {
    let mut rng = rng_from_seed(6);
    for n in 1..=10u32 {
        let f = TruthTable::parity(n).unwrap();
        let h = Distribution::uniform(n).unwrap();
        for k in 0..n {
            let c = majority_subcube_baseline(&f, k).unwrap();
            assert_eq!(agreement(&f, &c.truth_table().unwrap(), &h).unwrap(), 0.5, "n={n} k={k}");
        }
    }
    for k in 1..=6u32 {
        let g = TruthTable::random(k, &mut rng).unwrap();
        let f = g.junta_embed(12).unwrap();
        let c = majority_subcube_baseline(&f, k).unwrap();
        assert_eq!(c.truth_table().unwrap(), f);
    }
}

/// Over 100 random `f` at n = 16, k = 10, the baseline clears
/// `1/2 + 0.3 * 2^(-(n-k)/2)` for at least 90 of them.
#[test]
fn majority_baseline_advantage_monte_carlo() {
    let (n, k) = (16u32, 10u32);
    let bar = 0.5 + 0.3 * 2f64.powf(-((n - k) as f64) / 2.0);
    let h = Distribution::uniform(n).unwrap();
    let mut rng = rng_from_seed(16);
    let mut hits = 0;
    for _ in 0..100 {
        let f = TruthTable::random(n, &mut rng).unwrap();
        let c = majority_subcube_baseline(&f, k).unwrap();
        // direct count: per block, the larger of ones and zeros
        let block = 1u64 << (n - k);
        let agree: u64 = (0..1u64 << k)
            .map(|p| {
                let ones = (0..block).filter(|&y| f.get((p << (n - k)) | y)).count() as u64;
                ones.max(block - ones)
            })
            .sum();
        let a = agreement(&f, &c.truth_table().unwrap(), &h).unwrap();
        assert_eq!(a, agree as f64 / (1u64 << n) as f64);
        if a >= bar {
            hits += 1;
        }
    }
    assert!(hits >= 90, "{hits}/100 above {bar}");
}

#[test]
fn exact_baseline() {
    let mut rng = rng_from_seed(12);
    let f = TruthTable::random(12, &mut rng).unwrap();
    let h = Distribution::uniform(12).unwrap();
    let c = exact_subcube_baseline(&f, 0.125).unwrap();
    let a = agreement_pointwise(&f, &c.truth_table().unwrap(), &h);
    assert!(a >= 0.625, "{a}");

    let c = exact_subcube_baseline(&f, 0.5).unwrap();
    assert_eq!(c.truth_table().unwrap(), f);

    let one = TruthTable::constant(12, true).unwrap();
    let c = exact_subcube_baseline(&one, 0.2).unwrap();
    assert_eq!(c.size(), 0);
    assert_eq!(c.truth_table().unwrap(), one);
}

#[test]
fn adversarial_distribution_cases() {
    let mut rng = rng_from_seed(13);
    let f = TruthTable::random(8, &mut rng).unwrap();
    let exact = exact_subcube_baseline(&f, 0.5).unwrap();
    let h = adversarial_distribution(&f, &exact).unwrap();
    assert_eq!(h, Distribution::uniform(8).unwrap());

    let mut g = f.clone();
    g.set(77, !f.get(77));
    let c = hardcore::circuit::build_junta_table(&g).unwrap();
    let h = adversarial_distribution(&f, &c).unwrap();
    assert_eq!(h, Distribution::point_mass(8, 77).unwrap());
    assert_eq!(agreement(&f, &g, &h).unwrap(), 0.0);
}

/// The approximator rebuilt over the baseline's disagreement set clears
/// `1/2 + gamma` while the baseline scores 0 there.
#[test]
fn adversarial_demo_n16() {
    let n = 16;
    let gamma = 0.11;
    let ell = 2;
    let mut rng = rng_from_seed(1);
    let f = TruthTable::random(n, &mut rng).unwrap();
    let base = majority_subcube_baseline(&f, n - ell).unwrap();
    let h = adversarial_distribution(&f, &base).unwrap();
    assert_eq!(agreement(&f, &base.truth_table().unwrap(), &h).unwrap(), 0.0);
    let gen = QuadGen::new(n).unwrap();
    let params = ApproxParams::with_ell(gamma, n, ell).unwrap();
    let r = build_approximator_with(&f, &h, params, &gen, DEFAULT_SEED_BUDGET, &mut rng).unwrap();
    let c = parse_netlist(&write_netlist(&r.circuit)).unwrap();
    let a = agreement_pointwise(&f, &c.truth_table().unwrap(), &h);
    assert!(a >= 0.5 + gamma, "{a}");
}

#[test]
fn smooth_distribution_end_to_end() {
    let mut rng = rng_from_seed(14);
    let n = 18;
    let f = TruthTable::random(n, &mut rng).unwrap();
    let h = random_smooth(n, 0.5, &mut rng);
    let gen = QuadGen::new(n).unwrap();
    let params = ApproxParams::relaxed(0.02, n).unwrap();
    let r = build_approximator_with(&f, &h, params, &gen, DEFAULT_SEED_BUDGET, &mut rng).unwrap();
    assert!(r.achieved_agreement >= 0.52);
    assert!(r.good_fraction >= 2.0 / 11.0);
}
