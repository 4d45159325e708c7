// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;

use hardcore::kwise::io::{parse_kwgen, write_linear, write_quad, KwGenFile};
use hardcore::kwise::{
    anticoncentration_check, linear_gen_build, verify_kwise, Generator, QuadGen, SeedMode, EXHAUSTIVE_SEED_LIMIT,
};
use hardcore::{Error, Result};
use rand::Rng as _;

use super::{stream, STREAM_MAIN, STREAM_SEEDS, STREAM_SETS};
use crate::args::{AntiArgs, GenKind, KwiseArgs};
use crate::files::{self, ensure, field, kv};

const KWGEN: &str = "kwgen.txt";
const KWISE: &str = "kwise.txt";
const ANTI: &str = "anticonc.txt";

/// Restarts allowed when building the code-based generator.
const LINEAR_RESTARTS: u32 = 100;

/// Distinct random position sets, each sorted, in draw order.
fn random_sets(len: u64, order: u32, count: usize, seed: u64) -> Result<Vec<Vec<u64>>> {
    if (order as u64) > len {
        return Err(Error::InvalidArgument(format!("order {order} exceeds {len} positions")));
    }
    let mut rng = stream(seed, STREAM_SETS);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut attempts = 0u64;
    while out.len() < count {
        attempts += 1;
        if attempts > 1000 * count as u64 + 1000 {
            return Err(Error::InvalidArgument(format!("cannot draw {count} distinct position sets")));
        }
        let mut s = BTreeSet::new();
        while s.len() < order as usize {
            s.insert(rng.gen_range(0..len));
        }
        let s: Vec<u64> = s.into_iter().collect();
        if seen.insert(s.clone()) {
            out.push(s);
        }
    }
    Ok(out)
}

fn kwise_text<G: Generator>(
    gen: &G,
    order: u32,
    sets: Option<Vec<Vec<u64>>>,
    samples: u64,
    seed: u64,
) -> Result<String> {
    let exhaustive = gen.seed_count().is_some_and(|c| c <= EXHAUSTIVE_SEED_LIMIT);
    let mut rng = stream(seed, STREAM_SEEDS);
    let mode = if exhaustive { SeedMode::Exhaustive } else { SeedMode::Sampled { seeds: samples, rng: &mut rng } };
    let listed = sets.is_some();
    let report = verify_kwise(gen, order, sets, mode)?;
    let mut s = format!(
        "KWISE gen={} n={} order={order} mode={} seeds={} samples={samples} sets={} rng={seed}\n",
        gen.name(),
        gen.arity(),
        if exhaustive { "exhaustive" } else { "sampled" },
        report.seeds,
        if listed { "listed" } else { "all" },
    );
    for p in &report.sets {
        let verdict = match (p.uniform, exhaustive) {
            (true, true) => "EXACT UNIFORM",
            (true, false) => "UNIFORM (5 sigma)",
            (false, _) => "NOT UNIFORM",
        };
        let pos: Vec<String> = p.positions.iter().map(|x| x.to_string()).collect();
        let cnt: Vec<String> = p.counts.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(s, "positions={} counts={} {verdict}", pos.join(","), cnt.join(","));
    }
    let _ = writeln!(s, "all_uniform = {}", report.all_uniform());
    Ok(s)
}

fn kwise_for_file(gen: &KwGenFile, order: u32, sets: Option<Vec<Vec<u64>>>, samples: u64, seed: u64) -> Result<String> {
    match gen {
        KwGenFile::Quad { gen, .. } => kwise_text(gen, order, sets, samples, seed),
        KwGenFile::Linear(g) => kwise_text(g, order, sets, samples, seed),
    }
}

fn arity(gen: &KwGenFile) -> u32 {
    match gen {
        KwGenFile::Quad { gen, .. } => gen.arity(),
        KwGenFile::Linear(g) => g.arity(),
    }
}

pub fn verify(a: &KwiseArgs, out: &Path, check: bool) -> Result<String> {
    if check {
        return check_verify(out);
    }
    let spec = match a.gen {
        GenKind::Quad => write_quad(&QuadGen::new(a.n)?, &[0; 4]),
        GenKind::Linear => write_linear(&linear_gen_build(a.n, &mut stream(a.rng, STREAM_MAIN), LINEAR_RESTARTS)?),
    };
    let gen = parse_kwgen(&spec)?;
    let sets = match a.sets {
        Some(count) => Some(random_sets(1u64 << arity(&gen), a.order, count, a.rng)?),
        None => None,
    };
    let text = kwise_for_file(&gen, a.order, sets, a.samples, a.rng)?;
    files::write(out, KWGEN, &spec)?;
    files::write(out, KWISE, &text)?;
    Ok(text)
}

fn check_verify(out: &Path) -> Result<String> {
    let gen = parse_kwgen(&files::read(out, KWGEN)?)?;
    let text = files::read(out, KWISE)?;
    let head = text.lines().next().unwrap_or("");
    let map: std::collections::BTreeMap<String, String> = head
        .split_whitespace()
        .skip(1)
        .filter_map(|t| t.split_once('='))
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect();
    let sets = if field::<String>(&map, "sets")? == "listed" {
        let mut v = Vec::new();
        for line in text.lines().filter(|l| l.starts_with("positions=")) {
            let list = line["positions=".len()..].split(' ').next().unwrap_or("");
            let s: std::result::Result<Vec<u64>, _> = list.split(',').map(str::parse).collect();
            v.push(s.map_err(|_| Error::InvalidArgument(format!("bad positions in `{line}`")))?);
        }
        Some(v)
    } else {
        None
    };
    let fresh = kwise_for_file(&gen, field(&map, "order")?, sets, field(&map, "samples")?, field(&map, "rng")?)?;
    ensure(fresh == text, "pattern counts reproduce byte for byte")?;
    Ok(format!("check = ok\nall_uniform = {}\n", field::<bool>(&kv(&text), "all_uniform")?))
}

/// `11 hits >= 2 seeds`, exactly.
fn meets_bound(hits: u64, seeds: u64) -> bool {
    11 * hits as u128 >= 2 * seeds as u128
}

fn anti_text(n: u32, vectors: &[Vec<f64>]) -> Result<String> {
    let gen = QuadGen::new(n)?;
    let mut s = format!("ANTICONC gen=quad n={n} seeds={} bound=2/11\n", gen.seed_count().unwrap_or(0));
    let mut min = f64::INFINITY;
    let mut all = true;
    for (i, v) in vectors.iter().enumerate() {
        let r = anticoncentration_check(&gen, v, SeedMode::Exhaustive)?;
        let pass = meets_bound(r.hits, r.seeds);
        all &= pass;
        min = min.min(r.fraction());
        let w: Vec<String> = v.iter().map(|x| format!("{x:?}")).collect();
        let _ = writeln!(
            s,
            "v{i} hits={} fraction={:.6} {} weights={}",
            r.hits,
            r.fraction(),
            if pass { "PASS" } else { "FAIL" },
            w.join(",")
        );
    }
    let _ = writeln!(s, "min_fraction = {min:.6}");
    let _ = writeln!(s, "all_pass = {all}");
    Ok(s)
}

pub fn anticoncentration(a: &AntiArgs, out: &Path, check: bool) -> Result<String> {
    if check {
        let text = files::read(out, ANTI)?;
        let n: u32 = text
            .lines()
            .next()
            .and_then(|h| h.split_whitespace().find_map(|t| t.strip_prefix("n=")))
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| Error::InvalidArgument("bad ANTICONC header".into()))?;
        let mut vectors = Vec::new();
        for line in text.lines().filter(|l| l.starts_with('v')) {
            let w = line.split_once("weights=").map(|x| x.1).unwrap_or("");
            let v: std::result::Result<Vec<f64>, _> = w.split(',').map(str::parse).collect();
            vectors.push(v.map_err(|_| Error::InvalidArgument(format!("bad weights in `{line}`")))?);
        }
        let fresh = anti_text(n, &vectors)?;
        ensure(fresh == text, "anticoncentration counts reproduce byte for byte")?;
        return Ok(format!("check = ok\nall_pass = {}\n", field::<bool>(&kv(&text), "all_pass")?));
    }
    let gen = QuadGen::new(a.n)?;
    if gen.seed_count().is_none_or(|c| c > EXHAUSTIVE_SEED_LIMIT) {
        return Err(Error::ScaleGuard(format!("anticoncentration runs over all seeds; n = {} has too many", a.n)));
    }
    let mut rng = stream(a.rng, STREAM_MAIN);
    let len = 1usize << a.n;
    let vectors: Vec<Vec<f64>> = (0..a.vectors).map(|_| (0..len).map(|_| rng.gen_range(-1.0..1.0)).collect()).collect();
    let text = anti_text(a.n, &vectors)?;
    files::write(out, ANTI, &text)?;
    Ok(text)
}
