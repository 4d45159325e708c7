// SPDX-License-Identifier: Apache-2.0

use std::fmt::Write as _;
use std::path::Path;

use hardcore::approx::{build_approximator_with, parse_report, ApproxReport, ReportFields};
use hardcore::circuit::netlist::{parse_netlist, write_netlist};
use hardcore::circuit::{lift_prefix, SizeReport};
use hardcore::corefn::io::{parse_truth_table, write_truth_table};
use hardcore::corefn::{agreement, approx_params, gamma_range, ApproxParams, Distribution, TruthTable};
use hardcore::hardness::{parse_certificate, sample_hard_junta, write_certificate};
use hardcore::kwise::{linear_gen_build, QuadGen};
use hardcore::{Error, Result, Rng};

use super::{junta_core, load_dist, save_dist, stream, DistChoice, STREAM_MAIN};
use crate::args::{ApproxArgs, DemoArgs, GenKind, SweepArgs};
use crate::files::{self, ensure, field, kv};

const F_TT: &str = "f.tt";
const APPROX_NET: &str = "approx.net";
const APPROX_RPT: &str = "approx.rpt";
const DEMO_TT: &str = "demo.tt";
const DEMO_CERT: &str = "demo.cert";
const DEMO_NET: &str = "demo.net";
const DEMO_RPT: &str = "demo.rpt";
const SWEEP: &str = "sweep.tsv";

/// Rounding slack on the agreement target.
const TARGET_SLACK: f64 = 1e-12;

/// Restarts allowed when building the code-based generator.
const LINEAR_RESTARTS: u32 = 100;

fn run_approx(
    f: &TruthTable,
    h: &Distribution,
    params: ApproxParams,
    gen: GenKind,
    budget: u64,
    rng: &mut Rng,
) -> Result<ApproxReport> {
    match gen {
        GenKind::Quad => build_approximator_with(f, h, params, &QuadGen::new(f.arity())?, budget, rng),
        GenKind::Linear => {
            let g = linear_gen_build(f.arity(), rng, LINEAR_RESTARTS)?;
            build_approximator_with(f, h, params, &g, budget, rng)
        }
    }
}

fn params_for(gamma: f64, n: u32, ell: Option<u32>) -> Result<ApproxParams> {
    match ell {
        Some(l) => ApproxParams::with_ell(gamma, n, l),
        None => approx_params(gamma, n),
    }
}

/// Checks the arithmetic of a report against its own inputs.
fn check_fields(r: &ReportFields, n: u32) -> Result<()> {
    ensure(r.n == n, "report arity")?;
    let p = if r.overridden { ApproxParams::with_ell(r.gamma, n, r.ell)? } else { ApproxParams::relaxed(r.gamma, n)? };
    ensure(p.ell == r.ell && p.clamped == r.clamped, "subcube depth follows from gamma")?;
    ensure(p.target_agreement() == r.target_agreement, "target agreement is 1/2 + gamma")?;
    ensure(
        r.measured_gates == r.table_gates + r.generator_gates + r.compose_gates,
        "gate count is the sum of its parts",
    )?;
    let sizes = SizeReport::new(n, r.gamma, r.table_gates, r.generator_gates, r.compose_gates);
    ensure(sizes.table_term == r.table_term && sizes.bound() == r.size_bound, "size-bound terms")?;
    Ok(())
}

pub fn approximate(a: &ApproxArgs, out: &Path, check: bool) -> Result<String> {
    if check {
        return check_approximate(out);
    }
    let mut rng = stream(a.rng, STREAM_MAIN);
    let f = match &a.tt {
        Some(p) => parse_truth_table(
            &std::fs::read_to_string(p)
                .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", p.display())))?,
        )?,
        None => TruthTable::random(a.n, &mut rng)?,
    };
    let n = f.arity();
    let gamma = a.gamma.ok_or_else(|| Error::InvalidArgument("--gamma is required".into()))?;
    let params = params_for(gamma, n, a.ell)?;
    let choice = DistChoice::parse(&a.dist);
    let h = choice.build(&f, n - params.ell, a.rng)?;
    let report = run_approx(&f, &h, params, a.gen, a.budget, &mut rng)?;
    files::write(out, F_TT, &write_truth_table(&f))?;
    let dist = save_dist(out, &choice, &h)?;
    files::write(out, APPROX_NET, &write_netlist(&report.circuit))?;
    let text = format!("{}dist = {dist}\n", report.to_text());
    files::write(out, APPROX_RPT, &text)?;
    Ok(text)
}

fn check_approximate(out: &Path) -> Result<String> {
    let text = files::read(out, APPROX_RPT)?;
    let r = parse_report(&text)?;
    let f = parse_truth_table(&files::read(out, F_TT)?)?;
    let n = f.arity();
    check_fields(&r, n)?;
    let h = load_dist(out, &field::<String>(&kv(&text), "dist")?, n)?;
    let c = parse_netlist(&files::read(out, APPROX_NET)?)?;
    ensure(c.arity() == n, "netlist arity")?;
    ensure(c.size() == r.measured_gates, "netlist size equals reported gates")?;
    let ag = agreement(&f, &c.truth_table()?, &h)?;
    ensure(
        ag.to_bits() == r.achieved_agreement.to_bits(),
        format!("agreement {ag:?} equals reported {:?}", r.achieved_agreement),
    )?;
    if ag < r.target_agreement - TARGET_SLACK {
        return Err(Error::TargetMissed { achieved: ag, target: r.target_agreement, seeds: r.seeds_tried });
    }
    Ok(format!("check = ok\nachieved_agreement = {ag:?}\ntarget_agreement = {:?}\n", r.target_agreement))
}

pub fn demo(a: &DemoArgs, out: &Path, check: bool) -> Result<String> {
    if check {
        return check_demo(out);
    }
    let n = a.n;
    if a.ell.is_none() {
        let (lo, hi) = gamma_range(n);
        if !(a.gamma > lo && a.gamma < hi) {
            return Err(Error::GammaOutOfRange { gamma: a.gamma, lo, hi, n });
        }
    }
    let mut rng = stream(a.rng, STREAM_MAIN);
    let (f, cert) = sample_hard_junta(n, a.s, a.delta, a.k, &mut rng)?;
    let k = cert.k;
    let core = junta_core(&f, k)?.expect("sampled junta");
    // the depth is taken on the k-bit core; the admissible range was checked on n
    let params = match a.ell {
        Some(l) => ApproxParams::with_ell(a.gamma, k, l)?,
        None => ApproxParams::relaxed(a.gamma, k)?,
    };
    let choice = DistChoice::parse(&a.dist);
    let h = choice.build(&f, k - params.ell, a.rng)?;
    let marginal = if k == n { h.clone() } else { h.marginal_prefix(k)? };
    let report = run_approx(&core, &marginal, params, a.gen, a.budget, &mut rng)?;
    let lifted = lift_prefix(&report.circuit, n)?;
    let lifted_ag = agreement(&f, &lifted.truth_table()?, &h)?;
    let target = params.target_agreement();
    if lifted_ag < target - TARGET_SLACK {
        return Err(Error::TargetMissed { achieved: lifted_ag, target, seeds: report.seeds_tried });
    }
    files::write(out, DEMO_TT, &write_truth_table(&f))?;
    files::write(out, DEMO_CERT, &write_certificate(&cert))?;
    files::write(out, DEMO_NET, &write_netlist(&lifted))?;
    let dist = save_dist(out, &choice, &h)?;
    let mut text = report.to_text();
    let _ = writeln!(text, "lifted_n = {n}");
    let _ = writeln!(text, "lifted_agreement = {lifted_ag:?}");
    let _ = writeln!(text, "hard_s = {}", cert.s);
    let _ = writeln!(text, "hard_delta = {:?}", cert.delta);
    let _ = writeln!(text, "certificate_valid = {}", cert.valid);
    let _ = writeln!(text, "dist = {dist}");
    files::write(out, DEMO_RPT, &text)?;
    Ok(text)
}

fn check_demo(out: &Path) -> Result<String> {
    let text = files::read(out, DEMO_RPT)?;
    let r = parse_report(&text)?;
    let map = kv(&text);
    let cert = parse_certificate(&files::read(out, DEMO_CERT)?)?;
    let f = parse_truth_table(&files::read(out, DEMO_TT)?)?;
    let n: u32 = field(&map, "lifted_n")?;
    ensure(f.arity() == n && cert.n == n, "hard function and certificate arity")?;
    ensure(junta_core(&f, cert.k)?.is_some(), format!("hard function depends only on its first {} inputs", cert.k))?;
    ensure(field::<bool>(&map, "certificate_valid")? == cert.valid, "certificate validity")?;
    check_fields(&r, cert.k)?;
    let h = load_dist(out, &field::<String>(&map, "dist")?, n)?;
    let c = parse_netlist(&files::read(out, DEMO_NET)?)?;
    ensure(c.arity() == n && c.size() == r.measured_gates, "netlist arity and size")?;
    let ag = agreement(&f, &c.truth_table()?, &h)?;
    let stated: f64 = field(&map, "lifted_agreement")?;
    ensure(ag.to_bits() == stated.to_bits(), format!("agreement {ag:?} equals reported {stated:?}"))?;
    if ag < r.target_agreement - TARGET_SLACK {
        return Err(Error::TargetMissed { achieved: ag, target: r.target_agreement, seeds: r.seeds_tried });
    }
    Ok(format!(
        "check = ok\nlifted_agreement = {ag:?}\ntarget_agreement = {:?}\ncertificate_valid = {}\n",
        r.target_agreement, cert.valid
    ))
}

fn sweep_text(ns: &[u32], gammas: &[f64], budget: u64, seed: u64) -> Result<String> {
    let join = |v: Vec<String>| v.join(",");
    let mut s = format!(
        "# size-sweep n={} gamma={} budget={budget} rng={seed}\n",
        join(ns.iter().map(|n| n.to_string()).collect()),
        join(gammas.iter().map(|g| format!("{g:?}")).collect()),
    );
    s.push_str("n\tgamma\tell\tgates\ttable_gates\tgenerator_gates\ttable_term\tsize_bound\twithin_bound\tagreement\n");
    for &n in ns {
        let mut rng = stream(seed, STREAM_MAIN);
        let f = TruthTable::random(n, &mut rng)?;
        let h = Distribution::uniform(n)?;
        let gen = QuadGen::new(n)?;
        for &g in gammas {
            let p = ApproxParams::relaxed(g, n)?;
            let r = build_approximator_with(&f, &h, p, &gen, budget, &mut rng)?;
            let z = &r.sizes;
            let _ = writeln!(
                s,
                "{n}\t{g:?}\t{}\t{}\t{}\t{}\t{:.6}\t{:.6}\t{}\t{:.6}",
                p.ell,
                z.measured_gates,
                z.table_gates,
                z.generator_gates,
                z.table_term,
                z.bound(),
                z.within_bound(),
                r.achieved_agreement
            );
        }
    }
    Ok(s)
}

pub fn size_sweep(a: &SweepArgs, out: &Path, check: bool) -> Result<String> {
    if check {
        let text = files::read(out, SWEEP)?;
        let head = text.lines().next().unwrap_or("");
        let map: std::collections::BTreeMap<String, String> = head
            .trim_start_matches("# size-sweep")
            .split_whitespace()
            .filter_map(|t| t.split_once('='))
            .map(|(k, v)| (k.to_string(), v.to_string()))
            .collect();
        let list = |key: &str| -> Result<Vec<String>> {
            Ok(field::<String>(&map, key)?.split(',').map(str::to_string).collect())
        };
        let ns = list("n")?.iter().map(|v| v.parse()).collect::<std::result::Result<Vec<u32>, _>>();
        let gs = list("gamma")?.iter().map(|v| v.parse()).collect::<std::result::Result<Vec<f64>, _>>();
        let (Ok(ns), Ok(gs)) = (ns, gs) else {
            return Err(Error::InvalidArgument("bad size-sweep header".into()));
        };
        let fresh = sweep_text(&ns, &gs, field(&map, "budget")?, field(&map, "rng")?)?;
        ensure(fresh == text, "size sweep reproduces byte for byte")?;
        let all = text.lines().skip(2).all(|l| l.split('\t').nth(8) == Some("true"));
        return Ok(format!("check = ok\nall_within_bound = {all}\n"));
    }
    let text = sweep_text(&a.n, &a.gamma, a.budget, a.rng)?;
    files::write(out, SWEEP, &text)?;
    Ok(text)
}
