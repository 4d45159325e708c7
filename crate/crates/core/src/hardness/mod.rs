// SPDX-License-Identifier: Apache-2.0

//! Hard random juntas.
//!
//! A uniformly random `k`-junta is `(1 - delta)`-approximated by a fixed
//! circuit with probability `Pr[Bin(2^k, 1/2) >= (1 - delta) 2^k]`. A union
//! bound over an explicit count of size-`s` circuits turns this into an
//! existence certificate when the product is below 1.

mod minsize;
mod oracle;
mod tail;

pub use minsize::{min_size_table, minsize_gate_limit, parse_minsize, write_minsize, MinSizeTable, MINSIZE_MAX_ARITY};
pub use oracle::{
    best_junta_correlation, best_small_agreement, verify_inapprox_bruteforce, verify_inapprox_with, JuntaFit,
    JUNTA_FIT_MAX_ARITY,
};
pub use tail::{chernoff_tail, exact_tail, hoeffding_tail, ln_binom_half, TailMode, TailProb};

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::config::{GATE_FUNCTIONS, SAMPLER_FACTOR};
use crate::corefn::{TruthTable, MAX_ARITY};
use crate::{Error, Result, Rng};

/// `((n + s + 2)^2 * 16)^s`: each of `s` gates picks an ordered operand pair
/// among inputs, gates and constants, and one of 16 functions.
pub fn count_circuits_bound(n: u32, s: u32) -> BigUint {
    let wires = BigUint::from(n as u64 + s as u64 + 2);
    let per_gate = &wires * &wires * BigUint::from(GATE_FUNCTIONS);
    per_gate.pow(s)
}

/// `log2` of a positive big integer.
pub fn log2_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 64 {
        return (x.to_u64().expect("fits").max(1) as f64).log2();
    }
    let top = (x >> (bits - 64)).to_u64().expect("64 bits");
    (top as f64).log2() + (bits - 64) as f64
}

#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub n: u32,
    pub k: u32,
    pub s: u32,
    pub delta: f64,
    pub circuit_count_bound: BigUint,
    /// `ceil((1 - delta) 2^k)`.
    pub threshold: u64,
    /// Exact when `2^k` is within the exact range, else Hoeffding.
    pub tail: TailProb,
    pub hoeffding: TailProb,
    pub product_log2: f64,
    pub valid: bool,
}

impl Certificate {
    pub fn count_log2(&self) -> f64 {
        log2_big(&self.circuit_count_bound)
    }

    /// `2^product_log2`, saturating to infinity.
    pub fn product(&self) -> f64 {
        self.product_log2.exp2()
    }
}

/// Certificate for `k`-juntas on `n` inputs against circuits of size `s`.
pub fn existence_certificate(n: u32, k: u32, s: u32, delta: f64) -> Result<Certificate> {
    if k > n || k > 62 {
        return Err(Error::InvalidArgument(format!("junta size {k} must be at most n = {n}")));
    }
    if !(0.0..=1.0).contains(&delta) {
        return Err(Error::InvalidArgument(format!("delta {delta} outside [0, 1]")));
    }
    let trials = 1u64 << k;
    let threshold = ((1.0 - delta) * trials as f64).ceil() as u64;
    let tail = chernoff_tail(trials, threshold)?;
    let hoeffding = hoeffding_tail(trials, threshold);
    let count = count_circuits_bound(n, s);
    let product_log2 = log2_big(&count) + tail.log2;
    Ok(Certificate {
        n,
        k,
        s,
        delta,
        circuit_count_bound: count,
        threshold,
        tail,
        hoeffding,
        product_log2,
        valid: product_log2 < 0.0,
    })
}

/// `max(1, ceil(log2(SAMPLER_FACTOR * s * log2 s)))`, where the search for a
/// valid `k` starts.
pub fn sampler_start_k(s: u32) -> u32 {
    let s = s as f64;
    let v = SAMPLER_FACTOR * s * s.log2();
    if v.is_nan() || v <= 2.0 {
        1
    } else {
        v.log2().ceil() as u32
    }
}

/// Smallest `k` in `[sampler_start_k(s), n]` with a valid certificate.
pub fn min_valid_k(n: u32, s: u32, delta: f64) -> Result<Option<Certificate>> {
    for k in sampler_start_k(s)..=n.min(62) {
        let c = existence_certificate(n, k, s, delta)?;
        if c.valid {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

/// A random `k`-junta on the first `k` inputs of `n`, with its certificate.
///
/// With `k = None`, `k` is the smallest value with a valid certificate. An
/// explicit `k` is used as given and the certificate may be invalid.
pub fn sample_hard_junta(
    n: u32,
    s: u32,
    delta: f64,
    k: Option<u32>,
    rng: &mut Rng,
) -> Result<(TruthTable, Certificate)> {
    if n == 0 || n > MAX_ARITY {
        return Err(Error::ArityOutOfRange { n, min: 1, max: MAX_ARITY });
    }
    let cert = match k {
        Some(k) => existence_certificate(n, k, s, delta)?,
        None => min_valid_k(n, s, delta)?.ok_or_else(|| {
            Error::InvalidArgument(format!("no k <= {n} gives a valid certificate for s = {s}, delta = {delta}"))
        })?,
    };
    if cert.k == 0 {
        return Err(Error::InvalidArgument("junta size must be positive".into()));
    }
    let g = TruthTable::random(cert.k, rng)?;
    Ok((g.junta_embed(n)?, cert))
}

/// `CERT` block of `key = value` lines closed by `END`.
pub fn write_certificate(c: &Certificate) -> String {
    let mut s = String::from("CERT\n");
    let mut kv = |k: &str, v: String| {
        let _ = writeln!(s, "{k} = {v}");
    };
    kv("n", c.n.to_string());
    kv("k", c.k.to_string());
    kv("s", c.s.to_string());
    kv("delta", format!("{:?}", c.delta));
    kv("circuit_count_bound", c.circuit_count_bound.to_string());
    kv("circuit_count_log2", format!("{:?}", c.count_log2()));
    kv("threshold", c.threshold.to_string());
    kv("tail_mode", c.tail.mode.as_str().into());
    kv("tail_prob", format!("{:?}", c.tail.value));
    kv("tail_log2", format!("{:?}", c.tail.log2));
    kv("hoeffding_log2", format!("{:?}", c.hoeffding.log2));
    kv("product_log2", format!("{:?}", c.product_log2));
    kv("valid", c.valid.to_string());
    s.push_str("END\n");
    s
}

/// Reads a `CERT` block and recomputes it from `(n, k, s, delta)`; every
/// stated field must match the recomputation exactly.
pub fn parse_certificate(text: &str) -> Result<Certificate> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty());
    match lines.next() {
        Some((_, "CERT")) => {}
        Some((l, _)) => return Err(Error::parse(l, "expected `CERT`")),
        None => return Err(Error::parse(1, "empty certificate")),
    }
    let mut map: BTreeMap<&str, (usize, &str)> = BTreeMap::new();
    let mut closed = false;
    for (l, line) in lines.by_ref() {
        if line == "END" {
            closed = true;
            break;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| Error::parse(l, "expected `key = value`"))?;
        map.insert(k.trim(), (l, v.trim()));
    }
    if !closed {
        return Err(Error::parse(0, "missing `END`"));
    }
    fn get<T: std::str::FromStr>(map: &BTreeMap<&str, (usize, &str)>, key: &str) -> Result<T> {
        let (line, v) = map.get(key).ok_or_else(|| Error::parse(0, format!("missing key `{key}`")))?;
        v.parse().map_err(|_| Error::parse(*line, format!("bad value for `{key}`: `{v}`")))
    }
    let c = existence_certificate(get(&map, "n")?, get(&map, "k")?, get(&map, "s")?, get(&map, "delta")?)?;
    let recomputed = write_certificate(&c);
    for line in recomputed.lines().skip(1).filter(|l| *l != "END") {
        let (k, v) = line.split_once(" = ").expect("own format");
        let stated: String = get(&map, k)?;
        if stated != v {
            return Err(Error::InvalidArgument(format!("certificate field `{k}` is `{stated}`, recomputed `{v}`")));
        }
    }
    Ok(c)
}
