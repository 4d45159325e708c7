// SPDX-License-Identifier: Apache-2.0

//! Text formats for truth tables and distributions.
//!
//! Truth table:
//!
//! ```text
//! TT n=<n>
//! <hex>
//! ```
//!
//! The hex string lists the `2^n` bits in index order, four bits per digit, the
//! first bit of each group in the digit's high bit. For `n = 1` the single digit
//! carries two zero padding bits at the bottom.
//!
//! Distribution:
//!
//! ```text
//! DIST n=<n>
//! <index> <weight>
//! ...
//! ```
//!
//! Omitted indices have weight zero. Weights summing to 1 within
//! [`SUM_TOLERANCE`] load unchanged, so a written distribution reads back
//! bit-identical. Totals within [`LOAD_TOLERANCE`] of 1 are renormalized and
//! anything further off is rejected.

use std::fmt::Write as _;

use crate::corefn::{Distribution, TruthTable, SUM_TOLERANCE};
use crate::{Error, Result};

pub const LOAD_TOLERANCE: f64 = 1e-6;

pub(crate) fn bits_to_hex(t: &TruthTable) -> String {
    let len = t.len();
    let digits = len.div_ceil(4);
    let mut s = String::with_capacity(digits as usize);
    for d in 0..digits {
        let mut v = 0u32;
        for b in 0..4 {
            let x = d * 4 + b;
            if x < len && t.get(x) {
                v |= 8 >> b;
            }
        }
        s.push(char::from_digit(v, 16).unwrap());
    }
    s
}

/// Parses `key=value` from a header token.
pub(crate) fn header_field<'a>(token: &'a str, key: &str, line: usize) -> Result<&'a str> {
    token
        .strip_prefix(key)
        .and_then(|r| r.strip_prefix('='))
        .ok_or_else(|| Error::parse(line, format!("expected `{key}=...`, found `{token}`")))
}

pub(crate) fn parse_num<T: std::str::FromStr>(s: &str, line: usize) -> Result<T> {
    s.parse().map_err(|_| Error::parse(line, format!("bad number `{s}`")))
}

pub fn write_truth_table(t: &TruthTable) -> String {
    format!("TT n={}\n{}\n", t.arity(), bits_to_hex(t))
}

pub fn parse_truth_table(text: &str) -> Result<TruthTable> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| Error::parse(1, "empty input"))?;
    let mut toks = header.split_whitespace();
    if toks.next() != Some("TT") {
        return Err(Error::parse(1, "expected `TT` header"));
    }
    let n: u32 = parse_num(header_field(toks.next().unwrap_or(""), "n", 1)?, 1)?;
    crate::corefn::table::check_arity(n)?;
    let hex = lines.next().ok_or_else(|| Error::parse(2, "missing hex line"))?.trim();
    let mut t = TruthTable::zeros(n)?;
    let len = t.len();
    if hex.len() as u64 != len.div_ceil(4) {
        return Err(Error::parse(2, format!("expected {} hex digits, got {}", len.div_ceil(4), hex.len())));
    }
    for (d, ch) in hex.chars().enumerate() {
        let v = ch.to_digit(16).ok_or_else(|| Error::parse(2, format!("bad hex digit `{ch}`")))?;
        for b in 0..4u64 {
            let x = d as u64 * 4 + b;
            let bit = (v >> (3 - b)) & 1 == 1;
            if x < len {
                t.set(x, bit);
            } else if bit {
                return Err(Error::parse(2, "nonzero padding bits"));
            }
        }
    }
    if lines.any(|l| !l.trim().is_empty()) {
        return Err(Error::parse(3, "trailing content"));
    }
    Ok(t)
}

pub fn write_distribution(h: &Distribution) -> String {
    let mut s = format!("DIST n={}\n", h.arity());
    for (i, w) in h.weights().iter().enumerate() {
        if *w != 0.0 {
            let _ = writeln!(s, "{i} {w:?}");
        }
    }
    s
}

pub fn parse_distribution(text: &str) -> Result<Distribution> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or_else(|| Error::parse(1, "empty input"))?;
    let mut toks = header.split_whitespace();
    if toks.next() != Some("DIST") {
        return Err(Error::parse(1, "expected `DIST` header"));
    }
    let n: u32 = parse_num(header_field(toks.next().unwrap_or(""), "n", 1)?, 1)?;
    if n > crate::corefn::MAX_ARITY {
        return Err(Error::ArityOutOfRange { n, min: 0, max: crate::corefn::MAX_ARITY });
    }
    let len = 1u64 << n;
    let mut weights = vec![0.0f64; len as usize];
    let mut seen = vec![false; len as usize];
    for (i, line) in lines {
        let lineno = i + 1;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let idx: u64 = parse_num(parts.next().unwrap(), lineno)?;
        let w: f64 = parse_num(parts.next().ok_or_else(|| Error::parse(lineno, "missing weight"))?, lineno)?;
        if parts.next().is_some() {
            return Err(Error::parse(lineno, "trailing tokens"));
        }
        if idx >= len {
            return Err(Error::parse(lineno, format!("index {idx} out of range")));
        }
        if seen[idx as usize] {
            return Err(Error::parse(lineno, format!("duplicate index {idx}")));
        }
        if !(w.is_finite() && w >= 0.0) {
            return Err(Error::parse(lineno, format!("invalid weight {w}")));
        }
        seen[idx as usize] = true;
        weights[idx as usize] = w;
    }
    let sum: f64 = weights.iter().sum();
    if (sum - 1.0).abs() > LOAD_TOLERANCE {
        return Err(Error::InvalidDistribution(format!("weights sum to {sum}, not within {LOAD_TOLERANCE} of 1")));
    }
    if (sum - 1.0).abs() <= SUM_TOLERANCE {
        // keep written weights bit-exact
        return Distribution::new(n, weights);
    }
    Distribution::from_unnormalized(n, weights)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng_from_seed;

    #[test]
    fn truth_table_format() {
        let p = TruthTable::parity(2).unwrap();
        assert_eq!(write_truth_table(&p), "TT n=2\n6\n");
        let v = TruthTable::var(1, 0).unwrap();
        assert_eq!(write_truth_table(&v), "TT n=1\n4\n");
        assert_eq!(parse_truth_table("TT n=1\n4\n").unwrap(), v);
        assert!(parse_truth_table("TT n=1\n5\n").is_err());
        assert!(parse_truth_table("TT n=2\n66\n").is_err());
        assert!(parse_truth_table("TX n=2\n6\n").is_err());
    }

    #[test]
    fn truth_table_roundtrip() {
        let mut rng = rng_from_seed(2);
        for n in 1..=12 {
            let t = TruthTable::random(n, &mut rng).unwrap();
            assert_eq!(parse_truth_table(&write_truth_table(&t)).unwrap(), t);
        }
    }

    #[test]
    fn distribution_roundtrip_is_exact() {
        let d = Distribution::from_unnormalized(5, (0..32).map(|i| (i % 7) as f64 / 3.0).collect()).unwrap();
        let text = write_distribution(&d);
        let back = parse_distribution(&text).unwrap();
        assert_eq!(back, d);
        assert_eq!(write_distribution(&back), text);
    }

    #[test]
    fn distribution_loader_tolerance() {
        assert!(parse_distribution("DIST n=1\n0 0.5\n1 0.5000001\n").is_ok());
        assert!(parse_distribution("DIST n=1\n0 0.5\n1 0.6\n").is_err());
        assert!(parse_distribution("DIST n=1\n0 0.5\n0 0.5\n").is_err());
        assert!(parse_distribution("DIST n=1\n2 1.0\n").is_err());
        assert!(parse_distribution("DIST n=1\n0 -1\n1 2\n").is_err());
        let d = parse_distribution("DIST n=2\n3 1\n").unwrap();
        assert_eq!(d, Distribution::point_mass(2, 3).unwrap());
    }
}
