// SPDX-License-Identifier: Apache-2.0

//! Generator spec files.
//!
//! ```text
//! KWGEN quad k=<k> mod=<hex> seed=<hex>
//! ```
//!
//! The seed packs `s1 s2 s3 s4` into `4k` bits, `s1` most significant.
//!
//! ```text
//! KWGEN linear n=<n> m=<m> delta=<delta>
//! ROW <hex>                  one per message bit j, bit i = coordinate i of Enc(e_j)
//! SET <i> <idx> <idx> ...    one per local function, indices into [m]
//! <i> <pattern-hex> <bit>    local table entries; pattern bit t is coordinate S_i[t]
//! ```
//!
//! The loader recomputes the code distance and rejects a header `delta` that
//! disagrees with it.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::{LinearGen, QuadGen, QuadSeed};
use crate::corefn::io::{header_field, parse_num};
use crate::gf2k::FieldCtx;
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub enum KwGenFile {
    Quad { gen: QuadGen, seed: QuadSeed },
    Linear(LinearGen),
}

pub fn write_quad(gen: &QuadGen, seed: &QuadSeed) -> String {
    let ctx = gen.ctx();
    format!("KWGEN quad k={} mod={:x} seed={:x}\n", ctx.degree(), ctx.modulus(), gen.pack_seed(seed))
}

pub fn write_linear(gen: &LinearGen) -> String {
    let mut s = format!("KWGEN linear n={} m={} delta={:?}\n", gen.n(), gen.m(), gen.delta());
    for r in gen.rows() {
        let _ = writeln!(s, "ROW {r:x}");
    }
    for (i, set) in gen.sets().iter().enumerate() {
        let _ = write!(s, "SET {i}");
        for idx in set {
            let _ = write!(s, " {idx}");
        }
        s.push('\n');
    }
    for (i, table) in gen.locals().iter().enumerate() {
        for (p, b) in table {
            let _ = writeln!(s, "{i} {p:x} {}", *b as u8);
        }
    }
    s
}

fn hex_u128(s: &str, line: usize) -> Result<u128> {
    u128::from_str_radix(s, 16).map_err(|_| Error::parse(line, format!("bad hex `{s}`")))
}

pub fn parse_kwgen(text: &str) -> Result<KwGenFile> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty());
    let (lno, header) = lines.next().ok_or_else(|| Error::parse(1, "empty generator file"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    match toks.as_slice() {
        ["KWGEN", "quad", k, m, seed] => {
            let k: u32 = parse_num(header_field(k, "k", lno)?, lno)?;
            let modulus = hex_u128(header_field(m, "mod", lno)?, lno)?;
            let modulus = u64::try_from(modulus).map_err(|_| Error::parse(lno, "modulus too wide"))?;
            let gen = QuadGen::with_ctx(FieldCtx::with_modulus(k, modulus)?);
            let seed = gen.unpack_seed(hex_u128(header_field(seed, "seed", lno)?, lno)?)?;
            if let Some((l, _)) = lines.next() {
                return Err(Error::parse(l, "trailing content after quad header"));
            }
            Ok(KwGenFile::Quad { gen, seed })
        }
        ["KWGEN", "linear", n, m, delta] => {
            let n: u32 = parse_num(header_field(n, "n", lno)?, lno)?;
            let m: u32 = parse_num(header_field(m, "m", lno)?, lno)?;
            let delta: f64 = parse_num(header_field(delta, "delta", lno)?, lno)?;
            let mut rows = Vec::new();
            let mut sets: Vec<Vec<u32>> = Vec::new();
            let mut locals: Vec<BTreeMap<u128, bool>> = Vec::new();
            for (l, line) in lines {
                let toks: Vec<&str> = line.split_whitespace().collect();
                match toks.as_slice() {
                    ["ROW", hex] => {
                        if !sets.is_empty() {
                            return Err(Error::parse(l, "ROW after SET"));
                        }
                        rows.push(hex_u128(hex, l)?);
                    }
                    ["SET", i, idx @ ..] => {
                        let i: usize = parse_num(i, l)?;
                        if i != sets.len() {
                            return Err(Error::parse(l, format!("expected SET {}", sets.len())));
                        }
                        sets.push(idx.iter().map(|t| parse_num(t, l)).collect::<Result<_>>()?);
                        locals.push(BTreeMap::new());
                    }
                    [i, pat, bit] => {
                        let i: usize = parse_num(i, l)?;
                        let table = locals.get_mut(i).ok_or_else(|| Error::parse(l, format!("no set {i}")))?;
                        let bit = match *bit {
                            "0" => false,
                            "1" => true,
                            _ => return Err(Error::parse(l, format!("bad bit `{bit}`"))),
                        };
                        if table.insert(hex_u128(pat, l)?, bit).is_some() {
                            return Err(Error::parse(l, "duplicate pattern"));
                        }
                    }
                    _ => return Err(Error::parse(l, format!("unrecognized line `{line}`"))),
                }
            }
            let gen = LinearGen::from_parts(n, m, rows, sets, locals)?;
            if (gen.delta() - delta).abs() > 1e-12 {
                return Err(Error::InvalidArgument(format!(
                    "header delta {delta} disagrees with measured distance {}",
                    gen.delta()
                )));
            }
            Ok(KwGenFile::Linear(gen))
        }
        _ => Err(Error::parse(lno, "expected `KWGEN quad ...` or `KWGEN linear ...`")),
    }
}
