// SPDX-License-Identifier: Apache-2.0

//! Line-oriented netlist text.
//!
//! ```text
//! INPUTS 3
//! g0 = XOR x1 x2
//! g1 = AND g0 x3
//! OUT g1
//! ```
//!
//! Inputs are `x1 .. xn`, constants `c0` and `c1`, gates `g0, g1, ...` in
//! order. Gate names are the sixteen two-input functions:
//!
//! | name | function | name | function |
//! |------|----------|------|----------|
//! | FALSE | 0 | AND | `a & b` |
//! | NOR | `!(a \| b)` | XNOR | `a == b` |
//! | ANDNA | `!a & b` | RIGHT | `b` |
//! | NLEFT | `!a` | ORNA | `!a \| b` |
//! | ANDNB | `a & !b` | LEFT | `a` |
//! | NRIGHT | `!b` | ORNB | `a \| !b` |
//! | XOR | `a ^ b` | OR | `a \| b` |
//! | NAND | `!(a & b)` | TRUE | 1 |
//!
//! Blank lines and lines starting with `#` are ignored.

use std::fmt::Write as _;

use super::{Circuit, Gate, Op, Ref};
use crate::{Error, Result};

fn ref_name(r: Ref) -> String {
    match r {
        Ref::Const(false) => "c0".into(),
        Ref::Const(true) => "c1".into(),
        Ref::Input(j) => format!("x{}", j + 1),
        Ref::Gate(g) => format!("g{g}"),
    }
}

pub fn write_netlist(c: &Circuit) -> String {
    let mut s = format!("INPUTS {}\n", c.arity());
    for (i, g) in c.gates().iter().enumerate() {
        let _ = writeln!(s, "g{i} = {} {} {}", g.op.name(), ref_name(g.a), ref_name(g.b));
    }
    let _ = writeln!(s, "OUT {}", ref_name(c.output()));
    s
}

fn parse_ref(tok: &str, line: usize) -> Result<Ref> {
    let bad = || Error::parse(line, format!("bad reference `{tok}`"));
    match tok {
        "c0" => Ok(Ref::Const(false)),
        "c1" => Ok(Ref::Const(true)),
        _ => {
            if let Some(j) = tok.strip_prefix('x') {
                let j: u32 = j.parse().map_err(|_| bad())?;
                if j == 0 {
                    return Err(bad());
                }
                Ok(Ref::Input(j - 1))
            } else if let Some(g) = tok.strip_prefix('g') {
                Ok(Ref::Gate(g.parse().map_err(|_| bad())?))
            } else {
                Err(bad())
            }
        }
    }
}

pub fn parse_netlist(text: &str) -> Result<Circuit> {
    let mut lines =
        text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (lno, header) = lines.next().ok_or_else(|| Error::parse(1, "empty netlist"))?;
    let n: u32 = header
        .strip_prefix("INPUTS ")
        .and_then(|r| r.trim().parse().ok())
        .ok_or_else(|| Error::parse(lno, "expected `INPUTS <n>`"))?;
    let mut gates = Vec::new();
    for (lno, line) in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks.as_slice() {
            ["OUT", r] => {
                let out = parse_ref(r, lno)?;
                return Circuit::new(n, gates, out).map_err(|e| Error::parse(lno, e.to_string()));
            }
            [name, "=", op, a, b] => {
                if *name != format!("g{}", gates.len()) {
                    return Err(Error::parse(lno, format!("expected gate g{}, found `{name}`", gates.len())));
                }
                let op = Op::from_name(op).ok_or_else(|| Error::parse(lno, format!("unknown gate `{op}`")))?;
                gates.push(Gate { op, a: parse_ref(a, lno)?, b: parse_ref(b, lno)? });
            }
            _ => return Err(Error::parse(lno, format!("unrecognized line `{line}`"))),
        }
    }
    Err(Error::parse(text.lines().count(), "missing `OUT` line"))
}
