// SPDX-License-Identifier: Apache-2.0

//! Exact minimum circuit sizes for tiny arities.
//!
//! A search state is the set of truth tables computed by the gates of some
//! circuit. States at size `t+1` extend states at size `t` by one gate on any
//! two available wires, so a table first produced at size `t` has minimum
//! circuit size exactly `t`. States are deduplicated as sorted table sets.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::circuit::{Circuit, Gate, Op, Ref};
use crate::corefn::io::{header_field, parse_num};
use crate::corefn::TruthTable;
use crate::{Error, Result};

/// Largest arity the enumerator accepts.
pub const MINSIZE_MAX_ARITY: u32 = 4;

/// Largest gate budget accepted for arity `n`.
pub fn minsize_gate_limit(n: u32) -> u32 {
    if n <= 3 {
        5
    } else {
        4
    }
}

fn check_scale(n: u32, max_gates: u32) -> Result<()> {
    if n == 0 || n > MINSIZE_MAX_ARITY {
        return Err(Error::ScaleGuard(format!(
            "minimum-size enumeration needs 1 <= n <= {MINSIZE_MAX_ARITY}, got {n}"
        )));
    }
    let limit = minsize_gate_limit(n);
    if max_gates > limit {
        return Err(Error::ScaleGuard(format!("minimum-size enumeration at n = {n} is limited to {limit} gates")));
    }
    Ok(())
}

/// One gate of a witness: op and operands as wire indices, where wires are
/// `0, 1` (constants), `2 .. n+2` (inputs) and `n+2+i` (gate `i`).
type WGate = (u8, u8, u8);

#[derive(Clone, Debug)]
struct State {
    /// gate tables in creation order, matching `gates`
    tables: Vec<u64>,
    gates: Vec<WGate>,
}

/// Minimum gate counts of every table reachable within a gate budget.
#[derive(Clone, Debug)]
pub struct MinSizeTable {
    n: u32,
    max_gates: u32,
    /// table mask -> (size, witness gates)
    entries: BTreeMap<u64, (u32, Vec<WGate>)>,
    /// output wire of each witness
    outputs: BTreeMap<u64, u8>,
}

fn leaves(n: u32) -> Vec<u64> {
    let full = if n == 6 { u64::MAX } else { (1u64 << (1u32 << n)) - 1 };
    let mut v = vec![0, full];
    for j in 0..n {
        v.push(TruthTable::var(n, j).map(|t| t.words()[0]).unwrap_or(0));
    }
    v
}

/// Every new table one more gate can add to `state`, with the gate that does it.
fn extensions(base: &[u64], state: &State, full: u64) -> Vec<(u64, WGate)> {
    let wires: Vec<u64> = base.iter().chain(&state.tables).copied().collect();
    let known = |t: u64| wires.contains(&t);
    let mut out = Vec::new();
    // constants give only constants and projections of the other operand, so
    // pairs skip them; a single wire gives its complement
    for (a, &ta) in wires.iter().enumerate().skip(2) {
        let t = !ta & full;
        if !known(t) {
            out.push((t, (Op::NOR.code(), a as u8, a as u8)));
        }
        for (b, &tb) in wires.iter().enumerate().skip(a + 1) {
            for op in Op::ALL {
                let t = op.apply_words(ta, tb) & full;
                if !known(t) {
                    out.push((t, (op.code(), a as u8, b as u8)));
                }
            }
        }
    }
    out
}

impl MinSizeTable {
    pub fn arity(&self) -> u32 {
        self.n
    }

    pub fn max_gates(&self) -> u32 {
        self.max_gates
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Minimum size of `t`, or `None` when it needs more than `max_gates`.
    pub fn size_of(&self, t: &TruthTable) -> Option<u32> {
        if t.arity() != self.n {
            return None;
        }
        self.entries.get(&t.words()[0]).map(|e| e.0)
    }

    /// `(table, size)` in ascending table order.
    pub fn iter(&self) -> impl Iterator<Item = (TruthTable, u32)> + '_ {
        self.entries.iter().map(|(&m, e)| (self.table(m), e.0))
    }

    /// Tables of minimum size at most `t`.
    pub fn reachable(&self, t: u32) -> Vec<TruthTable> {
        self.entries.iter().filter(|e| e.1 .0 <= t).map(|(&m, _)| self.table(m)).collect()
    }

    fn table(&self, mask: u64) -> TruthTable {
        TruthTable::from_words(self.n, vec![mask]).expect("mask within arity")
    }

    /// A circuit of minimum size computing `t`.
    pub fn witness(&self, t: &TruthTable) -> Option<Circuit> {
        if t.arity() != self.n {
            return None;
        }
        let mask = t.words()[0];
        let (_, gates) = self.entries.get(&mask)?;
        let n = self.n;
        let wire = |w: u8| -> Ref {
            let w = w as u32;
            match w {
                0 => Ref::Const(false),
                1 => Ref::Const(true),
                w if w < n + 2 => Ref::Input(w - 2),
                w => Ref::Gate(w - n - 2),
            }
        };
        let gs =
            gates.iter().map(|&(op, a, b)| Gate { op: Op::from_code(op).unwrap(), a: wire(a), b: wire(b) }).collect();
        Some(Circuit::new(n, gs, wire(self.outputs[&mask])).expect("witness wiring"))
    }
}

/// Minimum sizes of all `n`-input tables computable with at most `max_gates`
/// gates over the full two-input basis.
pub fn min_size_table(n: u32, max_gates: u32) -> Result<MinSizeTable> {
    check_scale(n, max_gates)?;
    let base = leaves(n);
    let full = base[1];
    let mut entries = BTreeMap::new();
    let mut outputs = BTreeMap::new();
    for (w, &t) in base.iter().enumerate() {
        entries.entry(t).or_insert((0, Vec::new()));
        outputs.entry(t).or_insert(w as u8);
    }
    let mut level = vec![State { tables: Vec::new(), gates: Vec::new() }];
    for size in 1..=max_gates {
        let last = size == max_gates;
        let exts: Vec<Vec<(u64, WGate)>> = level.par_iter().map(|s| extensions(&base, s, full)).collect();
        let wire = (base.len() + size as usize - 1) as u8;
        for (s, ext) in level.iter().zip(&exts) {
            for &(t, g) in ext {
                if let std::collections::btree_map::Entry::Vacant(e) = entries.entry(t) {
                    let mut gates = s.gates.clone();
                    gates.push(g);
                    e.insert((size, gates));
                    outputs.insert(t, wire);
                }
            }
        }
        if last {
            break;
        }
        let mut next: HashMap<Vec<u64>, State> = HashMap::new();
        for (s, ext) in level.iter().zip(exts) {
            for (t, g) in ext {
                let mut key = s.tables.clone();
                key.sort_unstable();
                let pos = key.binary_search(&t).unwrap_err();
                key.insert(pos, t);
                next.entry(key).or_insert_with(|| {
                    let mut st = s.clone();
                    st.tables.push(t);
                    st.gates.push(g);
                    st
                });
            }
        }
        let mut states: Vec<(Vec<u64>, State)> = next.into_iter().collect();
        states.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        level = states.into_iter().map(|(_, st)| st).collect();
    }
    Ok(MinSizeTable { n, max_gates, entries, outputs })
}

/// `MINSIZE n=<n> max_gates=<s>` followed by `<table-hex> <size>` lines.
pub fn write_minsize(t: &MinSizeTable) -> String {
    let mut s = format!("MINSIZE n={} max_gates={}\n", t.n, t.max_gates);
    for (&m, e) in &t.entries {
        let _ = writeln!(s, "{m:x} {}", e.0);
    }
    s
}

/// Reads a `MINSIZE` dump as `(n, max_gates, table -> size)`.
pub fn parse_minsize(text: &str) -> Result<(u32, u32, BTreeMap<u64, u32>)> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty());
    let (lno, header) = lines.next().ok_or_else(|| Error::parse(1, "empty MINSIZE file"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    let (n, s) = match toks.as_slice() {
        ["MINSIZE", n, s] => (
            parse_num::<u32>(header_field(n, "n", lno)?, lno)?,
            parse_num::<u32>(header_field(s, "max_gates", lno)?, lno)?,
        ),
        _ => return Err(Error::parse(lno, "expected `MINSIZE n=<n> max_gates=<s>`")),
    };
    let mut map = BTreeMap::new();
    for (l, line) in lines {
        let (t, size) = line.split_once(' ').ok_or_else(|| Error::parse(l, "expected `<hex> <size>`"))?;
        let t = u64::from_str_radix(t, 16).map_err(|_| Error::parse(l, format!("bad hex `{t}`")))?;
        if map.insert(t, parse_num(size.trim(), l)?).is_some() {
            return Err(Error::parse(l, "duplicate table"));
        }
    }
    Ok((n, s, map))
}
