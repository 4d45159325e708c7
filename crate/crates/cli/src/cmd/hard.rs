// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use hardcore::circuit::netlist::{parse_netlist, write_netlist};
use hardcore::corefn::io::{parse_truth_table, write_truth_table};
use hardcore::corefn::TruthTable;
use hardcore::hardness::{
    min_size_table, parse_certificate, parse_minsize, sample_hard_junta, write_certificate, write_minsize,
};
use hardcore::{Error, Result};

use super::{junta_core, stream, STREAM_MAIN};
use crate::args::{EnumArgs, GenHardArgs};
use crate::files::{self, ensure};

const HARD_TT: &str = "hard.tt";
const HARD_CERT: &str = "hard.cert";
const MINSIZE: &str = "minsize.txt";
const WITNESSES: &str = "witnesses.txt";

pub fn gen_hard(a: &GenHardArgs, out: &Path, check: bool) -> Result<String> {
    if check {
        return check_gen_hard(out);
    }
    let mut rng = stream(a.rng, STREAM_MAIN);
    let (f, cert) = sample_hard_junta(a.n, a.s, a.delta, a.k, &mut rng)?;
    files::write(out, HARD_TT, &write_truth_table(&f))?;
    files::write(out, HARD_CERT, &write_certificate(&cert))?;
    let core = junta_core(&f, cert.k)?.expect("sampled junta");
    let mut s = String::new();
    let _ = writeln!(s, "n = {}", cert.n);
    let _ = writeln!(s, "k = {}", cert.k);
    let _ = writeln!(s, "s = {}", cert.s);
    let _ = writeln!(s, "delta = {:?}", cert.delta);
    let _ = writeln!(s, "certificate_valid = {}", cert.valid);
    let _ = writeln!(s, "product_log2 = {:?}", cert.product_log2);
    let _ = writeln!(s, "core_bias = {:?}", core.bias());
    let _ = writeln!(s, "files = {HARD_TT} {HARD_CERT}");
    Ok(s)
}

fn check_gen_hard(out: &Path) -> Result<String> {
    let cert = parse_certificate(&files::read(out, HARD_CERT)?)?;
    let f = parse_truth_table(&files::read(out, HARD_TT)?)?;
    ensure(f.arity() == cert.n, "table arity equals certificate n")?;
    ensure(junta_core(&f, cert.k)?.is_some(), format!("table depends only on its first {} inputs", cert.k))?;
    Ok(format!("check = ok\ncertificate_valid = {}\nproduct_log2 = {:?}\n", cert.valid, cert.product_log2))
}

pub fn enumerate(a: &EnumArgs, out: &Path, check: bool) -> Result<String> {
    if check {
        return check_enumerate(out);
    }
    let table = min_size_table(a.n, a.s)?;
    let mut wit = String::new();
    let mut hist: BTreeMap<u32, usize> = BTreeMap::new();
    for (t, size) in table.iter() {
        *hist.entry(size).or_default() += 1;
        let _ = writeln!(wit, "# table={:x} size={size}", t.words()[0]);
        wit.push_str(&write_netlist(&table.witness(&t).expect("enumerated")));
    }
    files::write(out, MINSIZE, &write_minsize(&table))?;
    files::write(out, WITNESSES, &wit)?;
    let mut s = format!("n = {}\nmax_gates = {}\nreachable = {}\n", a.n, a.s, table.len());
    for (size, count) in hist {
        let _ = writeln!(s, "size_{size} = {count}");
    }
    Ok(s)
}

fn check_enumerate(out: &Path) -> Result<String> {
    let (n, s, sizes) = parse_minsize(&files::read(out, MINSIZE)?)?;
    let fresh = min_size_table(n, s)?;
    ensure(fresh.len() == sizes.len(), "number of reachable tables matches a fresh enumeration")?;
    for (t, size) in fresh.iter() {
        ensure(sizes.get(&t.words()[0]) == Some(&size), format!("size of table {:x}", t.words()[0]))?;
    }
    let text = files::read(out, WITNESSES)?;
    let mut witnessed = 0usize;
    for block in text.split("# table=").skip(1) {
        let (head, body) = block.split_once('\n').ok_or_else(|| Error::InvalidArgument("truncated witness".into()))?;
        let (hex, size) =
            head.split_once(" size=").ok_or_else(|| Error::InvalidArgument(format!("bad witness header `{head}`")))?;
        let mask = u64::from_str_radix(hex, 16).map_err(|_| Error::InvalidArgument(format!("bad table `{hex}`")))?;
        let size: u32 = size.trim().parse().map_err(|_| Error::InvalidArgument(format!("bad size `{size}`")))?;
        let c = parse_netlist(body)?;
        let t = TruthTable::from_words(n, vec![mask])?;
        ensure(c.truth_table()? == t, format!("witness for {hex} computes it"))?;
        ensure(
            c.size() as u32 == size && sizes.get(&mask) == Some(&size),
            format!("witness for {hex} has the stated size"),
        )?;
        witnessed += 1;
    }
    ensure(witnessed == sizes.len(), "every table has a witness")?;
    Ok(format!("check = ok\nreachable = {}\nwitnesses = {witnessed}\n", sizes.len()))
}
