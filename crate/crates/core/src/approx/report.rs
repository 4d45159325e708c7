// SPDX-License-Identifier: Apache-2.0

//! Flat `key = value` serialization of an approximator run.
//!
//! Floats use Rust's shortest round-trip formatting, so parsing a report gives
//! back bit-identical values.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::circuit::{Circuit, SizeReport};
use crate::corefn::ApproxParams;
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct ApproxReport {
    pub n: u32,
    pub params: ApproxParams,
    pub generator: String,
    /// Hex seed; `None` when the depth is 0 and no generator is used.
    pub chosen_seed: Option<String>,
    pub seeds_tried: u64,
    pub good_fraction: f64,
    /// `(1 + E_{c ~ H'} |T_c|) / 2` from the subcube sums.
    pub predicted_agreement: f64,
    /// Recomputed from the composed circuit's truth table.
    pub achieved_agreement: f64,
    pub circuit: Circuit,
    pub sizes: SizeReport,
}

/// Scalar fields of a serialized report, as read back from text.
#[derive(Clone, Debug, PartialEq)]
pub struct ReportFields {
    pub n: u32,
    pub gamma: f64,
    pub ell: u32,
    pub clamped: bool,
    pub overridden: bool,
    pub generator: String,
    pub chosen_seed: Option<String>,
    pub seeds_tried: u64,
    pub good_fraction: f64,
    pub predicted_agreement: f64,
    pub achieved_agreement: f64,
    pub target_agreement: f64,
    pub measured_gates: usize,
    pub table_gates: usize,
    pub generator_gates: usize,
    pub compose_gates: usize,
    pub table_term: f64,
    pub generator_term: f64,
    pub size_bound: f64,
}

impl ApproxReport {
    pub fn fields(&self) -> ReportFields {
        ReportFields {
            n: self.n,
            gamma: self.params.gamma,
            ell: self.params.ell,
            clamped: self.params.clamped,
            overridden: self.params.overridden,
            generator: self.generator.clone(),
            chosen_seed: self.chosen_seed.clone(),
            seeds_tried: self.seeds_tried,
            good_fraction: self.good_fraction,
            predicted_agreement: self.predicted_agreement,
            achieved_agreement: self.achieved_agreement,
            target_agreement: self.params.target_agreement(),
            measured_gates: self.sizes.measured_gates,
            table_gates: self.sizes.table_gates,
            generator_gates: self.sizes.generator_gates,
            compose_gates: self.sizes.compose_gates,
            table_term: self.sizes.table_term,
            generator_term: self.sizes.generator_term,
            size_bound: self.sizes.bound(),
        }
    }

    pub fn to_text(&self) -> String {
        self.fields().to_text()
    }
}

impl ReportFields {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let mut kv = |k: &str, v: String| {
            let _ = writeln!(s, "{k} = {v}");
        };
        kv("n", self.n.to_string());
        kv("gamma", format!("{:?}", self.gamma));
        kv("ell", self.ell.to_string());
        kv("clamped", self.clamped.to_string());
        kv("ell_overridden", self.overridden.to_string());
        kv("generator", self.generator.clone());
        kv("chosen_seed", self.chosen_seed.clone().unwrap_or_else(|| "none".into()));
        kv("seeds_tried", self.seeds_tried.to_string());
        kv("good_fraction", format!("{:?}", self.good_fraction));
        kv("predicted_agreement", format!("{:?}", self.predicted_agreement));
        kv("achieved_agreement", format!("{:?}", self.achieved_agreement));
        kv("target_agreement", format!("{:?}", self.target_agreement));
        kv("gates", self.measured_gates.to_string());
        kv("table_gates", self.table_gates.to_string());
        kv("generator_gates", self.generator_gates.to_string());
        kv("compose_gates", self.compose_gates.to_string());
        kv("table_term", format!("{:?}", self.table_term));
        kv("generator_term", format!("{:?}", self.generator_term));
        kv("size_bound", format!("{:?}", self.size_bound));
        s
    }
}

/// Reads a report written by [`ApproxReport::to_text`]; `#` lines are comments.
pub fn parse_report(text: &str) -> Result<ReportFields> {
    let mut map: BTreeMap<&str, (usize, &str)> = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| Error::parse(i + 1, "expected `key = value`"))?;
        if map.insert(k.trim(), (i + 1, v.trim())).is_some() {
            return Err(Error::parse(i + 1, format!("duplicate key `{}`", k.trim())));
        }
    }
    fn get<T: std::str::FromStr>(map: &BTreeMap<&str, (usize, &str)>, key: &str) -> Result<T> {
        let (line, v) = map.get(key).ok_or_else(|| Error::parse(0, format!("missing key `{key}`")))?;
        v.parse().map_err(|_| Error::parse(*line, format!("bad value for `{key}`: `{v}`")))
    }
    let seed: String = get(&map, "chosen_seed")?;
    Ok(ReportFields {
        n: get(&map, "n")?,
        gamma: get(&map, "gamma")?,
        ell: get(&map, "ell")?,
        clamped: get(&map, "clamped")?,
        overridden: get(&map, "ell_overridden")?,
        generator: get(&map, "generator")?,
        chosen_seed: (seed != "none").then_some(seed),
        seeds_tried: get(&map, "seeds_tried")?,
        good_fraction: get(&map, "good_fraction")?,
        predicted_agreement: get(&map, "predicted_agreement")?,
        achieved_agreement: get(&map, "achieved_agreement")?,
        target_agreement: get(&map, "target_agreement")?,
        measured_gates: get(&map, "gates")?,
        table_gates: get(&map, "table_gates")?,
        generator_gates: get(&map, "generator_gates")?,
        compose_gates: get(&map, "compose_gates")?,
        table_term: get(&map, "table_term")?,
        generator_term: get(&map, "generator_term")?,
        size_bound: get(&map, "size_bound")?,
    })
}
