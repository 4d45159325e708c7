// SPDX-License-Identifier: Apache-2.0

pub mod approx;
pub mod hard;
pub mod kwise;

use std::path::{Path, PathBuf};

use hardcore::approx::{adversarial_distribution, majority_subcube_baseline};
use hardcore::corefn::io::{parse_distribution, write_distribution};
use hardcore::corefn::{Distribution, TruthTable};
use hardcore::{rng_from_seed, Result, Rng};
use rand::Rng as _;

use crate::files;

/// Independent random streams derived from one `--rng` value.
pub const STREAM_MAIN: u64 = 0;
pub const STREAM_SETS: u64 = 1;
pub const STREAM_SEEDS: u64 = 2;
pub const STREAM_DIST: u64 = 3;

pub fn stream(seed: u64, stream: u64) -> Rng {
    let mut r = rng_from_seed(seed);
    r.set_stream(stream);
    r
}

pub const DIST_FILE: &str = "h.dist";

#[derive(Clone, Debug, PartialEq)]
pub enum DistChoice {
    Uniform,
    /// Weights `1/2 + U[0, 1)`, normalized; 1/2-smooth.
    Smooth,
    /// Uniform on the disagreement set of the majority-subcube baseline.
    Adversarial,
    File(PathBuf),
}

impl DistChoice {
    pub fn parse(s: &str) -> Self {
        match s {
            "uniform" => DistChoice::Uniform,
            "smooth" => DistChoice::Smooth,
            "adversarial" => DistChoice::Adversarial,
            path => DistChoice::File(PathBuf::from(path)),
        }
    }

    /// `prefix` is the majority baseline's prefix length for `Adversarial`.
    pub fn build(&self, f: &TruthTable, prefix: u32, seed: u64) -> Result<Distribution> {
        let n = f.arity();
        match self {
            DistChoice::Uniform => Distribution::uniform(n),
            DistChoice::Smooth => {
                let mut rng = stream(seed, STREAM_DIST);
                let w = (0..1u64 << n).map(|_| 0.5 + rng.gen::<f64>()).collect();
                Distribution::from_unnormalized(n, w)
            }
            DistChoice::Adversarial => adversarial_distribution(f, &majority_subcube_baseline(f, prefix)?),
            DistChoice::File(p) => {
                let text = std::fs::read_to_string(p)
                    .map_err(|e| hardcore::Error::InvalidArgument(format!("cannot read {}: {e}", p.display())))?;
                let h = parse_distribution(&text)?;
                if h.arity() != n {
                    return Err(hardcore::Error::ArityMismatch { left: n, right: h.arity() });
                }
                Ok(h)
            }
        }
    }
}

/// Writes `h` unless it is uniform; returns the report value for `dist`.
pub fn save_dist(out: &Path, choice: &DistChoice, h: &Distribution) -> Result<String> {
    if *choice == DistChoice::Uniform {
        return Ok("uniform".into());
    }
    files::write(out, DIST_FILE, &write_distribution(h))?;
    Ok(DIST_FILE.into())
}

/// Inverse of [`save_dist`].
pub fn load_dist(out: &Path, value: &str, n: u32) -> Result<Distribution> {
    match value {
        "uniform" => Distribution::uniform(n),
        name => parse_distribution(&files::read(out, name)?),
    }
}

/// The `k`-bit core of a function that depends only on its first `k` inputs, if it is one.
pub fn junta_core(f: &TruthTable, k: u32) -> Result<Option<TruthTable>> {
    let n = f.arity();
    let core = TruthTable::from_fn(k, |c| f.get(c << (n - k)))?;
    Ok((core.junta_embed(n)? == *f).then_some(core))
}
