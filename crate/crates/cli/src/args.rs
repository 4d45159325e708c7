// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hardcore::config::DEFAULT_SEED_BUDGET;

/// Approximating circuits over arbitrary distributions, and hard random juntas.
///
/// Every command writes its artifacts to `--out`. With `--check` it writes
/// nothing and instead re-reads those artifacts and recomputes every claim
/// they make.
#[derive(Debug, Parser)]
#[command(name = "hardcore", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Artifact directory.
    #[arg(long, global = true, default_value = ".")]
    pub out: PathBuf,

    /// Re-verify the artifacts in `--out` instead of producing them.
    #[arg(long, global = true)]
    pub check: bool,

    /// Worker thread cap (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample a random k-junta with an existence certificate of hardness.
    GenHard(GenHardArgs),
    /// Build an approximating circuit for a function under a distribution.
    Approximate(ApproxArgs),
    /// Check k-wise uniformity of a generator family.
    VerifyKwise(KwiseArgs),
    /// Measure the anticoncentration fraction of the quadratic generator.
    Anticoncentration(AntiArgs),
    /// Enumerate minimum circuit sizes at toy scale.
    Enumerate(EnumArgs),
    /// Hard junta, then an approximator for it: certificate, netlist, report.
    DemoTightness(DemoArgs),
    /// Gate counts against the size-bound reference terms over a grid.
    SizeSweep(SweepArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    /// Quadratic generator over GF(2^n).
    Quad,
    /// Code-based generator (n <= 12).
    Linear,
}

#[derive(Debug, Args)]
pub struct GenHardArgs {
    #[arg(long, default_value_t = 22)]
    pub n: u32,
    /// Circuit-size budget the junta must defeat.
    #[arg(long, default_value_t = 8192)]
    pub s: u32,
    #[arg(long, default_value_t = 0.3)]
    pub delta: f64,
    /// Junta size; default is the smallest with a valid certificate.
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long, default_value_t = 1)]
    pub rng: u64,
}

#[derive(Debug, Args)]
pub struct ApproxArgs {
    /// Arity of a random target function (ignored with `--tt`).
    #[arg(long, default_value_t = 16)]
    pub n: u32,
    /// Target function as a `TT` file.
    #[arg(long)]
    pub tt: Option<PathBuf>,
    /// Required unless `--check` is given.
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Subcube depth override; skips the admissible-range check.
    #[arg(long)]
    pub ell: Option<u32>,
    #[arg(long, value_enum, default_value_t = GenKind::Quad)]
    pub gen: GenKind,
    #[arg(long, default_value_t = DEFAULT_SEED_BUDGET)]
    pub budget: u64,
    #[arg(long, default_value_t = 1)]
    pub rng: u64,
    /// `uniform`, `smooth` (random 1/2-smooth), `adversarial`, or a `DIST` file.
    #[arg(long, default_value = "uniform")]
    pub dist: String,
}

#[derive(Debug, Args)]
pub struct KwiseArgs {
    #[arg(long, value_enum, default_value_t = GenKind::Quad)]
    pub gen: GenKind,
    /// Field degree (quad) or input length (linear).
    #[arg(long, default_value_t = 3)]
    pub n: u32,
    #[arg(long, default_value_t = 4)]
    pub order: u32,
    /// Seeds drawn when the seed space is too large to enumerate.
    #[arg(long, default_value_t = 200_000)]
    pub samples: u64,
    /// Check this many random position sets instead of all of them.
    #[arg(long)]
    pub sets: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub rng: u64,
}

#[derive(Debug, Args)]
pub struct AntiArgs {
    /// Field degree of the quadratic generator; vectors have length 2^n.
    #[arg(long, default_value_t = 4)]
    pub n: u32,
    #[arg(long, default_value_t = 20)]
    pub vectors: usize,
    #[arg(long, default_value_t = 1)]
    pub rng: u64,
}

#[derive(Debug, Args)]
pub struct EnumArgs {
    #[arg(long, default_value_t = 3)]
    pub n: u32,
    /// Gate budget.
    #[arg(long, default_value_t = 3)]
    pub s: u32,
}

#[derive(Debug, Args)]
pub struct DemoArgs {
    #[arg(long, default_value_t = 22)]
    pub n: u32,
    #[arg(long, default_value_t = 0.02)]
    pub gamma: f64,
    #[arg(long, default_value_t = 0.3)]
    pub delta: f64,
    #[arg(long, default_value_t = 8192)]
    pub s: u32,
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long)]
    pub ell: Option<u32>,
    #[arg(long, value_enum, default_value_t = GenKind::Quad)]
    pub gen: GenKind,
    #[arg(long, default_value_t = DEFAULT_SEED_BUDGET)]
    pub budget: u64,
    #[arg(long, default_value_t = 1)]
    pub rng: u64,
    /// `uniform`, `smooth`, `adversarial`, or a `DIST` file.
    #[arg(long, default_value = "uniform")]
    pub dist: String,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, value_delimiter = ',', default_value = "20,22,24")]
    pub n: Vec<u32>,
    #[arg(long, value_delimiter = ',', default_value = "0.02,0.01,0.005")]
    pub gamma: Vec<f64>,
    #[arg(long, default_value_t = DEFAULT_SEED_BUDGET)]
    pub budget: u64,
    #[arg(long, default_value_t = 1)]
    pub rng: u64,
}
