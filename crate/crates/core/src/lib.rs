// SPDX-License-Identifier: Apache-2.0

//! Small approximating circuits for arbitrary Boolean functions over arbitrary
//! input distributions, and certified-hard random juntas.
//!
//! The crate is organized bottom-up:
//!
//! - [`corefn`]: bit-packed truth tables, distributions on the hypercube, agreement.
//! - [`gf2k`]: arithmetic in GF(2^k).
//! - [`kwise`]: 4-wise uniform generators (field-based and code-based) and testers.
//! - [`circuit`]: fan-in-2 gate circuits, evaluation, builders, netlist format.
//! - [`approx`]: the subcube/generator approximator and the baselines.
//! - [`hardness`]: counting certificates, hard-junta sampling, brute-force oracles.

pub mod approx;
pub mod circuit;
pub mod config;
pub mod corefn;
mod error;
pub mod gf2k;
pub mod hardness;
pub mod kwise;

pub use error::{Error, ErrorClass, Result};

/// The deterministic random stream used everywhere a procedure draws randomness.
pub type Rng = rand_chacha::ChaCha8Rng;

/// Builds the crate's random stream from a 64-bit seed.
pub fn rng_from_seed(seed: u64) -> Rng {
    use rand::SeedableRng;
    Rng::seed_from_u64(seed)
}
