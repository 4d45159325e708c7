// SPDX-License-Identifier: Apache-2.0

//! Frozen constants shared by the constructions, the size accounting, and the CLI.

/// Seed budget cap for the approximator's retry-with-doubling loop.
pub const SEED_BUDGET_CAP: u64 = 1 << 14;

/// Default number of seeds examined per approximator attempt.
pub const DEFAULT_SEED_BUDGET: u64 = 200;

/// The quadratic generator circuit has at most `QUAD_CIRCUIT_C * k^2` gates.
pub const QUAD_CIRCUIT_C: u64 = 2;

/// Size-fit coefficient of the table term `gamma^2 2^n / log2(gamma^2 2^n)`.
///
/// Calibrated once on the grid `gamma in {0.02, 0.01, 0.005}`, `n in {20, 22, 24}`
/// (uniform `H`, random `f`, rng 1, budget 200): the largest
/// `(gates - B n^2) / table_term` observed was 1879.4, at `n = 24, gamma = 0.005`.
pub const SIZE_FIT_A: f64 = 2500.0;

/// Size-fit coefficient of the generator term `n^2`.
pub const SIZE_FIT_B: f64 = 2.0;

/// Sampler default: the smallest `k` with a valid certificate, and at least
/// `ceil(log2(SAMPLER_FACTOR * s * log2 s))`.
pub const SAMPLER_FACTOR: f64 = 8.0;

/// Multiplier on the circuit-count bound: each gate picks one of 16 functions.
pub const GATE_FUNCTIONS: u64 = 16;

/// Exact binomial tails are summed up to this many trials; Hoeffding above.
pub const EXACT_TAIL_MAX_TRIALS: u64 = 1 << 20;

/// `gamma^2 2^n / log2(gamma^2 2^n)`, the table term of the size bound.
///
/// Returns the numerator alone when the logarithm is below 1.
pub fn table_term(gamma: f64, n: u32) -> f64 {
    let v = gamma * gamma * 2f64.powi(n as i32);
    let l = v.log2();
    if l > 1.0 {
        v / l
    } else {
        v
    }
}

/// `A * table_term + B * n^2`.
pub fn size_bound(gamma: f64, n: u32) -> f64 {
    SIZE_FIT_A * table_term(gamma, n) + SIZE_FIT_B * (n as f64) * (n as f64)
}
