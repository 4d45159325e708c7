// SPDX-License-Identifier: Apache-2.0

use crate::config::{table_term, SIZE_FIT_A, SIZE_FIT_B};

/// Measured gate counts of a composed approximator next to the reference terms
/// of the size bound `A * gamma^2 2^n / log2(gamma^2 2^n) + B * n^2`.
#[derive(Clone, Debug, PartialEq)]
pub struct SizeReport {
    pub measured_gates: usize,
    pub table_gates: usize,
    pub generator_gates: usize,
    pub compose_gates: usize,
    pub table_term: f64,
    pub generator_term: f64,
    /// Prefix lifting is a reindexing; the term is listed for completeness.
    pub lift_term: f64,
    pub fit_a: f64,
    pub fit_b: f64,
}

impl SizeReport {
    pub fn new(n: u32, gamma: f64, table_gates: usize, generator_gates: usize, compose_gates: usize) -> Self {
        Self {
            measured_gates: table_gates + generator_gates + compose_gates,
            table_gates,
            generator_gates,
            compose_gates,
            table_term: table_term(gamma, n),
            generator_term: (n as f64) * (n as f64),
            lift_term: n as f64,
            fit_a: SIZE_FIT_A,
            fit_b: SIZE_FIT_B,
        }
    }

    pub fn bound(&self) -> f64 {
        self.fit_a * self.table_term + self.fit_b * self.generator_term
    }

    pub fn within_bound(&self) -> bool {
        self.measured_gates as f64 <= self.bound()
    }
}
