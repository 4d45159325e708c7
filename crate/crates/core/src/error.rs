// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Coarse classification of failures, used by the command line for exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    BadInput,
    TargetMissed,
    ScaleGuard,
}

impl ErrorClass {
    pub fn exit_code(self) -> i32 {
        match self {
            ErrorClass::BadInput => 2,
            ErrorClass::TargetMissed => 3,
            ErrorClass::ScaleGuard => 4,
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("arity {n} out of range [{min}, {max}]")]
    ArityOutOfRange { n: u32, min: u32, max: u32 },

    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: u32, right: u32 },

    #[error("gamma = {gamma} outside the admissible range ({lo}, {hi}) for n = {n}")]
    GammaOutOfRange { gamma: f64, lo: f64, hi: f64, n: u32 },

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("subcube {prefix} has zero mass")]
    EmptySubcube { prefix: u64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("scale guard: {0}")]
    ScaleGuard(String),

    #[error("agreement target missed: best {achieved} < {target} after {seeds} seeds")]
    TargetMissed { achieved: f64, target: f64, seeds: u64 },

    #[error("budget exhausted: {0}")]
    BudgetExhausted(String),

    #[error("local table {index} has no entry for pattern {pattern:#x}")]
    UnseenPattern { index: usize, pattern: u128 },

    #[error("circuit unavailable: {0}")]
    CircuitUnavailable(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::ScaleGuard(_) => ErrorClass::ScaleGuard,
            Error::TargetMissed { .. } | Error::BudgetExhausted(_) => ErrorClass::TargetMissed,
            _ => ErrorClass::BadInput,
        }
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }
}
