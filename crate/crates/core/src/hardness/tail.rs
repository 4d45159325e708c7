// SPDX-License-Identifier: Apache-2.0

//! Upper tails of `Bin(N, 1/2)`.
//!
//! The exact mode evaluates the largest needed term with Loader's saddle-point
//! form of the binomial density and sums the rest by term ratios, all relative
//! to that term, so tails far below `f64::MIN_POSITIVE` keep full relative
//! precision in `log2`.

use std::f64::consts::{LN_2, PI};

use crate::config::EXACT_TAIL_MAX_TRIALS;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TailMode {
    Exact,
    Hoeffding,
}

impl TailMode {
    pub fn as_str(self) -> &'static str {
        match self {
            TailMode::Exact => "exact",
            TailMode::Hoeffding => "hoeffding",
        }
    }
}

/// `Pr[Bin(trials, 1/2) >= threshold]` or an upper bound on it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TailProb {
    /// The probability, or 0 when it underflows; `log2` is always meaningful.
    pub value: f64,
    pub log2: f64,
    pub mode: TailMode,
}

impl TailProb {
    fn from_log2(log2: f64, mode: TailMode) -> Self {
        Self { value: log2.exp2(), log2, mode }
    }
}

/// `ln(n!) - ln(sqrt(2 pi n) (n/e)^n)`.
fn stirlerr(n: f64) -> f64 {
    const S0: f64 = 1.0 / 12.0;
    const S1: f64 = 1.0 / 360.0;
    const S2: f64 = 1.0 / 1260.0;
    const S3: f64 = 1.0 / 1680.0;
    const S4: f64 = 1.0 / 1188.0;
    if n <= 15.0 {
        let mut fact = 1.0f64;
        let mut i = 2.0;
        while i <= n {
            fact *= i;
            i += 1.0;
        }
        return fact.ln() - 0.5 * (2.0 * PI * n).ln() - n * n.ln() + n;
    }
    let nn = n * n;
    if n > 500.0 {
        return (S0 - S1 / nn) / n;
    }
    if n > 80.0 {
        return (S0 - (S1 - S2 / nn) / nn) / n;
    }
    if n > 35.0 {
        return (S0 - (S1 - (S2 - S3 / nn) / nn) / nn) / n;
    }
    (S0 - (S1 - (S2 - (S3 - S4 / nn) / nn) / nn) / nn) / n
}

/// `x ln(x / np) + np - x`, with a series when the two are close.
fn bd0(x: f64, np: f64) -> f64 {
    if (x - np).abs() < 0.1 * (x + np) {
        let v = (x - np) / (x + np);
        let mut s = (x - np) * v;
        let mut ej = 2.0 * x * v;
        let v2 = v * v;
        let mut j = 1;
        loop {
            ej *= v2;
            let s1 = s + ej / (2 * j + 1) as f64;
            if s1 == s {
                return s1;
            }
            s = s1;
            j += 1;
        }
    }
    x * (x / np).ln() + np - x
}

/// `ln Pr[Bin(n, 1/2) = x]`.
pub fn ln_binom_half(n: u64, x: u64) -> f64 {
    debug_assert!(x <= n);
    let nf = n as f64;
    if x == 0 || x == n {
        return -nf * LN_2;
    }
    let xf = x as f64;
    let half = nf / 2.0;
    let lc = stirlerr(nf) - stirlerr(xf) - stirlerr(nf - xf) - bd0(xf, half) - bd0(nf - xf, half);
    lc - 0.5 * (2.0 * PI * xf * (1.0 - xf / nf)).ln()
}

/// `log2 Pr[Bin(n, 1/2) >= t]` for `t > n/2`; terms decrease from the first.
fn upper_log2(n: u64, t: u64) -> f64 {
    let mut sum = 1.0f64;
    let mut r = 1.0f64;
    let mut i = t;
    while i < n {
        r *= (n - i) as f64 / (i + 1) as f64;
        sum += r;
        if r < sum * 1e-18 {
            break;
        }
        i += 1;
    }
    ln_binom_half(n, t) / LN_2 + sum.log2()
}

/// Exact `Pr[Bin(trials, 1/2) >= threshold]`.
pub fn exact_tail(trials: u64, threshold: u64) -> Result<TailProb> {
    if threshold > trials {
        return Err(Error::InvalidArgument(format!("threshold {threshold} exceeds {trials} trials")));
    }
    if threshold == 0 {
        return Ok(TailProb { value: 1.0, log2: 0.0, mode: TailMode::Exact });
    }
    if 2 * threshold > trials {
        return Ok(TailProb::from_log2(upper_log2(trials, threshold), TailMode::Exact));
    }
    // Pr[X >= t] = 1 - Pr[X <= t-1] = 1 - Pr[X >= n-t+1], and the latter is at most 1/2
    let lower = upper_log2(trials, trials - threshold + 1).exp2();
    let value = 1.0 - lower;
    Ok(TailProb { value, log2: value.log2(), mode: TailMode::Exact })
}

/// Hoeffding's bound `exp(-2 (t/N - 1/2)^2 N)`, or 1 at or below the mean.
pub fn hoeffding_tail(trials: u64, threshold: u64) -> TailProb {
    let n = trials as f64;
    let d = threshold as f64 / n - 0.5;
    if trials == 0 || d <= 0.0 {
        return TailProb { value: 1.0, log2: 0.0, mode: TailMode::Hoeffding };
    }
    TailProb::from_log2(-2.0 * d * d * n / LN_2, TailMode::Hoeffding)
}

/// Exact up to [`EXACT_TAIL_MAX_TRIALS`] trials, Hoeffding above.
pub fn chernoff_tail(trials: u64, threshold: u64) -> Result<TailProb> {
    if threshold > trials {
        return Err(Error::InvalidArgument(format!("threshold {threshold} exceeds {trials} trials")));
    }
    if trials <= EXACT_TAIL_MAX_TRIALS {
        exact_tail(trials, threshold)
    } else {
        Ok(hoeffding_tail(trials, threshold))
    }
}
