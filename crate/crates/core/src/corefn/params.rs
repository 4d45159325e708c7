// SPDX-License-Identifier: Apache-2.0

use crate::{Error, Result};

/// Multiplier inside the subcube-depth formula: `3 * 11^2`, from the `2/11`
/// anticoncentration probability and the `1/sqrt(3)` threshold.
pub const DEPTH_CONSTANT: f64 = 363.0;

/// Numerator of the lower end of the admissible correlation range `27 / 2^(n/2)`.
pub const RANGE_NUMERATOR: f64 = 27.0;

/// Subcube depth `ell` used by the approximator for a target advantage `gamma`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ApproxParams {
    pub gamma: f64,
    pub ell: u32,
    /// The raw formula fell outside `[0, n-1]` and was clamped.
    pub clamped: bool,
    /// `ell` was supplied explicitly instead of derived from `gamma`.
    pub overridden: bool,
}

/// Open interval `(27 / 2^(n/2), 1/2)` of advantages with a guaranteed construction.
pub fn gamma_range(n: u32) -> (f64, f64) {
    (RANGE_NUMERATOR / 2f64.powf(n as f64 / 2.0), 0.5)
}

/// `floor(log2(1 / (363 gamma^2)))`, evaluated without trusting `log2` rounding.
pub fn raw_depth(gamma: f64) -> i64 {
    let x = DEPTH_CONSTANT * gamma * gamma;
    let mut e = (-x.log2()).floor() as i64;
    while x * 2f64.powi((e + 1) as i32) <= 1.0 {
        e += 1;
    }
    while x * 2f64.powi(e as i32) > 1.0 {
        e -= 1;
    }
    e
}

fn clamp_depth(raw: i64, n: u32) -> (u32, bool) {
    let hi = n as i64 - 1;
    if raw < 0 {
        (0, true)
    } else if raw > hi {
        (hi as u32, true)
    } else {
        (raw as u32, false)
    }
}

/// Parameters for the approximator, enforcing `27 / 2^(n/2) < gamma < 1/2`.
pub fn approx_params(gamma: f64, n: u32) -> Result<ApproxParams> {
    let (lo, hi) = gamma_range(n);
    if !(gamma > lo && gamma < hi) {
        return Err(Error::GammaOutOfRange { gamma, lo, hi, n });
    }
    ApproxParams::relaxed(gamma, n)
}

impl ApproxParams {
    /// Same depth formula, only requiring `0 < gamma < 1/2`. The correlation
    /// guarantee depends only on `2^ell <= 1/(363 gamma^2)`, which still holds;
    /// what is lost is the size bound's regime.
    pub fn relaxed(gamma: f64, n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::ArityOutOfRange { n, min: 1, max: crate::corefn::MAX_ARITY });
        }
        if !(gamma > 0.0 && gamma < 0.5) {
            return Err(Error::GammaOutOfRange { gamma, lo: 0.0, hi: 0.5, n });
        }
        let (ell, clamped) = clamp_depth(raw_depth(gamma), n);
        Ok(Self { gamma, ell, clamped, overridden: false })
    }

    /// Explicit depth; the resulting agreement must be checked by measurement.
    pub fn with_ell(gamma: f64, n: u32, ell: u32) -> Result<Self> {
        if !(gamma > 0.0 && gamma < 0.5) {
            return Err(Error::GammaOutOfRange { gamma, lo: 0.0, hi: 0.5, n });
        }
        if n == 0 || ell >= n {
            return Err(Error::InvalidArgument(format!("subcube depth {ell} must be below n = {n}")));
        }
        Ok(Self { gamma, ell, clamped: false, overridden: true })
    }

    /// `(2/11) sqrt(1 / (3 2^ell))`, the correlation floor the depth guarantees.
    pub fn correlation_floor(&self) -> f64 {
        (2.0 / 11.0) * (1.0 / (3.0 * 2f64.powi(self.ell as i32))).sqrt()
    }

    pub fn target_agreement(&self) -> f64 {
        0.5 + self.gamma
    }
}
