// SPDX-License-Identifier: Apache-2.0

//! Truth tables, distributions on the hypercube, and agreement.

mod dist;
pub mod io;
mod params;
pub(crate) mod table;

pub use dist::{agreement, correlation, Distribution, SMOOTH_SLACK, SUM_TOLERANCE};
pub use params::{approx_params, gamma_range, raw_depth, ApproxParams, DEPTH_CONSTANT, RANGE_NUMERATOR};
pub use table::{TruthTable, MAX_ARITY};
