// SPDX-License-Identifier: Apache-2.0

use super::{Circuit, CircuitBuilder, Op, Ref};
use crate::{Error, Result};

/// XOR of the listed variables (0-based), `|subset| - 1` gates.
pub fn build_parity(n: u32, subset: &[u32]) -> Result<Circuit> {
    if subset.is_empty() {
        return Err(Error::InvalidArgument("parity of an empty variable set".into()));
    }
    let mut sorted = subset.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != subset.len() {
        return Err(Error::InvalidArgument("repeated variable in parity subset".into()));
    }
    if let Some(&j) = subset.iter().find(|&&j| j >= n) {
        return Err(Error::InvalidArgument(format!("variable {} out of range for arity {n}", j + 1)));
    }
    let mut b = CircuitBuilder::new(n);
    let mut acc = Ref::Input(subset[0]);
    for &j in &subset[1..] {
        acc = b.push(Op::XOR, acc, Ref::Input(j));
    }
    Ok(b.finish(acc))
}

/// `a(x) ^ b(x)` with exactly `size(a) + size(b) + 1` gates.
pub fn xor_compose(a: &Circuit, b: &Circuit) -> Result<Circuit> {
    if a.arity() != b.arity() {
        return Err(Error::ArityMismatch { left: a.arity(), right: b.arity() });
    }
    let n = a.arity();
    let inputs: Vec<Ref> = (0..n).map(Ref::Input).collect();
    let mut builder = CircuitBuilder::new(n);
    let ra = builder.append(a, &inputs);
    let rb = builder.append(b, &inputs);
    let out = builder.push(Op::XOR, ra, rb);
    Ok(builder.finish(out))
}

/// Views a circuit on `k` inputs as one on `n >= k` inputs reading the first `k`.
pub fn lift_prefix(c: &Circuit, n: u32) -> Result<Circuit> {
    if n < c.arity() {
        return Err(Error::ArityMismatch { left: c.arity(), right: n });
    }
    Circuit::new(n, c.gates().to_vec(), c.output())
}
