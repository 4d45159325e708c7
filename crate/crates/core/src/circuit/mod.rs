// SPDX-License-Identifier: Apache-2.0

//! Circuits of fan-in-2 gates with arbitrary two-input gate functions.
//!
//! Size is the number of gates. Inputs and the two constants are free leaves.

mod build;
mod eval;
mod junta;
pub mod netlist;
mod size;

pub use build::{build_parity, lift_prefix, xor_compose};
pub use junta::{build_junta_table, cutoff_level, predict_junta_size, MAX_JUNTA_ARITY};
pub use size::SizeReport;

pub use crate::kwise::build_quad_gen_circuit;

use crate::{Error, Result};

/// One of the 16 Boolean functions of two inputs, as a 4-bit truth table.
///
/// Bit `2a + b` of the code is the output on inputs `(a, b)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Op(u8);

impl Op {
    pub const FALSE: Op = Op(0b0000);
    pub const NOR: Op = Op(0b0001);
    /// `!a & b`
    pub const ANDNA: Op = Op(0b0010);
    /// `!a`
    pub const NLEFT: Op = Op(0b0011);
    /// `a & !b`
    pub const ANDNB: Op = Op(0b0100);
    /// `!b`
    pub const NRIGHT: Op = Op(0b0101);
    pub const XOR: Op = Op(0b0110);
    pub const NAND: Op = Op(0b0111);
    pub const AND: Op = Op(0b1000);
    pub const XNOR: Op = Op(0b1001);
    /// `b`
    pub const RIGHT: Op = Op(0b1010);
    /// `!a | b`
    pub const ORNA: Op = Op(0b1011);
    /// `a`
    pub const LEFT: Op = Op(0b1100);
    /// `a | !b`
    pub const ORNB: Op = Op(0b1101);
    pub const OR: Op = Op(0b1110);
    pub const TRUE: Op = Op(0b1111);

    pub const ALL: [Op; 16] = {
        let mut all = [Op(0); 16];
        let mut i = 0;
        while i < 16 {
            all[i] = Op(i as u8);
            i += 1;
        }
        all
    };

    const NAMES: [&'static str; 16] = [
        "FALSE", "NOR", "ANDNA", "NLEFT", "ANDNB", "NRIGHT", "XOR", "NAND", "AND", "XNOR", "RIGHT", "ORNA", "LEFT",
        "ORNB", "OR", "TRUE",
    ];

    pub fn from_code(code: u8) -> Option<Op> {
        (code < 16).then_some(Op(code))
    }

    #[inline]
    pub fn code(self) -> u8 {
        self.0
    }

    pub fn name(self) -> &'static str {
        Self::NAMES[self.0 as usize]
    }

    pub fn from_name(name: &str) -> Option<Op> {
        Self::NAMES.iter().position(|n| *n == name).map(|i| Op(i as u8))
    }

    #[inline]
    pub fn apply(self, a: bool, b: bool) -> bool {
        (self.0 >> (((a as u8) << 1) | b as u8)) & 1 == 1
    }

    /// Bitwise application over packed truth-table words.
    #[inline]
    pub fn apply_words(self, a: u64, b: u64) -> u64 {
        match self.0 {
            0b0000 => 0,
            0b0001 => !(a | b),
            0b0010 => !a & b,
            0b0011 => !a,
            0b0100 => a & !b,
            0b0101 => !b,
            0b0110 => a ^ b,
            0b0111 => !(a & b),
            0b1000 => a & b,
            0b1001 => !(a ^ b),
            0b1010 => b,
            0b1011 => !a | b,
            0b1100 => a,
            0b1101 => a | !b,
            0b1110 => a | b,
            _ => u64::MAX,
        }
    }
}

/// Operand of a gate or the circuit output.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ref {
    Const(bool),
    /// Input `x_{j+1}`, 0-based.
    Input(u32),
    Gate(u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Gate {
    pub op: Op,
    pub a: Ref,
    pub b: Ref,
}

/// A topologically ordered gate list with one output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    n: u32,
    gates: Vec<Gate>,
    output: Ref,
}

fn check_ref(r: Ref, n: u32, before: usize) -> Result<()> {
    match r {
        Ref::Const(_) => Ok(()),
        Ref::Input(j) if j < n => Ok(()),
        Ref::Gate(g) if (g as usize) < before => Ok(()),
        other => Err(Error::InvalidArgument(format!("malformed reference {other:?}"))),
    }
}

impl Circuit {
    /// Validates that every reference points at an input, a constant, or an earlier gate.
    pub fn new(n: u32, gates: Vec<Gate>, output: Ref) -> Result<Self> {
        for (i, g) in gates.iter().enumerate() {
            check_ref(g.a, n, i)?;
            check_ref(g.b, n, i)?;
        }
        check_ref(output, n, gates.len())?;
        Ok(Self { n, gates, output })
    }

    pub fn constant(n: u32, value: bool) -> Self {
        Self { n, gates: Vec::new(), output: Ref::Const(value) }
    }

    pub fn projection(n: u32, j: u32) -> Result<Self> {
        Self::new(n, Vec::new(), Ref::Input(j))
    }

    #[inline]
    pub fn arity(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.gates.len()
    }

    #[inline]
    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    #[inline]
    pub fn output(&self) -> Ref {
        self.output
    }
}

/// Incremental construction of a [`Circuit`].
#[derive(Clone, Debug)]
pub struct CircuitBuilder {
    n: u32,
    gates: Vec<Gate>,
}

impl CircuitBuilder {
    pub fn new(n: u32) -> Self {
        Self { n, gates: Vec::new() }
    }

    pub fn arity(&self) -> u32 {
        self.n
    }

    pub fn size(&self) -> usize {
        self.gates.len()
    }

    pub fn input(&self, j: u32) -> Ref {
        debug_assert!(j < self.n);
        Ref::Input(j)
    }

    pub fn push(&mut self, op: Op, a: Ref, b: Ref) -> Ref {
        debug_assert!(check_ref(a, self.n, self.gates.len()).is_ok());
        debug_assert!(check_ref(b, self.n, self.gates.len()).is_ok());
        self.gates.push(Gate { op, a, b });
        Ref::Gate(self.gates.len() as u32 - 1)
    }

    /// Copies `c` in, wiring its input `j` to `inputs[j]`, and returns its output.
    pub fn append(&mut self, c: &Circuit, inputs: &[Ref]) -> Ref {
        assert_eq!(inputs.len(), c.n as usize, "input wiring length");
        let offset = self.gates.len() as u32;
        let map = |r: Ref| match r {
            Ref::Const(v) => Ref::Const(v),
            Ref::Input(j) => inputs[j as usize],
            Ref::Gate(g) => Ref::Gate(g + offset),
        };
        for g in &c.gates {
            self.gates.push(Gate { op: g.op, a: map(g.a), b: map(g.b) });
        }
        map(c.output)
    }

    pub fn finish(self, output: Ref) -> Circuit {
        debug_assert!(check_ref(output, self.n, self.gates.len()).is_ok());
        Circuit { n: self.n, gates: self.gates, output }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn op_table_matches_names() {
        type Case = (Op, fn(bool, bool) -> bool);
        let cases: [Case; 16] = [
            (Op::FALSE, |_, _| false),
            (Op::NOR, |a, b| !(a || b)),
            (Op::ANDNA, |a, b| !a && b),
            (Op::NLEFT, |a, _| !a),
            (Op::ANDNB, |a, b| a && !b),
            (Op::NRIGHT, |_, b| !b),
            (Op::XOR, |a, b| a ^ b),
            (Op::NAND, |a, b| !(a && b)),
            (Op::AND, |a, b| a && b),
            (Op::XNOR, |a, b| a == b),
            (Op::RIGHT, |_, b| b),
            (Op::ORNA, |a, b| !a || b),
            (Op::LEFT, |a, _| a),
            (Op::ORNB, |a, b| a || !b),
            (Op::OR, |a, b| a || b),
            (Op::TRUE, |_, _| true),
        ];
        for (op, f) in cases {
            for a in [false, true] {
                for b in [false, true] {
                    assert_eq!(op.apply(a, b), f(a, b), "{}", op.name());
                    let wa = if a { u64::MAX } else { 0 };
                    let wb = if b { u64::MAX } else { 0 };
                    assert_eq!(op.apply_words(wa, wb) == u64::MAX, f(a, b));
                }
            }
            assert_eq!(Op::from_name(op.name()), Some(op));
        }
    }

    #[test]
    fn rejects_forward_refs() {
        let g = Gate { op: Op::AND, a: Ref::Gate(0), b: Ref::Input(0) };
        assert!(Circuit::new(2, vec![g], Ref::Gate(0)).is_err());
        let g = Gate { op: Op::AND, a: Ref::Input(2), b: Ref::Input(0) };
        assert!(Circuit::new(2, vec![g], Ref::Gate(0)).is_err());
        assert!(Circuit::new(2, vec![], Ref::Gate(0)).is_err());
    }
}
