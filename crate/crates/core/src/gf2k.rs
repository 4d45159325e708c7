// SPDX-License-Identifier: Apache-2.0

//! Arithmetic in GF(2^k) for `2 <= k <= 26`.
//!
//! Elements are `k`-bit masks with the coefficient of `x^0` in bit 0. Positions
//! of a generator output are identified with field elements by the same mask,
//! so position index `i` is the element whose bit `j` is bit `j` of `i`.

use crate::{Error, Result};

pub const MIN_DEGREE: u32 = 2;
pub const MAX_DEGREE: u32 = 26;

/// Degree of a nonzero polynomial over GF(2) stored as a bit mask.
#[inline]
fn degree(p: u64) -> u32 {
    63 - p.leading_zeros()
}

/// Remainder of `a` modulo the nonzero polynomial `m`.
fn poly_rem(mut a: u64, m: u64) -> u64 {
    let dm = degree(m);
    while a != 0 && degree(a) >= dm {
        a ^= m << (degree(a) - dm);
    }
    a
}

/// Irreducibility over GF(2) by trial division by every polynomial of degree
/// `1..=deg/2`.
pub fn is_irreducible(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let d = degree(p);
    if d == 0 {
        return false;
    }
    for dd in 1..=d / 2 {
        for q in (1u64 << dd)..(1u64 << (dd + 1)) {
            if poly_rem(p, q) == 0 {
                return false;
            }
        }
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldCtx {
    k: u32,
    modulus: u64,
}

impl FieldCtx {
    /// The numerically smallest irreducible polynomial of degree `k`.
    pub fn find_irreducible(k: u32) -> Result<Self> {
        check_degree(k)?;
        let modulus = ((1u64 << k)..(1u64 << (k + 1)))
            .find(|&p| is_irreducible(p))
            .expect("irreducible polynomials exist in every degree");
        Ok(Self { k, modulus })
    }

    /// Field with an explicit modulus, verified irreducible.
    pub fn with_modulus(k: u32, modulus: u64) -> Result<Self> {
        check_degree(k)?;
        if modulus >> k != 1 || !is_irreducible(modulus) {
            return Err(Error::InvalidArgument(format!("{modulus:#x} is not an irreducible polynomial of degree {k}")));
        }
        Ok(Self { k, modulus })
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.k
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    #[inline]
    pub fn order(&self) -> u64 {
        1u64 << self.k
    }

    #[inline]
    pub fn mask(&self) -> u64 {
        (1u64 << self.k) - 1
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        a ^ b
    }

    /// Carry-less product followed by reduction from the top.
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        debug_assert!(a <= self.mask() && b <= self.mask());
        let mut prod = 0u64;
        let mut bb = b;
        let mut shift = 0;
        while bb != 0 {
            if bb & 1 == 1 {
                prod ^= a << shift;
            }
            bb >>= 1;
            shift += 1;
        }
        let k = self.k;
        let mut i = 2 * k - 2;
        while i >= k {
            if (prod >> i) & 1 == 1 {
                prod ^= self.modulus << (i - k);
            }
            i -= 1;
        }
        prod
    }

    pub fn pow(&self, a: u64, mut e: u64) -> u64 {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via `a^(2^k - 2)`; `inv(0) = 0`.
    pub fn inv(&self, a: u64) -> u64 {
        self.pow(a, self.order() - 2)
    }

    /// `s[0] + s[1] x + s[2] x^2 + s[3] x^3` by Horner's rule.
    pub fn poly_eval_deg3(&self, s: &[u64; 4], x: u64) -> u64 {
        let mut acc = s[3];
        for &c in s[..3].iter().rev() {
            acc = self.mul(acc, x) ^ c;
        }
        acc
    }

    /// Mask `m` with `iota(a y) = parity(m & y)` for every element `y`.
    pub fn trace_mask(&self, a: u64) -> u64 {
        let mut m = 0;
        let mut basis = 1u64;
        for j in 0..self.k {
            if iota(self.mul(a, basis)) {
                m |= 1 << j;
            }
            basis = self.mul(basis, 2);
        }
        m
    }
}

fn check_degree(k: u32) -> Result<()> {
    if (MIN_DEGREE..=MAX_DEGREE).contains(&k) {
        Ok(())
    } else {
        Err(Error::ArityOutOfRange { n: k, min: MIN_DEGREE, max: MAX_DEGREE })
    }
}

/// The constant-term coefficient of a field element.
#[inline]
pub fn iota(e: u64) -> bool {
    e & 1 == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force irreducibility: no product of two lower-degree polynomials equals `p`.
    fn irreducible_by_products(p: u64) -> bool {
        let d = degree(p);
        for a in 2u64..(1 << d) {
            for b in 2u64..(1 << d) {
                let mut prod = 0;
                for i in 0..d {
                    if (b >> i) & 1 == 1 {
                        prod ^= a << i;
                    }
                }
                if prod == p {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn smallest_irreducibles() {
        assert_eq!(FieldCtx::find_irreducible(2).unwrap().modulus(), 0b111);
        assert_eq!(FieldCtx::find_irreducible(3).unwrap().modulus(), 0b1011);
        assert_eq!(FieldCtx::find_irreducible(4).unwrap().modulus(), 0b10011);
        for k in 2..=6 {
            let m = FieldCtx::find_irreducible(k).unwrap().modulus();
            let first = ((1u64 << k)..(1u64 << (k + 1))).find(|&p| irreducible_by_products(p)).unwrap();
            assert_eq!(m, first, "k = {k}");
        }
        assert!(FieldCtx::find_irreducible(1).is_err());
        assert!(FieldCtx::find_irreducible(27).is_err());
        assert!(FieldCtx::find_irreducible(26).is_ok());
    }

    #[test]
    fn explicit_modulus_is_checked() {
        assert!(FieldCtx::with_modulus(4, 0b10011).is_ok());
        assert!(FieldCtx::with_modulus(4, 0b10101).is_err());
        assert!(FieldCtx::with_modulus(4, 0b1011).is_err());
    }

    #[test]
    fn mul_examples() {
        let f = FieldCtx::find_irreducible(2).unwrap();
        assert_eq!(f.mul(0b10, 0b10), 0b11);
        for a in 0..4 {
            assert_eq!(f.mul(a, 1), a);
            assert_eq!(f.mul(a, 0), 0);
        }
    }

    #[test]
    fn field_axioms_small() {
        for k in 2..=4 {
            let f = FieldCtx::find_irreducible(k).unwrap();
            let q = f.order();
            for a in 0..q {
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                }
                for b in 0..q {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in 0..q {
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, b ^ c), f.mul(a, b) ^ f.mul(a, c));
                    }
                }
            }
        }
    }

    #[test]
    fn horner_examples() {
        let f = FieldCtx::find_irreducible(2).unwrap();
        // 1 + a + a^2 + a^3 = 1 + a + (a + 1) + 1 = 1
        assert_eq!(f.poly_eval_deg3(&[1, 1, 1, 1], 0b10), 1);
        for x in 0..4 {
            assert_eq!(f.poly_eval_deg3(&[3, 0, 0, 0], x), 3);
            assert_eq!(f.poly_eval_deg3(&[0, 1, 0, 0], x), x);
        }
    }

    #[test]
    fn iota_examples() {
        assert!(!iota(0));
        assert!(iota(1));
        assert!(!iota(0b10));
    }

    #[test]
    fn trace_mask_matches_products() {
        let f = FieldCtx::find_irreducible(5).unwrap();
        for a in 0..32 {
            let m = f.trace_mask(a);
            for y in 0..32 {
                assert_eq!(iota(f.mul(a, y)), (m & y).count_ones() & 1 == 1);
            }
        }
    }

    #[test]
    fn evaluation_on_four_points_is_bijective() {
        for k in 2..=3 {
            let f = FieldCtx::find_irreducible(k).unwrap();
            let q = f.order();
            let pts: Vec<u64> = (0..q).collect();
            for a in 0..q {
                for b in a + 1..q {
                    for c in b + 1..q {
                        for d in c + 1..q {
                            let xs = [pts[a as usize], pts[b as usize], pts[c as usize], pts[d as usize]];
                            let mut seen = std::collections::HashSet::new();
                            for s in 0..q.pow(4) {
                                let coeffs =
                                    [s & f.mask(), (s >> k) & f.mask(), (s >> (2 * k)) & f.mask(), s >> (3 * k)];
                                let vals: Vec<u64> = xs.iter().map(|&x| f.poly_eval_deg3(&coeffs, x)).collect();
                                seen.insert(vals);
                            }
                            assert_eq!(seen.len() as u64, q.pow(4));
                        }
                    }
                }
            }
        }
    }
}
