// SPDX-License-Identifier: Apache-2.0

//! Independent reference implementations used by the integration tests.

#![allow(dead_code)]

use hardcore::corefn::{Distribution, TruthTable};
use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

/// Shift-and-add multiplication modulo `modulus`, one bit at a time.
pub fn slow_mul(k: u32, modulus: u64, a: u64, b: u64) -> u64 {
    let mut acc = 0u64;
    let mut a = a;
    for i in 0..k {
        if (b >> i) & 1 == 1 {
            acc ^= a;
        }
        a <<= 1;
        if (a >> k) & 1 == 1 {
            a ^= modulus;
        }
    }
    acc
}

/// Exponent and logarithm tables of GF(2^k) built from a primitive element.
pub struct LogTables {
    pub exp: Vec<u64>,
    pub log: Vec<u64>,
}

impl LogTables {
    pub fn new(k: u32, modulus: u64) -> Self {
        let order = (1u64 << k) - 1;
        for g in 2..=order {
            let mut exp = Vec::with_capacity(order as usize);
            let mut x = 1u64;
            let mut ok = true;
            for i in 0..order {
                if i > 0 && x == 1 {
                    ok = false;
                    break;
                }
                exp.push(x);
                x = slow_mul(k, modulus, x, g);
            }
            if ok && x == 1 {
                let mut log = vec![0u64; 1 << k];
                for (i, &e) in exp.iter().enumerate() {
                    log[e as usize] = i as u64;
                }
                return Self { exp, log };
            }
        }
        panic!("no primitive element; modulus not irreducible?");
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        let order = self.exp.len() as u64;
        self.exp[((self.log[a as usize] + self.log[b as usize]) % order) as usize]
    }
}

fn big_log2(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 64 {
        return (x.to_u64().unwrap() as f64).log2();
    }
    let top = (x >> (bits - 64)).to_u64().unwrap();
    (top as f64).log2() + (bits - 64) as f64
}

/// `log2 Pr[Bin(n, 1/2) >= t]` by exact big-integer summation.
pub fn tail_log2_exact_big(n: u64, t: u64) -> f64 {
    let mut c = BigUint::one();
    let mut sum = BigUint::zero();
    for i in 0..=n {
        if i >= t {
            sum += &c;
        }
        c = c * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    big_log2(&sum) - n as f64
}

fn primes_upto(n: u64) -> Vec<u64> {
    let mut sieve = vec![true; n as usize + 1];
    let mut out = Vec::new();
    for i in 2..=n as usize {
        if sieve[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n as usize {
                sieve[j] = false;
                j += i;
            }
        }
    }
    out
}

fn legendre(n: u64, p: u64) -> u64 {
    let mut e = 0;
    let mut q = p;
    while q <= n {
        e += n / q;
        q = match q.checked_mul(p) {
            Some(v) => v,
            None => break,
        };
    }
    e
}

/// `log2 C(n, t)` from the prime factorization given by Legendre's formula.
pub fn log2_binom_legendre(primes: &[u64], n: u64, t: u64) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for &p in primes {
        let e = legendre(n, p) - legendre(t, p) - legendre(n - t, p);
        if e > 0 {
            let y = e as f64 * (p as f64).log2() - comp;
            let s = sum + y;
            comp = (s - sum) - y;
            sum = s;
        }
    }
    sum
}

/// `log2 Pr[Bin(n, 1/2) >= t]` for `t > n/2`: the leading term from the
/// factorization, later terms by exact integer ratios accumulated in log space.
pub fn tail_log2_legendre(n: u64, t: u64) -> f64 {
    assert!(2 * t > n);
    let primes = primes_upto(n);
    let lead = log2_binom_legendre(&primes, n, t);
    // sum of C(n, i) / C(n, t), i >= t
    let mut rel = 1.0f64;
    let mut log_ratio = 0.0f64;
    for i in t..n {
        log_ratio += ((n - i) as f64).log2() - ((i + 1) as f64).log2();
        let term = log_ratio.exp2();
        rel += term;
        if term < 1e-20 * rel {
            break;
        }
    }
    lead + rel.log2() - n as f64
}

/// Best correlation over all `k`-subsets and all `2^(2^k)` tables, by direct evaluation.
pub fn brute_junta_correlation(f: &TruthTable, k: u32, h: &Distribution) -> f64 {
    let n = f.arity();
    let mut best = f64::NEG_INFINITY;
    for mask in 0u32..1 << n {
        if mask.count_ones() != k {
            continue;
        }
        let vars: Vec<u32> = (0..n).filter(|j| (mask >> j) & 1 == 1).collect();
        for table in 0u64..1 << (1u64 << k) {
            let mut corr = 0.0;
            for x in 0..1u64 << n {
                let mut c = 0;
                for &j in &vars {
                    c = (c << 1) | ((x >> (n - 1 - j)) & 1);
                }
                let g = (table >> c) & 1 == 1;
                let w = h.weight(x);
                corr += if g == f.get(x) { w } else { -w };
            }
            if corr > best {
                best = corr;
            }
        }
    }
    best
}

/// `Pr_H[f = g]` summed pointwise.
pub fn agreement_pointwise(f: &TruthTable, g: &TruthTable, h: &Distribution) -> f64 {
    (0..f.len()).filter(|&x| f.get(x) == g.get(x)).map(|x| h.weight(x)).sum()
}

/// Random weights with some exact zeros, normalized.
pub fn random_distribution(n: u32, rng: &mut impl rand::Rng) -> Distribution {
    let mut w: Vec<f64> = (0..1u64 << n).map(|_| if rng.gen_bool(0.2) { 0.0 } else { rng.gen::<f64>() }).collect();
    if w.iter().all(|&x| x == 0.0) {
        w[0] = 1.0;
    }
    Distribution::from_unnormalized(n, w).unwrap()
}

/// Random `delta`-smooth distribution: every weight at most `1 / (delta 2^n)`.
pub fn random_smooth(n: u32, delta: f64, rng: &mut impl rand::Rng) -> Distribution {
    // weights in [1/2, 3/2) average 1, so normalized they stay below 2 / 2^n
    assert!(delta <= 0.5);
    let w: Vec<f64> = (0..1u64 << n).map(|_| 0.5 + rng.gen::<f64>()).collect();
    let h = Distribution::from_unnormalized(n, w).unwrap();
    assert!(h.is_smooth(delta).unwrap());
    h
}

/// Whether any nonempty subset of at most four of the vectors sums to zero.
pub fn some_dependent_quad(vs: &[Vec<u64>]) -> bool {
    let xor = |a: &[u64], b: &[u64]| a.iter().zip(b).map(|(x, y)| x ^ y).collect::<Vec<u64>>();
    let zero = |a: &[u64]| a.iter().all(|&w| w == 0);
    let m = vs.len();
    for i in 0..m {
        if zero(&vs[i]) {
            return true;
        }
        for j in i + 1..m {
            let ij = xor(&vs[i], &vs[j]);
            if zero(&ij) {
                return true;
            }
            for k in j + 1..m {
                let ijk = xor(&ij, &vs[k]);
                if zero(&ijk) {
                    return true;
                }
                if vs[k + 1..].contains(&ijk) {
                    return true;
                }
            }
        }
    }
    false
}
