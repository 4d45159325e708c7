// SPDX-License-Identifier: Apache-2.0

//! Baselines the approximator is compared against.

use crate::circuit::{build_junta_table, lift_prefix, Circuit};
use crate::corefn::{Distribution, TruthTable};
use crate::{Error, Result};

/// Circuit on the first `k` inputs giving the uniform majority of `f` on each
/// prefix subcube, ties to 0.
pub fn majority_subcube_baseline(f: &TruthTable, k: u32) -> Result<Circuit> {
    let n = f.arity();
    if k > n {
        return Err(Error::InvalidArgument(format!("prefix length {k} exceeds n = {n}")));
    }
    let ell = n - k;
    if k == 0 {
        return Ok(Circuit::constant(n, 2 * f.count_ones() > f.len()));
    }
    let half = 1u64 << ell >> 1;
    let mut ones = vec![0u64; 1usize << k];
    for (x, b) in f.iter().enumerate() {
        if b {
            ones[x >> ell] += 1;
        }
    }
    // ell = 0: the subcube is one point and `half` is 0, so the test is `ones > 0`
    let maj = TruthTable::from_fn(k, |c| ones[c as usize] > half)?;
    lift_prefix(&build_junta_table(&maj)?, n)
}

/// Exact table for `f` on the prefix subcube `0^p x {0,1}^(n-p)` with
/// `p = floor(log2(1/(2 gamma)))`, covering at least `2 gamma 2^n` points, and
/// the better constant outside it (ties to 0).
pub fn exact_subcube_baseline(f: &TruthTable, gamma: f64) -> Result<Circuit> {
    if !(gamma > 0.0 && gamma <= 0.5) {
        return Err(Error::InvalidArgument(format!("gamma {gamma} outside (0, 1/2]")));
    }
    let n = f.arity();
    let p = ((1.0 / (2.0 * gamma)).log2().floor().max(0.0) as u32).min(n);
    let inside = 1u64 << (n - p);
    let outside_ones = f.iter().skip(inside as usize).filter(|&b| b).count() as u64;
    let outside = f.len() - inside;
    let fill = 2 * outside_ones > outside;
    let g = TruthTable::from_fn(n, |x| if x < inside { f.get(x) } else { fill })?;
    build_junta_table(&g)
}

/// Uniform distribution on `{x : c(x) != f(x)}`, or uniform on the cube when
/// `c` computes `f`.
pub fn adversarial_distribution(f: &TruthTable, c: &Circuit) -> Result<Distribution> {
    let d = f.xor(&c.truth_table()?)?;
    if d.count_ones() == 0 {
        Distribution::uniform(f.arity())
    } else {
        Distribution::uniform_on(&d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corefn::agreement;
    use crate::rng_from_seed;

    #[test]
    fn parity_majority_is_useless() {
        let f = TruthTable::parity(10).unwrap();
        let u = Distribution::uniform(10).unwrap();
        for k in 0..10 {
            let c = majority_subcube_baseline(&f, k).unwrap();
            assert_eq!(agreement(&f, &c.truth_table().unwrap(), &u).unwrap(), 0.5);
        }
    }

    #[test]
    fn junta_majority_exact() {
        let mut rng = rng_from_seed(1);
        let g = TruthTable::random(5, &mut rng).unwrap();
        let f = g.junta_embed(11).unwrap();
        let c = majority_subcube_baseline(&f, 5).unwrap();
        assert_eq!(c.truth_table().unwrap(), f);
    }

    #[test]
    fn exact_baseline_cases() {
        let mut rng = rng_from_seed(2);
        let f = TruthTable::random(9, &mut rng).unwrap();
        assert_eq!(exact_subcube_baseline(&f, 0.5).unwrap().truth_table().unwrap(), f);
        let z = TruthTable::constant(9, true).unwrap();
        assert_eq!(exact_subcube_baseline(&z, 0.1).unwrap().size(), 0);
        let u = Distribution::uniform(9).unwrap();
        for gamma in [0.01, 0.05, 0.1, 0.2, 0.3] {
            let c = exact_subcube_baseline(&f, gamma).unwrap();
            assert!(agreement(&f, &c.truth_table().unwrap(), &u).unwrap() >= 0.5 + gamma);
        }
    }

    #[test]
    fn adversary() {
        let mut rng = rng_from_seed(3);
        let f = TruthTable::random(8, &mut rng).unwrap();
        let exact = build_junta_table(&f).unwrap();
        let h = adversarial_distribution(&f, &exact).unwrap();
        assert_eq!(h, Distribution::uniform(8).unwrap());
        let mut g = f.clone();
        g.set(77, !g.get(77));
        let one_off = build_junta_table(&g).unwrap();
        let h = adversarial_distribution(&f, &one_off).unwrap();
        assert_eq!(h, Distribution::point_mass(8, 77).unwrap());
        assert_eq!(agreement(&f, &g, &h).unwrap(), 0.0);
    }
}
