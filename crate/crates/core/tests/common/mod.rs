//! Test-only oracles, independent of the library's subset-rank and
//! branch-and-bound paths.

#![allow(dead_code)]

use std::collections::HashSet;

use locrep::code::EntropyOracle;
use locrep::coords::CoordSet;
use locrep::field::{FieldElement, FieldSpec};
use locrep::LinearCode;
use rand::Rng;

/// Minimum Hamming weight over all nonzero codewords, by enumerating every
/// message in GF(2^m)^M. Only feasible for tiny fields and dimensions.
pub fn distance_by_codewords(code: &LinearCode) -> usize {
    let f = code.field();
    let q = 1u64 << f.degree();
    let m = code.dimension();
    let total = q.pow(m as u32);
    let mut best = usize::MAX;
    for idx in 1..total {
        let mut rest = idx;
        let msg: Vec<FieldElement> = (0..m)
            .map(|_| {
                let e = FieldElement::from_bits_unchecked(rest % q);
                rest /= q;
                e
            })
            .collect();
        let weight = code
            .columns()
            .iter()
            .filter(|col| {
                !col.iter()
                    .zip(&msg)
                    .fold(FieldElement::ZERO, |acc, (&g, &x)| f.add(acc, f.mul(g, x)))
                    .is_zero()
            })
            .count();
        best = best.min(weight);
    }
    best
}

/// Every regenerating set of every coordinate, minimal or not.
pub fn all_regenerating_sets<O: EntropyOracle>(oracle: &O) -> Vec<(usize, CoordSet)> {
    let n = oracle.length();
    let mut out = Vec::new();
    for mask in 1u64..(1u64 << n) {
        let set = CoordSet::from_mask(mask);
        let h = oracle.joint_entropy(set);
        for t in set.iter() {
            if oracle.joint_entropy(set.without(t)) == h {
                out.push((t, set));
            }
        }
    }
    out
}

/// Φ(0..) by breadth-first expansion of reachable unions over all
/// regenerating sets (no minimality restriction, no pruning). Returns Φ(x)
/// for each x until no sequence of length x exists.
pub fn phi_unrestricted<O: EntropyOracle>(oracle: &O) -> Vec<usize> {
    let sets = all_regenerating_sets(oracle);
    let mut layer: HashSet<u64> = HashSet::from([0]);
    let mut phi = vec![0];
    loop {
        let mut next = HashSet::new();
        for &u in &layer {
            let union = CoordSet::from_mask(u);
            for &(t, s) in &sets {
                if !union.contains(t) {
                    next.insert(u | s.mask());
                }
            }
        }
        if next.is_empty() {
            return phi;
        }
        phi.push(next.iter().map(|m| m.count_ones() as usize).min().unwrap());
        layer = next;
    }
}

/// A random full-rank code of length `n` and dimension `m` over `field`.
pub fn random_code<R: Rng>(rng: &mut R, field: &FieldSpec, n: usize, m: usize) -> LinearCode {
    let q = field.order() as u64;
    loop {
        let cols: Vec<Vec<FieldElement>> = (0..n)
            .map(|_| {
                (0..m)
                    .map(|_| {
                        // sparse entries give codes with short dependencies
                        if rng.gen_bool(0.4) {
                            FieldElement::ZERO
                        } else {
                            field.element(rng.gen_range(0..q)).unwrap()
                        }
                    })
                    .collect()
            })
            .collect();
        if let Ok(code) = LinearCode::new(field.clone(), m, cols) {
            return code;
        }
    }
}

/// Random `k`-subset of `base`.
pub fn random_subset<R: Rng>(rng: &mut R, base: CoordSet, k: usize) -> CoordSet {
    let mut members = base.to_vec();
    let mut out = CoordSet::EMPTY;
    for _ in 0..k.min(members.len()) {
        let i = rng.gen_range(0..members.len());
        out.insert(members.swap_remove(i));
    }
    out
}
