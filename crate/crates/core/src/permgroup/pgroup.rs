//! The full subgroup lattice of a p-group.

use std::collections::HashMap;
use std::collections::HashSet;

use super::{Perm, PermGroup};
use crate::error::{Error, Result};

type Bits = Vec<u64>;

fn has(bits: &Bits, i: usize) -> bool {
    bits[i / 64] >> (i % 64) & 1 == 1
}

fn set(bits: &mut Bits, i: usize) {
    bits[i / 64] |= 1 << (i % 64);
}

fn members(bits: &Bits, n: usize) -> Vec<usize> {
    (0..n).filter(|&i| has(bits, i)).collect()
}

/// Every subgroup of the p-group `p_group` (not only up to conjugacy).
///
/// Built bottom-up: each subgroup of order `p^(k+1)` is `⟨K, x⟩` for some
/// subgroup K of order `p^k` and `x ∈ N(K) \ K` with `x^p ∈ K`. Sorted by
/// order, then by the sorted list of elements.
pub fn subgroups_of_pgroup(p_group: &PermGroup, p: u32) -> Result<Vec<PermGroup>> {
    if !p_group.is_p_group(p) {
        return Err(Error::NotPGroup(p));
    }
    let mut elements = p_group.elements();
    elements.sort();
    let n = elements.len();
    let index: HashMap<&Perm, usize> = elements.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let mul = |a: usize, b: usize| index[&elements[a].compose(&elements[b])];
    let mut table = vec![0u32; n * n];
    for a in 0..n {
        for b in 0..n {
            table[a * n + b] = mul(a, b) as u32;
        }
    }
    let inv: Vec<usize> = (0..n).map(|a| index[&elements[a].inverse()]).collect();
    let t = |a: usize, b: usize| table[a * n + b] as usize;
    let pow_p = |x: usize| (1..p).fold(x, |acc, _| t(acc, x));

    let words = n.div_ceil(64);
    let mut trivial = vec![0u64; words];
    set(&mut trivial, 0); // the identity sorts first
    let mut layer: Vec<(Bits, Vec<usize>)> = vec![(trivial, Vec::new())];
    let mut all = layer.clone();
    let mut order = 1usize;
    while order < n {
        let mut seen: HashSet<Bits> = HashSet::new();
        let mut next = Vec::new();
        for (k, gens) in &layer {
            let kmem = members(k, n);
            let mut covered = k.clone();
            for x in 0..n {
                if has(&covered, x) || !has(k, pow_p(x)) {
                    continue;
                }
                let normalizes = gens.iter().all(|&y| has(k, t(t(x, y), inv[x])));
                if !normalizes {
                    continue;
                }
                let mut bits = vec![0u64; words];
                let mut xi = 0usize;
                for _ in 0..p {
                    for &m in &kmem {
                        set(&mut bits, t(xi, m));
                    }
                    xi = t(xi, x);
                }
                for (c, b) in covered.iter_mut().zip(&bits) {
                    *c |= b;
                }
                if seen.insert(bits.clone()) {
                    let mut g = gens.clone();
                    g.push(x);
                    next.push((bits, g));
                }
            }
        }
        order *= p as usize;
        all.extend(next.iter().cloned());
        layer = next;
    }
    let mut keyed: Vec<(usize, Vec<usize>, Vec<usize>)> = all
        .into_iter()
        .map(|(bits, gens)| {
            let m = members(&bits, n);
            (m.len(), m, gens)
        })
        .collect();
    keyed.sort();
    keyed
        .into_iter()
        .map(|(_, _, gens)| {
            PermGroup::new(
                p_group.degree(),
                gens.iter().map(|&i| elements[i].clone()).collect(),
            )
        })
        .collect()
}
