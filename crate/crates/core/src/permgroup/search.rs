//! Depth-first search over base images with orbit pruning.

use std::collections::BTreeMap;

use super::{Perm, PermGroup};

/// Visits every element of `g` whose partial base images survive `prune`.
///
/// `prune(l, images)` is called with the images `γ_0..γ_l` of the first
/// `l + 1` base points and returns false to cut the subtree.
fn backtrack<P, L>(g: &PermGroup, mut prune: P, mut leaf: L)
where
    P: FnMut(usize, &[u32]) -> bool,
    L: FnMut(&Perm),
{
    let levels = &g.chain().levels;
    if levels.is_empty() {
        leaf(&Perm::identity(g.degree()));
        return;
    }
    let mut images = Vec::with_capacity(levels.len());
    rec(g, 0, &Perm::identity(g.degree()), &mut images, &mut prune, &mut leaf);

    fn rec<P, L>(
        g: &PermGroup,
        l: usize,
        prefix: &Perm,
        images: &mut Vec<u32>,
        prune: &mut P,
        leaf: &mut L,
    ) where
        P: FnMut(usize, &[u32]) -> bool,
        L: FnMut(&Perm),
    {
        let level = &g.chain().levels[l];
        let last = l + 1 == g.chain().levels.len();
        for &beta in &level.orbit {
            images.push(prefix.image(beta));
            if prune(l, images) {
                let next = prefix.compose(level.transversal(beta).unwrap());
                if last {
                    leaf(&next);
                } else {
                    rec(g, l + 1, &next, images, prune, leaf);
                }
            }
            images.pop();
        }
    }
}

fn subgroup_from(degree: usize, found: Vec<Perm>) -> PermGroup {
    PermGroup::generated_by(degree, &found)
}

struct OrbitData {
    id: Vec<usize>,
    size: Vec<usize>,
}

impl OrbitData {
    fn of(h: &PermGroup) -> OrbitData {
        let (id, size) = h.orbit_partition();
        OrbitData { id, size }
    }

    fn size_of(&self, x: u32) -> usize {
        self.size[self.id[x as usize]]
    }

    fn same(&self, x: u32, y: u32) -> bool {
        self.id[x as usize] == self.id[y as usize]
    }
}

pub(crate) fn centralizer(g: &PermGroup, h: &PermGroup) -> PermGroup {
    let base = g.chain().base();
    let orbits = OrbitData::of(h);
    let mut pos = vec![usize::MAX; g.degree()];
    for (k, &b) in base.iter().enumerate() {
        pos[b as usize] = k;
    }
    // (j, k, q): q(b_j) = b_k for a generator q of H
    let mut links: Vec<Vec<(usize, usize)>> = vec![Vec::new(); base.len()];
    for (qi, q) in h.generators().iter().enumerate() {
        for (j, &b) in base.iter().enumerate() {
            let k = pos[q.image(b) as usize];
            if k != usize::MAX {
                links[j.max(k)].push((j, qi));
            }
        }
    }
    let hgens = h.generators();
    let mut found = Vec::new();
    backtrack(
        g,
        |l, im| {
            if orbits.size_of(base[l]) != orbits.size_of(im[l]) {
                return false;
            }
            links[l].iter().all(|&(j, qi)| {
                let k = pos[hgens[qi].image(base[j]) as usize];
                hgens[qi].image(im[j]) == im[k]
            })
        },
        |x| {
            if hgens.iter().all(|q| q.commutes_with(x)) && !x.is_identity() {
                found.push(x.clone());
            }
        },
    );
    subgroup_from(g.degree(), found)
}

pub(crate) fn normalizer(g: &PermGroup, h: &PermGroup) -> PermGroup {
    let base = g.chain().base();
    let orbits = OrbitData::of(h);
    let mut found = Vec::new();
    backtrack(
        g,
        |l, im| {
            orbits.size_of(base[l]) == orbits.size_of(im[l])
                && (0..l).all(|j| orbits.same(base[j], base[l]) == orbits.same(im[j], im[l]))
        },
        |x| {
            if !x.is_identity() && h.generators().iter().all(|q| h.contains(&q.conjugate_by(x)))
            {
                found.push(x.clone());
            }
        },
    );
    subgroup_from(g.degree(), found)
}

/// Every `g ∈ G` with `^g Q ≤ P`, in search order.
pub fn transporter_elements(g: &PermGroup, q: &PermGroup, p: &PermGroup) -> Vec<Perm> {
    let base = g.chain().base();
    let qo = OrbitData::of(q);
    let po = OrbitData::of(p);
    let mut found = Vec::new();
    backtrack(
        g,
        |l, im| {
            qo.size_of(base[l]) <= po.size_of(im[l])
                && (0..l).all(|j| !qo.same(base[j], base[l]) || po.same(im[j], im[l]))
        },
        |x| {
            if q.generators().iter().all(|y| p.contains(&y.conjugate_by(x))) {
                found.push(x.clone());
            }
        },
    );
    found
}

pub(crate) fn intersection(a: &PermGroup, b: &PermGroup) -> PermGroup {
    let (small, other) = if a.order() <= b.order() { (a, b) } else { (b, a) };
    let mut found = Vec::new();
    backtrack(
        small,
        |_, _| true,
        |x| {
            if !x.is_identity() && other.contains(x) {
                found.push(x.clone());
            }
        },
    );
    subgroup_from(a.degree(), found)
}

/// One representative per induced map `Q → P, y ↦ g y g^-1`, each the least
/// element of its `C_G(Q)`-coset; sorted.
pub(crate) fn transporter_cosets(g: &PermGroup, q: &PermGroup, p: &PermGroup) -> Vec<Perm> {
    let mut best: BTreeMap<Vec<Perm>, Perm> = BTreeMap::new();
    for x in transporter_elements(g, q, p) {
        let key: Vec<Perm> = q.generators().iter().map(|y| y.conjugate_by(&x)).collect();
        match best.get_mut(&key) {
            Some(cur) if *cur <= x => {}
            Some(cur) => *cur = x,
            None => {
                best.insert(key, x);
            }
        }
    }
    let mut out: Vec<Perm> = best.into_values().collect();
    out.sort();
    out
}

/// Element-scan centralizer; a test oracle.
pub fn centralizer_scan(g: &PermGroup, h: &PermGroup) -> PermGroup {
    let found: Vec<Perm> = g
        .elements()
        .into_iter()
        .filter(|x| h.generators().iter().all(|q| q.commutes_with(x)))
        .collect();
    subgroup_from(g.degree(), found)
}

/// Element-scan normalizer; a test oracle.
pub fn normalizer_scan(g: &PermGroup, h: &PermGroup) -> PermGroup {
    let found: Vec<Perm> = g
        .elements()
        .into_iter()
        .filter(|x| h.generators().iter().all(|q| h.contains(&q.conjugate_by(x))))
        .collect();
    subgroup_from(g.degree(), found)
}

/// Element-scan transporter; a test oracle.
pub fn transporter_elements_scan(g: &PermGroup, q: &PermGroup, p: &PermGroup) -> Vec<Perm> {
    g.elements()
        .into_iter()
        .filter(|x| q.generators().iter().all(|y| p.contains(&y.conjugate_by(x))))
        .collect()
}

impl PermGroup {
    /// Representatives `g` with `^g Q ≤ P`, one per induced injection `Q → P`.
    pub fn transporter_cosets(&self, q: &PermGroup, p: &PermGroup) -> Vec<Perm> {
        transporter_cosets(self, q, p)
    }
}
