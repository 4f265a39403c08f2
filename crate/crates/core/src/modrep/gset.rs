use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::permgroup::{ChainEvaluator, Perm, PermGroup, PermRep};

/// A finite set `{0..n-1}` with an action of a permutation group, given by
/// the permutation induced by each group generator.
#[derive(Clone, Debug)]
pub struct GSet {
    group: PermGroup,
    size: usize,
    action: Vec<Perm>,
}

impl GSet {
    pub fn new(group: &PermGroup, size: usize, action: Vec<Perm>) -> Result<GSet> {
        if action.len() != group.generators().len() {
            return Err(Error::InvalidInput("one permutation per generator expected".into()));
        }
        if action.iter().any(|a| a.degree() != size) {
            return Err(Error::DegreeMismatch {
                expected: size,
                found: action.iter().map(|a| a.degree()).find(|&d| d != size).unwrap(),
            });
        }
        Ok(GSet {
            group: group.clone(),
            size,
            action,
        })
    }

    /// The natural action on `{0..degree-1}`.
    pub fn natural(group: &PermGroup) -> GSet {
        GSet {
            group: group.clone(),
            size: group.degree(),
            action: group.generators().to_vec(),
        }
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Permutation of the points induced by each group generator.
    pub fn action(&self) -> &[Perm] {
        &self.action
    }

    /// Evaluator for the action of arbitrary group members.
    pub fn evaluator(&self) -> ChainEvaluator<'_, PermRep> {
        let originals: Vec<(Perm, Perm)> = self
            .action
            .iter()
            .map(|a| (a.clone(), a.inverse()))
            .collect();
        ChainEvaluator::new(self.group.chain(), PermRep { degree: self.size }, &originals)
    }

    /// The same points as an `H`-set for a subgroup `H`.
    pub fn restrict(&self, h: &PermGroup) -> Result<GSet> {
        if !h.is_subgroup_of(&self.group) {
            return Err(Error::NotContained("restriction to a non-subgroup".into()));
        }
        let mut ev = self.evaluator();
        let action = h
            .generators()
            .iter()
            .map(|g| ev.eval(g).expect("member"))
            .collect();
        Ok(GSet {
            group: h.clone(),
            size: self.size,
            action,
        })
    }

    /// Points fixed by every element of `q` (a subgroup of the acting group).
    pub fn fixed_points(&self, q: &PermGroup) -> Result<Vec<u32>> {
        let restricted = self.restrict(q)?;
        Ok((0..self.size as u32)
            .filter(|&x| restricted.action.iter().all(|a| a.image(x) == x))
            .collect())
    }

    /// The action of `h` (a subgroup) on an `h`-invariant subset, with the
    /// points renumbered in the given order.
    pub fn sub_gset(&self, h: &PermGroup, points: &[u32]) -> Result<GSet> {
        let restricted = self.restrict(h)?;
        let mut index = vec![u32::MAX; self.size];
        for (i, &x) in points.iter().enumerate() {
            index[x as usize] = i as u32;
        }
        let mut action = Vec::new();
        for a in &restricted.action {
            let images: Option<Vec<u32>> = points
                .iter()
                .map(|&x| {
                    let y = index[a.image(x) as usize];
                    (y != u32::MAX).then_some(y)
                })
                .collect();
            let images = images
                .ok_or_else(|| Error::InvalidInput("subset is not invariant".into()))?;
            action.push(Perm::from_images(images)?);
        }
        Ok(GSet {
            group: h.clone(),
            size: points.len(),
            action,
        })
    }

    /// Orbits as sorted point lists, ordered by least point.
    pub fn orbits(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.size];
        let mut out = Vec::new();
        for start in 0..self.size {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut orb = vec![start as u32];
            let mut i = 0;
            while i < orb.len() {
                for a in &self.action {
                    let y = a.image(orb[i]);
                    if !seen[y as usize] {
                        seen[y as usize] = true;
                        orb.push(y);
                    }
                }
                i += 1;
            }
            orb.sort_unstable();
            out.push(orb);
        }
        out
    }
}

/// The least element of the coset `gH` in the order given by the base images
/// of `H`'s stabilizer chain; equal for `g` and `gh`.
pub(crate) fn canonical_coset_rep(g: &Perm, h: &PermGroup) -> Perm {
    let mut current = g.clone();
    for level in &h.chain().levels {
        let beta = *level
            .orbit
            .iter()
            .min_by_key(|&&b| current.image(b))
            .expect("orbit contains the base point");
        current = current.compose(level.transversal(beta).unwrap());
    }
    current
}

/// Left cosets `G/H` with `G` acting by left multiplication; point 0 is `H`.
/// Returns the set and a representative of each coset.
pub fn coset_gset(g: &PermGroup, h: &PermGroup) -> Result<(GSet, Vec<Perm>)> {
    if !h.is_subgroup_of(g) {
        return Err(Error::NotContained("coset space needs H <= G".into()));
    }
    let id = Perm::identity(g.degree());
    let mut reps = vec![canonical_coset_rep(&id, h)];
    let mut index: HashMap<Perm, u32> = HashMap::new();
    index.insert(reps[0].clone(), 0);
    let mut i = 0;
    let mut images: Vec<Vec<u32>> = vec![Vec::new(); g.generators().len()];
    while i < reps.len() {
        for (s, gen) in g.generators().iter().enumerate() {
            let c = canonical_coset_rep(&gen.compose(&reps[i]), h);
            let j = match index.get(&c) {
                Some(&j) => j,
                None => {
                    let j = reps.len() as u32;
                    index.insert(c.clone(), j);
                    reps.push(c);
                    j
                }
            };
            images[s].push(j);
        }
        i += 1;
    }
    let action = images
        .into_iter()
        .map(Perm::from_images)
        .collect::<Result<Vec<_>>>()?;
    let gset = GSet::new(g, reps.len(), action)?;
    Ok((gset, reps))
}
