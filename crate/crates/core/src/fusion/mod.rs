//! The fusion system of a group on a p-subgroup: conjugation morphisms
//! between subgroups, control by the normalizer, the saturation test under
//! control, and fully normalized subgroups.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::permgroup::{subgroups_of_pgroup, Perm, PermGroup};

/// A morphism `Q → R`, `y ↦ g y g^-1`, with the images of `Q`'s generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub conjugator: Perm,
    pub images: Vec<Perm>,
}

/// `F_P(G)`: objects are all subgroups of `P` in canonical order.
#[derive(Clone, Debug)]
pub struct FusionSystem {
    group: PermGroup,
    p_subgroup: PermGroup,
    prime: u32,
    objects: Vec<PermGroup>,
    morphisms: BTreeMap<(usize, usize), Vec<Morphism>>,
}

pub fn build_fusion(g: &PermGroup, p_subgroup: &PermGroup, p: u32) -> Result<FusionSystem> {
    if !p_subgroup.is_subgroup_of(g) {
        return Err(Error::NotContained("P is not a subgroup of G".into()));
    }
    let objects = subgroups_of_pgroup(p_subgroup, p)?;
    let mut morphisms = BTreeMap::new();
    for (i, q) in objects.iter().enumerate() {
        for (j, r) in objects.iter().enumerate() {
            if q.order() > r.order() {
                continue;
            }
            let maps: Vec<Morphism> = g
                .transporter_cosets(q, r)
                .into_iter()
                .map(|c| Morphism {
                    images: q.generators().iter().map(|y| y.conjugate_by(&c)).collect(),
                    conjugator: c,
                })
                .collect();
            if !maps.is_empty() {
                morphisms.insert((i, j), maps);
            }
        }
    }
    Ok(FusionSystem {
        group: g.clone(),
        p_subgroup: p_subgroup.clone(),
        prime: p,
        objects,
        morphisms,
    })
}

impl FusionSystem {
    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn p_subgroup(&self) -> &PermGroup {
        &self.p_subgroup
    }

    pub fn prime(&self) -> u32 {
        self.prime
    }

    pub fn objects(&self) -> &[PermGroup] {
        &self.objects
    }

    /// Index of an object (a subgroup of `P`).
    pub fn object_index(&self, q: &PermGroup) -> Option<usize> {
        self.objects.iter().position(|o| o.same_as(q))
    }

    /// `Hom_F(Q_i, Q_j)`.
    pub fn morphisms(&self, i: usize, j: usize) -> &[Morphism] {
        self.morphisms.get(&(i, j)).map_or(&[], |v| v.as_slice())
    }

    /// Indices of the distinct images of `Q_i` in `P`.
    pub fn conjugates(&self, i: usize) -> Vec<usize> {
        let top = self.objects.len() - 1;
        let mut out = BTreeSet::new();
        for m in self.morphisms(i, top) {
            let img = PermGroup::generated_by(self.group.degree(), &m.images);
            out.insert(self.object_index(&img).expect("image is a subgroup of P"));
        }
        out.into_iter().collect()
    }

    /// `|N_P(Q)| >= |N_P(Q')|` for every `F`-conjugate `Q'` of `Q`.
    pub fn is_fully_normalized(&self, i: usize) -> bool {
        let p = &self.p_subgroup;
        let own = p.normalizer(&self.objects[i]).order().clone();
        self.conjugates(i)
            .into_iter()
            .all(|j| p.normalizer(&self.objects[j]).order() <= &own)
    }

    pub fn summary(&self) -> FusionSummary {
        let mut counts: BTreeMap<String, usize> = BTreeMap::new();
        for (&(i, j), maps) in &self.morphisms {
            let key = format!("{}->{}", self.objects[i].order(), self.objects[j].order());
            *counts.entry(key).or_default() += maps.len();
        }
        FusionSummary {
            objects: self.objects.len(),
            morphism_counts: counts,
            control: None,
            control_witness: None,
            saturated: None,
        }
    }
}

/// Failure of control: the map `c_g` on `Q` is not induced by `N_G(P)`.
#[derive(Clone, Debug)]
pub struct ControlWitness {
    pub subgroup: PermGroup,
    pub element: Perm,
}

/// Whether `F_P(G) = F_P(N_G(P))`; on failure returns a witness `(Q, g)`
/// with `^g Q ≤ P` and `g ∉ N_G(P) C_G(Q)`.
pub fn is_controlled_by_normalizer(
    g: &PermGroup,
    p_subgroup: &PermGroup,
    p: u32,
) -> Result<(bool, Option<ControlWitness>)> {
    let n = g.normalizer(p_subgroup);
    for q in subgroups_of_pgroup(p_subgroup, p)? {
        let local: BTreeSet<Vec<Perm>> = n
            .transporter_cosets(&q, p_subgroup)
            .iter()
            .map(|c| q.generators().iter().map(|y| y.conjugate_by(c)).collect())
            .collect();
        for c in g.transporter_cosets(&q, p_subgroup) {
            let key: Vec<Perm> = q.generators().iter().map(|y| y.conjugate_by(&c)).collect();
            if !local.contains(&key) {
                return Ok((
                    false,
                    Some(ControlWitness {
                        subgroup: q,
                        element: c,
                    }),
                ));
            }
        }
    }
    Ok((true, None))
}

/// Exhaustive confirmation of a control witness: no `n ∈ N_G(P)` has
/// `n^-1 g ∈ C_G(Q)`.
pub fn confirm_witness(g: &PermGroup, p_subgroup: &PermGroup, w: &ControlWitness) -> bool {
    let transports = w
        .subgroup
        .generators()
        .iter()
        .all(|y| p_subgroup.contains(&y.conjugate_by(&w.element)));
    let n = g.normalizer(p_subgroup);
    transports
        && g.contains(&w.element)
        && n.elements().iter().all(|x| {
            let c = x.inverse().compose(&w.element);
            !w.subgroup.generators().iter().all(|y| y.commutes_with(&c))
        })
}

/// Under control, saturation of `F_P(G)` is `p ∤ |N_G(P) : P C_G(P)|`.
pub fn is_saturated_given_control(g: &PermGroup, p_subgroup: &PermGroup, p: u32) -> Result<bool> {
    let (control, _) = is_controlled_by_normalizer(g, p_subgroup, p)?;
    if !control {
        return Err(Error::Hypothesis(
            "saturation test is only valid when N_G(P) controls fusion".into(),
        ));
    }
    Ok(saturation_index(g, p_subgroup) % BigUint::from(p) != BigUint::default())
}

/// `|N_G(P) : P C_G(P)|`.
pub fn saturation_index(g: &PermGroup, p_subgroup: &PermGroup) -> BigUint {
    let n = g.normalizer(p_subgroup);
    let pc = p_subgroup.join(&g.centralizer(p_subgroup));
    n.order() / pc.order()
}

/// Report block for a fusion system.
#[derive(Clone, Debug, Serialize)]
pub struct FusionSummary {
    pub objects: usize,
    pub morphism_counts: BTreeMap<String, usize>,
    pub control: Option<bool>,
    pub control_witness: Option<(String, String)>,
    pub saturated: Option<bool>,
}
