//! Permutation groups with stabilizer chains: membership, order, backtrack
//! searches, Sylow subgroups, subgroup lattices of p-groups and products.

mod chain;
mod perm;
mod pgroup;
mod search;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;

pub use chain::{ChainEvaluator, PermRep, Representation, StabChain};
pub use perm::Perm;
pub use pgroup::subgroups_of_pgroup;
pub use search::{
    centralizer_scan, normalizer_scan, transporter_elements, transporter_elements_scan,
};

use crate::error::{Error, Result};

/// A permutation group given by generators, certified by a stabilizer chain.
///
/// Subgroups are represented by the same type; containment is always decided
/// by sifting, never by comparing element sets.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    chain: Arc<StabChain>,
    order: BigUint,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Perm>) -> Result<PermGroup> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let chain = StabChain::new(degree, &generators);
        let order = chain
            .orbit_lengths()
            .iter()
            .fold(BigUint::from(1u32), |acc, &l| acc * BigUint::from(l));
        Ok(PermGroup {
            degree,
            generators,
            chain: Arc::new(chain),
            order,
        })
    }

    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup::new(degree, Vec::new()).expect("no generators")
    }

    /// Generated subgroup, dropping identities and generators already implied.
    pub fn generated_by(degree: usize, elements: &[Perm]) -> PermGroup {
        let mut group = PermGroup::trivial(degree);
        for x in elements {
            if !group.contains(x) {
                let mut gens = group.generators.clone();
                gens.push(x.clone());
                group = PermGroup::new(degree, gens).expect("degrees checked by caller");
            }
        }
        group
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn chain(&self) -> &StabChain {
        &self.chain
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    /// Order as a machine integer; every group handled at desk scale fits.
    pub fn order_u64(&self) -> u64 {
        u64::try_from(&self.order).expect("group order exceeds u64")
    }

    pub fn is_trivial(&self) -> bool {
        self.chain.levels.is_empty()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        g.degree() == self.degree && self.chain.contains(g)
    }

    pub fn is_member(&self, g: &Perm) -> Result<bool> {
        if g.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: g.degree(),
            });
        }
        Ok(self.chain.contains(g))
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.contains(g))
    }

    /// Equality as subgroups of a common symmetric group.
    pub fn same_as(&self, other: &PermGroup) -> bool {
        self.order == other.order && self.is_subgroup_of(other)
    }

    pub(crate) fn require_subgroup_of(&self, other: &PermGroup, what: &str) -> Result<()> {
        if self.is_subgroup_of(other) {
            Ok(())
        } else {
            Err(Error::NotContained(what.to_string()))
        }
    }

    /// All elements, in the deterministic order of the chain traversal.
    pub fn elements(&self) -> Vec<Perm> {
        let levels = &self.chain.levels;
        let mut out = Vec::new();
        let mut stack = vec![(0usize, Perm::identity(self.degree))];
        while let Some((l, prefix)) = stack.pop() {
            if l == levels.len() {
                out.push(prefix);
                continue;
            }
            for &beta in levels[l].orbit.iter().rev() {
                let u = levels[l].transversal(beta).unwrap();
                stack.push((l + 1, prefix.compose(u)));
            }
        }
        out
    }

    /// Orbit of a point, sorted.
    pub fn orbit(&self, x: u32) -> Vec<u32> {
        let mut seen = vec![false; self.degree];
        seen[x as usize] = true;
        let mut orbit = vec![x];
        let mut i = 0;
        while i < orbit.len() {
            let y = orbit[i];
            for g in &self.generators {
                let z = g.image(y);
                if !seen[z as usize] {
                    seen[z as usize] = true;
                    orbit.push(z);
                }
            }
            i += 1;
        }
        orbit.sort_unstable();
        orbit
    }

    /// Orbit index of every point plus orbit sizes.
    pub fn orbit_partition(&self) -> (Vec<usize>, Vec<usize>) {
        let mut id = vec![usize::MAX; self.degree];
        let mut sizes = Vec::new();
        for x in 0..self.degree as u32 {
            if id[x as usize] == usize::MAX {
                let orb = self.orbit(x);
                for &y in &orb {
                    id[y as usize] = sizes.len();
                }
                sizes.push(orb.len());
            }
        }
        (id, sizes)
    }

    /// `^g H = g H g^-1`.
    pub fn conjugate(&self, g: &Perm) -> PermGroup {
        let gens = self.generators.iter().map(|h| h.conjugate_by(g)).collect();
        PermGroup::new(self.degree, gens).expect("conjugation preserves degree")
    }

    /// `⟨self, other⟩`.
    pub fn join(&self, other: &PermGroup) -> PermGroup {
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().filter(|g| !self.contains(g)).cloned());
        PermGroup::new(self.degree, gens).expect("common degree")
    }

    pub fn intersection(&self, other: &PermGroup) -> PermGroup {
        search::intersection(self, other)
    }

    /// `C_self(H)` by backtrack search.
    pub fn centralizer(&self, h: &PermGroup) -> PermGroup {
        search::centralizer(self, h)
    }

    /// `N_self(H)` by backtrack search.
    pub fn normalizer(&self, h: &PermGroup) -> PermGroup {
        search::normalizer(self, h)
    }

    pub fn is_normal_in(&self, g: &PermGroup) -> bool {
        g.generators
            .iter()
            .all(|x| self.generators.iter().all(|h| self.contains(&h.conjugate_by(x))))
    }

    pub fn is_p_group(&self, p: u32) -> bool {
        is_power_of(&self.order, p)
    }

    /// Sylow p-subgroup grown deterministically inside successive normalizers.
    pub fn sylow(&self, p: u32) -> PermGroup {
        let target = p_part(&self.order, p);
        let mut sylow = PermGroup::trivial(self.degree);
        while sylow.order != target {
            let n = self.normalizer(&sylow);
            let step = n
                .elements()
                .into_iter()
                .find_map(|g| order_mod(&g, &sylow, p))
                .expect("p divides |N(P):P| while P is not Sylow");
            sylow = sylow.join(&PermGroup::new(self.degree, vec![step]).unwrap());
        }
        sylow
    }

    /// Normal p-complement test: the subgroup generated by all p'-elements
    /// must itself have order prime to p.
    pub fn is_p_nilpotent(&self, p: u32) -> bool {
        let pp: Vec<Perm> = self
            .elements()
            .into_iter()
            .filter(|g| g.order() % p as u64 != 0)
            .collect();
        let k = PermGroup::generated_by(self.degree, &pp);
        &k.order % BigUint::from(p) != BigUint::from(0u32)
    }

    /// Frobenius normal p-complement criterion: `N(Q)/C(Q)` is a p-group for
    /// every subgroup Q of a Sylow p-subgroup. Slower; kept as a cross-check.
    pub fn is_p_nilpotent_frobenius(&self, p: u32) -> bool {
        let s = self.sylow(p);
        subgroups_of_pgroup(&s, p)
            .expect("Sylow subgroup is a p-group")
            .iter()
            .all(|q| {
                let n = self.normalizer(q);
                let c = self.centralizer(q);
                is_power_of(&(n.order() / c.order()), p)
            })
    }

    /// Restricts a group of degree `degree + k` that fixes the last `k` points.
    pub fn truncate(&self, degree: usize) -> Result<PermGroup> {
        let mut gens = Vec::new();
        for g in &self.generators {
            if g.images()[degree..]
                .iter()
                .enumerate()
                .any(|(i, &x)| x as usize != degree + i)
            {
                return Err(Error::InvalidInput(
                    "generator moves a truncated point".into(),
                ));
            }
            gens.push(Perm::from_images(g.images()[..degree].to_vec())?);
        }
        PermGroup::new(degree, gens)
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PermGroup(degree {}, order {}, gens [", self.degree, self.order)?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "])")
    }
}

/// `g^(o/p)` when `p` divides the order `o` of `g` modulo the p-group.
fn order_mod(g: &Perm, p_group: &PermGroup, p: u32) -> Option<Perm> {
    let mut x = g.clone();
    let mut o = 1u64;
    while !p_group.contains(&x) {
        x = x.compose(g);
        o += 1;
    }
    (o % p as u64 == 0).then(|| g.pow(o / p as u64))
}

pub(crate) fn p_part(n: &BigUint, p: u32) -> BigUint {
    let p = BigUint::from(p);
    let zero = BigUint::from(0u32);
    let mut m = n.clone();
    let mut part = BigUint::from(1u32);
    while &m % &p == zero {
        m /= &p;
        part *= &p;
    }
    part
}

pub(crate) fn is_power_of(n: &BigUint, p: u32) -> bool {
    &p_part(n, p) == n
}

pub fn build_group(degree: usize, generators: Vec<Perm>) -> Result<PermGroup> {
    PermGroup::new(degree, generators)
}

/// Placement of two groups on the disjoint union of their domains.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProductEmbedding {
    pub left_degree: usize,
    pub right_degree: usize,
}

impl ProductEmbedding {
    pub fn degree(&self) -> usize {
        self.left_degree + self.right_degree
    }

    pub fn left(&self, g: &Perm) -> Perm {
        g.embed(self.degree(), 0)
    }

    pub fn right(&self, h: &Perm) -> Perm {
        h.embed(self.degree(), self.left_degree)
    }

    pub fn pair(&self, g: &Perm, h: &Perm) -> Perm {
        self.left(g).compose(&self.right(h))
    }

    pub fn project_left(&self, x: &Perm) -> Perm {
        Perm::from_images(x.images()[..self.left_degree].to_vec()).expect("product element")
    }

    pub fn project_right(&self, x: &Perm) -> Perm {
        let off = self.left_degree as u32;
        Perm::from_images(
            x.images()[self.left_degree..]
                .iter()
                .map(|&y| y - off)
                .collect(),
        )
        .expect("product element")
    }

    /// `ι₁(A) × ι₂(B)` for subgroups A, B of the two factors.
    pub fn product_of(&self, a: &PermGroup, b: &PermGroup) -> PermGroup {
        let mut gens: Vec<Perm> = a.generators().iter().map(|g| self.left(g)).collect();
        gens.extend(b.generators().iter().map(|h| self.right(h)));
        PermGroup::new(self.degree(), gens).expect("embedded degrees")
    }
}

/// `G × H` on the disjoint union of the domains.
pub fn product_group(g: &PermGroup, h: &PermGroup) -> (PermGroup, ProductEmbedding) {
    let emb = ProductEmbedding {
        left_degree: g.degree(),
        right_degree: h.degree(),
    };
    (emb.product_of(g, h), emb)
}

/// `ΔP = {(u, u)}` inside `G × H`, for P contained in both factors.
pub fn diagonal_subgroup(
    p: &PermGroup,
    g: &PermGroup,
    h: &PermGroup,
    emb: &ProductEmbedding,
) -> Result<PermGroup> {
    if g.degree() != emb.left_degree || h.degree() != emb.right_degree {
        return Err(Error::InvalidInput("factors do not match the embedding".into()));
    }
    if !p.is_subgroup_of(g) || !p.is_subgroup_of(h) {
        return Err(Error::NotContained(
            "diagonal subgroup needs P inside both factors".into(),
        ));
    }
    let gens = p.generators().iter().map(|u| emb.pair(u, u)).collect();
    PermGroup::new(emb.degree(), gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn grp(degree: usize, gens: &[&str]) -> PermGroup {
        PermGroup::new(
            degree,
            gens.iter().map(|s| Perm::parse(degree, s).unwrap()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn orders() {
        assert_eq!(grp(4, &["(1 2 3 4)", "(1 2)"]).order_u64(), 24);
        assert_eq!(grp(3, &[]).order_u64(), 1);
        assert_eq!(grp(4, &["(1 2 3)", "(2 3 4)"]).order_u64(), 12);
        assert_eq!(grp(7, &["(1 2 3 4 5 6 7)", "(1 2)"]).order_u64(), 5040);
        assert_eq!(grp(8, &["(1 2 3 4 5 6 7 8)", "(2 8)(3 7)(4 6)"]).order_u64(), 16);
    }

    #[test]
    fn membership() {
        let a4 = grp(4, &["(1 2 3)", "(2 3 4)"]);
        assert!(!a4.is_member(&Perm::parse(4, "(1 2)").unwrap()).unwrap());
        assert!(a4.is_member(&Perm::identity(4)).unwrap());
        assert!(a4.is_member(&Perm::identity(5)).is_err());
        let s4 = grp(4, &["(1 2 3 4)", "(1 2)"]);
        assert!(s4.is_member(&Perm::parse(4, "(1 2)(3 4)").unwrap()).unwrap());
    }

    #[test]
    fn elements_are_distinct_members() {
        let g = grp(6, &["(1 2 3)(4 5)", "(1 4)(2 6)"]);
        let els = g.elements();
        assert_eq!(els.len() as u64, g.order_u64());
        let mut sorted = els.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), els.len());
        assert!(els.iter().all(|x| g.contains(x)));
    }

    #[test]
    fn sylow_orders() {
        let s4 = grp(4, &["(1 2 3 4)", "(1 2)"]);
        assert_eq!(s4.sylow(2).order_u64(), 8);
        assert_eq!(s4.sylow(3).order_u64(), 3);
        assert_eq!(s4.sylow(5).order_u64(), 1);
    }

    #[test]
    fn conjugates_and_joins() {
        let h = grp(3, &["(1 2)"]);
        let g = Perm::parse(3, "(2 3)").unwrap();
        assert!(h.conjugate(&g).same_as(&grp(3, &["(1 3)"])));
        let s3 = h.join(&grp(3, &["(1 2 3)"]));
        assert_eq!(s3.order_u64(), 6);
    }

    #[test]
    fn products_and_diagonals() {
        let s3 = grp(3, &["(1 2 3)", "(1 2)"]);
        let c2 = grp(2, &["(1 2)"]);
        let (prod, emb) = product_group(&s3, &c2);
        assert_eq!((prod.degree(), prod.order_u64()), (5, 12));
        let p = grp(3, &["(1 2 3)"]);
        let d = diagonal_subgroup(&p, &s3, &s3, &ProductEmbedding {
            left_degree: 3,
            right_degree: 3,
        })
        .unwrap();
        assert_eq!(d.order_u64(), 3);
        assert!(diagonal_subgroup(&p, &s3, &c2, &emb).is_err());
        let left = emb.product_of(&s3, &PermGroup::trivial(2));
        let d2 = diagonal_subgroup(
            &grp(3, &["(1 2)"]),
            &s3,
            &s3,
            &ProductEmbedding { left_degree: 3, right_degree: 3 },
        )
        .unwrap();
        assert_eq!(d2.order_u64(), 2);
        assert_eq!(left.order_u64(), 6);
    }

    #[test]
    fn p_nilpotency() {
        let s3 = grp(3, &["(1 2 3)", "(1 2)"]);
        assert!(s3.is_p_nilpotent(2));
        assert!(!s3.is_p_nilpotent(3));
        assert!(s3.is_p_nilpotent_frobenius(2));
        assert!(!s3.is_p_nilpotent_frobenius(3));
        let d8 = grp(4, &["(1 2 3 4)", "(1 3)"]);
        assert!(d8.is_p_nilpotent(2));
    }
}
