use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gflinalg::GField;
use crate::permgroup::{subgroups_of_pgroup, PermGroup};

use super::brauer::brauer_quotient;
use super::endo::decompose;
use super::gset::coset_gset;
use super::module::{perm_module, GModule};

/// The unique indecomposable summand of `k[G/H]` on which the augmentation
/// (sum of coordinates) does not vanish.
pub fn scott_module(g: &PermGroup, h: &PermGroup, field: &Arc<GField>, seed: u64) -> Result<GModule> {
    let (x, _) = coset_gset(g, h)?;
    let m = perm_module(&x, field);
    if m.dim() == 1 {
        return Ok(m);
    }
    let mut found: Vec<GModule> = decompose(&m, seed)?
        .into_iter()
        .filter(|s| {
            let prov = s.provenance().expect("permutation summand");
            let e = prov.projector_matrix(field);
            (0..e.cols()).any(|j| {
                let col = e.column(j);
                col.iter().fold(0, |acc, &c| field.add(acc, c)) != 0
            })
        })
        .collect();
    if found.len() != 1 {
        return Err(Error::Internal(format!(
            "{} summands with nonzero augmentation",
            found.len()
        )));
    }
    Ok(found.pop().unwrap())
}

/// The largest `Q <= container` with `M(Q) != 0`, searched from the top of
/// the subgroup lattice. `M` must be indecomposable with a permutation basis.
pub fn vertex(m: &GModule, container: &PermGroup) -> Result<PermGroup> {
    if m.provenance().is_none() {
        return Err(Error::InvalidInput("vertex search needs a permutation basis".into()));
    }
    if m.is_zero() || !super::endo::is_indecomposable(m, false)? {
        return Err(Error::Hypothesis("module is decomposable".into()));
    }
    let p = m.field().p();
    let subs = subgroups_of_pgroup(container, p)?;
    for q in subs.iter().rev() {
        if brauer_quotient(m, q)?.module.dim() > 0 {
            return Ok(q.clone());
        }
    }
    Err(Error::Internal("no subgroup with nonzero Brauer quotient".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gflinalg::field_make;
    use crate::modrep::is_indecomposable;
    use crate::permgroup::Perm;

    fn grp(degree: usize, gens: &[&str]) -> PermGroup {
        PermGroup::new(
            degree,
            gens.iter().map(|s| Perm::parse(degree, s).unwrap()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn small_scott_modules() {
        let f2 = field_make(2, 1).unwrap();
        let s3 = grp(3, &["(1 2 3)", "(1 2)"]);
        let c2 = grp(3, &["(1 2)"]);
        let sc = scott_module(&s3, &c2, &f2, 1).unwrap();
        assert_eq!(sc.dim(), 1);
        assert_eq!(scott_module(&s3, &s3, &f2, 1).unwrap().dim(), 1);
        // p-groups: transitive permutation modules are indecomposable
        let d8 = grp(4, &["(1 2 3 4)", "(1 3)"]);
        for r in subgroups_of_pgroup(&d8, 2).unwrap() {
            let sc = scott_module(&d8, &r, &f2, 2).unwrap();
            assert_eq!(sc.dim() as u64, 8 / r.order_u64());
            assert_eq!(vertex(&sc, &d8).unwrap().order(), r.order());
        }
    }

    #[test]
    fn vertices() {
        let f2 = field_make(2, 1).unwrap();
        let s4 = grp(4, &["(1 2 3 4)", "(1 2)"]);
        let d8 = s4.sylow(2);
        let k = scott_module(&s4, &s4, &f2, 1).unwrap();
        assert!(vertex(&k, &d8).unwrap().same_as(&d8));
        let sc = scott_module(&s4, &d8, &f2, 1).unwrap();
        assert!(is_indecomposable(&sc, true).unwrap());
        assert!(vertex(&sc, &d8).unwrap().same_as(&d8));
        let triv = PermGroup::trivial(4);
        let c2 = grp(4, &["(1 2)"]);
        let free = scott_module(&c2, &triv, &f2, 1).unwrap();
        assert!(vertex(&free, &c2).unwrap().is_trivial());
    }
}
