use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::gflinalg::{MatGF, Quotient, Subspace};
use crate::permgroup::{subgroups_of_pgroup, PermGroup};

use super::module::GModule;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BrauerMethod {
    /// Span of the `Q`-fixed points of a permutation basis, cut by the
    /// restricted projector.
    FixedBasis,
    /// `M^Q / Σ_R tr_R^Q(M^R)` over the maximal subgroups `R` of `Q`.
    QuotientFormula,
}

/// `M(Q)` as a module for `N_G(Q)`.
#[derive(Clone, Debug)]
pub struct BrauerResult {
    pub subgroup: PermGroup,
    pub normalizer: PermGroup,
    pub module: GModule,
    pub method: BrauerMethod,
}

/// Brauer construction, using the permutation basis when the module has one.
pub fn brauer_quotient(m: &GModule, q: &PermGroup) -> Result<BrauerResult> {
    let method = if m.provenance().is_some() {
        BrauerMethod::FixedBasis
    } else {
        BrauerMethod::QuotientFormula
    };
    brauer_quotient_with(m, q, method)
}

pub fn brauer_quotient_with(m: &GModule, q: &PermGroup, method: BrauerMethod) -> Result<BrauerResult> {
    let p = m.field().p();
    if !q.is_p_group(p) {
        return Err(Error::NotPGroup(p));
    }
    q.require_subgroup_of(m.group(), "Brauer construction needs Q <= G")?;
    let n = m.group().normalizer(q);
    let module = match method {
        BrauerMethod::FixedBasis => fixed_basis(m, q, &n)?,
        BrauerMethod::QuotientFormula => quotient_formula(m, q, &n)?,
    };
    Ok(BrauerResult {
        subgroup: q.clone(),
        normalizer: n,
        module,
        method,
    })
}

fn fixed_basis(m: &GModule, q: &PermGroup, n: &PermGroup) -> Result<GModule> {
    let prov = m
        .provenance()
        .ok_or_else(|| Error::InvalidInput("fixed-basis method needs a permutation basis".into()))?;
    let points = prov.gset.fixed_points(q)?;
    let y = prov.gset.sub_gset(n, &points)?;
    let idx: Vec<usize> = points.iter().map(|&x| x as usize).collect();
    let projector = prov.projector.as_ref().map(|e| e.submatrix(&idx, &idx));
    GModule::permutation_summand(&y, m.field(), projector)
}

/// `dim M(Q)` without building the `N_G(Q)`-action.
pub fn brauer_dim(m: &GModule, q: &PermGroup) -> Result<usize> {
    match m.provenance() {
        Some(prov) => {
            let p = m.field().p();
            if !q.is_p_group(p) {
                return Err(Error::NotPGroup(p));
            }
            let points = prov.gset.fixed_points(q)?;
            Ok(match &prov.projector {
                None => points.len(),
                Some(e) => {
                    let idx: Vec<usize> = points.iter().map(|&x| x as usize).collect();
                    e.submatrix(&idx, &idx).rank()
                }
            })
        }
        None => Ok(brauer_quotient_with(m, q, BrauerMethod::QuotientFormula)?.module.dim()),
    }
}

/// Σ over maximal `R < Q` of `tr_R^Q(M^R)`.
pub fn trace_sum(m: &GModule, q: &PermGroup) -> Result<Subspace> {
    let p = m.field().p();
    let mut sum = Subspace::zero(m.field(), m.dim());
    if q.is_trivial() {
        return Ok(sum);
    }
    let target = q.order() / BigUint::from(p);
    for r in subgroups_of_pgroup(q, p)? {
        if r.order() == &target {
            sum = sum.sum(&m.relative_trace_image(&r, q)?);
        }
    }
    Ok(sum)
}

fn quotient_formula(m: &GModule, q: &PermGroup, n: &PermGroup) -> Result<GModule> {
    let fixed = m.fixed_points(q)?;
    let traces = trace_sum(m, q)?;
    let quotient = Quotient::new(&fixed, &traces);
    let mats = m.matrices_of(n.generators())?;
    let action: Vec<MatGF> = mats.iter().map(|a| quotient.induced(a)).collect();
    GModule::new(n, m.field(), quotient.dim(), action)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gflinalg::field_make;
    use crate::modrep::{coset_gset, perm_module, GSet};
    use crate::permgroup::Perm;

    fn grp(degree: usize, gens: &[&str]) -> PermGroup {
        PermGroup::new(
            degree,
            gens.iter().map(|s| Perm::parse(degree, s).unwrap()).collect(),
        )
        .unwrap()
    }

    fn both(m: &GModule, q: &PermGroup) -> (usize, usize) {
        let a = brauer_quotient_with(m, q, BrauerMethod::FixedBasis).unwrap();
        let b = brauer_quotient_with(m, q, BrauerMethod::QuotientFormula).unwrap();
        (a.module.dim(), b.module.dim())
    }

    #[test]
    fn trivial_and_regular() {
        let f2 = field_make(2, 1).unwrap();
        let d8 = grp(4, &["(1 2 3 4)", "(1 3)"]);
        let k = perm_module(&coset_gset(&d8, &d8).unwrap().0, &f2);
        let reg = perm_module(&coset_gset(&d8, &PermGroup::trivial(4)).unwrap().0, &f2);
        for q in subgroups_of_pgroup(&d8, 2).unwrap() {
            assert_eq!(both(&k, &q), (1, 1));
            let expect = if q.is_trivial() { 8 } else { 0 };
            assert_eq!(both(&reg, &q), (expect, expect));
        }
    }

    #[test]
    fn coset_fixed_points() {
        let f2 = field_make(2, 1).unwrap();
        let s4 = grp(4, &["(1 2 3 4)", "(1 2)"]);
        let d8 = grp(4, &["(1 2 3 4)", "(1 3)"]);
        let (x, _) = coset_gset(&s4, &d8).unwrap();
        let m = perm_module(&x, &f2);
        for q in subgroups_of_pgroup(&d8, 2).unwrap() {
            let fixed = x.fixed_points(&q).unwrap().len();
            assert_eq!(both(&m, &q), (fixed, fixed));
        }
        let natural = perm_module(&GSet::natural(&s4), &f2);
        let q = grp(4, &["(1 2)"]);
        let r = brauer_quotient(&natural, &q).unwrap();
        assert_eq!(r.module.dim(), 2);
        assert_eq!(r.normalizer.order_u64(), 4);
        assert!(brauer_quotient(&natural, &grp(4, &["(1 2 3)"])).is_err());
    }
}
