use std::fmt::Write as _;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gflinalg::{Fq, GField, MatGF, Subspace};
use crate::permgroup::{ChainEvaluator, Perm, PermGroup, Representation};

use super::gset::{coset_gset, GSet};

/// Square matrices of one size under multiplication.
pub struct MatRep {
    pub field: Arc<GField>,
    pub n: usize,
}

impl Representation for MatRep {
    type Elt = MatGF;

    fn identity(&self) -> MatGF {
        MatGF::identity(&self.field, self.n)
    }

    fn mul(&self, a: &MatGF, b: &MatGF) -> MatGF {
        a.mul(b)
    }
}

/// Witness that a module is a direct summand of a permutation module:
/// the module is the image of `projector` acting on `k[gset]`.
#[derive(Clone, Debug)]
pub struct Provenance {
    pub gset: GSet,
    /// `None` stands for the identity (the whole permutation module).
    pub projector: Option<MatGF>,
    /// Image of the projector; module coordinates are taken on its echelon basis.
    pub image: Subspace,
}

impl Provenance {
    /// The projector as an explicit matrix.
    pub fn projector_matrix(&self, field: &Arc<GField>) -> MatGF {
        match &self.projector {
            Some(e) => e.clone(),
            None => MatGF::identity(field, self.gset.size()),
        }
    }
}

/// A finite-dimensional module for a permutation group, given by the
/// matrices of the group generators acting on column vectors.
#[derive(Clone, Debug)]
pub struct GModule {
    group: PermGroup,
    field: Arc<GField>,
    dim: usize,
    action: Vec<MatGF>,
    provenance: Option<Provenance>,
}

impl GModule {
    /// Module from generator matrices; checks sizes and invertibility.
    pub fn new(
        group: &PermGroup,
        field: &Arc<GField>,
        dim: usize,
        action: Vec<MatGF>,
    ) -> Result<GModule> {
        if action.len() != group.generators().len() {
            return Err(Error::InvalidInput("one matrix per generator expected".into()));
        }
        for a in &action {
            if a.rows() != dim || a.cols() != dim {
                return Err(Error::DegreeMismatch {
                    expected: dim,
                    found: a.rows().max(a.cols()),
                });
            }
            if dim > 0 && a.rank() != dim {
                return Err(Error::InvalidInput("action matrix is singular".into()));
            }
        }
        Ok(GModule {
            group: group.clone(),
            field: field.clone(),
            dim,
            action,
            provenance: None,
        })
    }

    pub fn trivial(group: &PermGroup, field: &Arc<GField>) -> GModule {
        GModule {
            group: group.clone(),
            field: field.clone(),
            dim: 1,
            action: vec![MatGF::identity(field, 1); group.generators().len()],
            provenance: None,
        }
    }

    /// The image of a projector `e` on `k[X]`; `e` must commute with the action.
    pub fn permutation_summand(x: &GSet, field: &Arc<GField>, e: Option<MatGF>) -> Result<GModule> {
        let n = x.size();
        let image = match &e {
            Some(e) => {
                if e.rows() != n || e.cols() != n {
                    return Err(Error::DegreeMismatch {
                        expected: n,
                        found: e.rows(),
                    });
                }
                Subspace::column_space(e)
            }
            None => Subspace::full(field, n),
        };
        let dim = image.dim();
        let mut action = Vec::with_capacity(x.action().len());
        for a in x.action() {
            let mut m = MatGF::zeros(field, dim, dim);
            let mut w = vec![0; n];
            for j in 0..dim {
                let b = image.vector(j);
                for (pt, &c) in b.iter().enumerate() {
                    w[a.image(pt as u32) as usize] = c;
                }
                if !image.contains(&w) {
                    return Err(Error::InvalidInput("projector does not commute with the action".into()));
                }
                for (i, c) in image.coords(&w).into_iter().enumerate() {
                    m.set(i, j, c);
                }
            }
            action.push(m);
        }
        Ok(GModule {
            group: x.group().clone(),
            field: field.clone(),
            dim,
            action,
            provenance: Some(Provenance {
                gset: x.clone(),
                projector: e,
                image,
            }),
        })
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn field(&self) -> &Arc<GField> {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    /// Matrix of each group generator.
    pub fn action(&self) -> &[MatGF] {
        &self.action
    }

    pub fn provenance(&self) -> Option<&Provenance> {
        self.provenance.as_ref()
    }

    /// The same module with the provenance forgotten.
    pub fn without_provenance(&self) -> GModule {
        GModule {
            provenance: None,
            ..self.clone()
        }
    }

    /// Matrices of arbitrary members of the group.
    pub fn matrices_of(&self, elements: &[Perm]) -> Result<Vec<MatGF>> {
        for g in elements {
            if !self.group.contains(g) {
                return Err(Error::NotContained(format!("{g} is not in the group")));
            }
        }
        if let Some(prov) = &self.provenance {
            let mut ev = prov.gset.evaluator();
            return Ok(elements
                .iter()
                .map(|g| {
                    let pi = ev.eval(g).expect("member");
                    induced_on_image(&self.field, &prov.image, &pi)
                })
                .collect());
        }
        let originals: Vec<(MatGF, MatGF)> = self
            .action
            .iter()
            .map(|a| (a.clone(), a.inverse().expect("invertible action")))
            .collect();
        let mut ev = ChainEvaluator::new(
            self.group.chain(),
            MatRep {
                field: self.field.clone(),
                n: self.dim,
            },
            &originals,
        );
        Ok(elements.iter().map(|g| ev.eval(g).expect("member")).collect())
    }

    /// The module viewed over a subgroup.
    pub fn restriction(&self, h: &PermGroup) -> Result<GModule> {
        if !h.is_subgroup_of(&self.group) {
            return Err(Error::NotContained("restriction to a non-subgroup".into()));
        }
        let action = self.matrices_of(h.generators())?;
        let provenance = match &self.provenance {
            Some(p) => Some(Provenance {
                gset: p.gset.restrict(h)?,
                projector: p.projector.clone(),
                image: p.image.clone(),
            }),
            None => None,
        };
        Ok(GModule {
            group: h.clone(),
            field: self.field.clone(),
            dim: self.dim,
            action,
            provenance,
        })
    }

    /// `M^Q`.
    pub fn fixed_points(&self, q: &PermGroup) -> Result<Subspace> {
        let mats = self.matrices_of(q.generators())?;
        let id = MatGF::identity(&self.field, self.dim);
        let mut sys = MatGF::zeros(&self.field, 0, self.dim);
        for m in &mats {
            sys = sys.vstack(&m.sub(&id));
        }
        Ok(Subspace::from_matrix(&sys.kernel_basis()))
    }

    /// `tr_R^Q(M^R)` for `R <= Q`.
    pub fn relative_trace_image(&self, r: &PermGroup, q: &PermGroup) -> Result<Subspace> {
        if !r.is_subgroup_of(q) {
            return Err(Error::NotContained("relative trace needs R <= Q".into()));
        }
        let fixed = self.fixed_points(r)?;
        let (_, reps) = coset_gset(q, r)?;
        let mats = self.matrices_of(&reps)?;
        let mut trace = MatGF::zeros(&self.field, self.dim, self.dim);
        for m in &mats {
            trace.add_scaled(m, 1);
        }
        Ok(fixed.image_under(&trace))
    }

    /// The submodule cut out by an idempotent endomorphism `f` (a matrix on
    /// module coordinates). Provenance, if present, is composed with `f`.
    pub fn summand(&self, f: &MatGF) -> Result<GModule> {
        if let Some(prov) = &self.provenance {
            // f in ambient terms: embed ∘ f ∘ coords ∘ projector
            let n = prov.gset.size();
            let d = self.dim;
            let mut embed = MatGF::zeros(&self.field, n, d);
            for j in 0..d {
                for (i, &c) in prov.image.vector(j).iter().enumerate() {
                    embed.set(i, j, c);
                }
            }
            let mut coords = MatGF::zeros(&self.field, d, n);
            for (i, &pc) in prov.image.pivots().iter().enumerate() {
                coords.set(i, pc, 1);
            }
            let e = prov.projector_matrix(&self.field);
            let ambient = embed.mul(&f.mul(&coords.mul(&e)));
            return GModule::permutation_summand(&prov.gset, &self.field, Some(ambient));
        }
        let image = Subspace::column_space(f);
        let action = self
            .action
            .iter()
            .map(|a| {
                let mut m = MatGF::zeros(&self.field, image.dim(), image.dim());
                for j in 0..image.dim() {
                    let w = a.mul_vec(image.vector(j));
                    if !image.contains(&w) {
                        return Err(Error::InvalidInput("not a submodule".into()));
                    }
                    for (i, c) in image.coords(&w).into_iter().enumerate() {
                        m.set(i, j, c);
                    }
                }
                Ok(m)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GModule {
            group: self.group.clone(),
            field: self.field.clone(),
            dim: image.dim(),
            action,
            provenance: None,
        })
    }

    /// The module over a larger field of the same characteristic. Only
    /// modules written over the prime field can be extended.
    pub fn extend_scalars(&self, field: &Arc<GField>) -> Result<GModule> {
        if field.p() != self.field.p() || !self.field.is_prime_field() {
            return Err(Error::InvalidInput(
                "scalar extension needs a prime-field module of the same characteristic".into(),
            ));
        }
        let lift = |m: &MatGF| MatGF::from_vec(field, m.rows(), m.cols(), m.data().to_vec());
        let provenance = match &self.provenance {
            Some(p) => {
                let projector = p.projector.as_ref().map(lift);
                let image = Subspace::from_matrix(&lift(p.image.basis()));
                Some(Provenance {
                    gset: p.gset.clone(),
                    projector,
                    image,
                })
            }
            None => None,
        };
        Ok(GModule {
            group: self.group.clone(),
            field: field.clone(),
            dim: self.dim,
            action: self.action.iter().map(lift).collect(),
            provenance,
        })
    }

    /// Debug dump: a `dim/field/p/m` header, then one block per generator
    /// with one matrix row per line. Entries of GF(p^m) are written as the
    /// integer whose base-p digits are the polynomial coefficients,
    /// least significant first.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        let f = &self.field;
        let _ = writeln!(
            out,
            "dim {} field GF({}) p {} m {}",
            self.dim,
            f.size(),
            f.p(),
            f.m()
        );
        for (i, a) in self.action.iter().enumerate() {
            let _ = writeln!(out, "gen {}", i + 1);
            for r in 0..a.rows() {
                let row: Vec<String> = a.row(r).iter().map(|x| x.to_string()).collect();
                let _ = writeln!(out, "{}", row.join(" "));
            }
        }
        out
    }
}

/// The permutation module `k[X]`.
pub fn perm_module(x: &GSet, field: &Arc<GField>) -> GModule {
    GModule::permutation_summand(x, field, None).expect("identity commutes")
}

// Matrix of a point permutation on the coordinates of an invariant subspace.
fn induced_on_image(field: &Arc<GField>, image: &Subspace, pi: &Perm) -> MatGF {
    let d = image.dim();
    let n = image.ambient();
    let mut m = MatGF::zeros(field, d, d);
    let mut w: Vec<Fq> = vec![0; n];
    for j in 0..d {
        for (pt, &c) in image.vector(j).iter().enumerate() {
            w[pi.image(pt as u32) as usize] = c;
        }
        for (i, c) in image.coords(&w).into_iter().enumerate() {
            m.set(i, j, c);
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gflinalg::field_make;

    fn grp(degree: usize, gens: &[&str]) -> PermGroup {
        PermGroup::new(
            degree,
            gens.iter().map(|s| Perm::parse(degree, s).unwrap()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn permutation_modules() {
        let f2 = field_make(2, 1).unwrap();
        let c2 = grp(2, &["(1 2)"]);
        let (reg, _) = coset_gset(&c2, &PermGroup::trivial(2)).unwrap();
        let m = perm_module(&reg, &f2);
        assert_eq!(m.dim(), 2);
        let one = perm_module(&GSet::natural(&c2).sub_gset(&c2, &[]).unwrap(), &f2);
        assert_eq!(one.dim(), 0);
        let s3 = grp(3, &["(1 2 3)", "(1 2)"]);
        let (x, _) = coset_gset(&s3, &s3).unwrap();
        let k = perm_module(&x, &f2);
        assert_eq!(k.dim(), 1);
        assert!(k.action().iter().all(|a| a.is_identity()));
        // the all-ones vector is fixed
        let m = perm_module(&GSet::natural(&s3), &f2);
        for a in m.action() {
            assert_eq!(a.mul_vec(&[1, 1, 1]), vec![1, 1, 1]);
        }
    }

    #[test]
    fn restriction_agrees_with_brute_force() {
        let f3 = field_make(3, 1).unwrap();
        let s4 = grp(4, &["(1 2 3 4)", "(1 2)"]);
        let m = perm_module(&GSet::natural(&s4), &f3).without_provenance();
        let a4 = grp(4, &["(1 2 3)", "(2 3 4)"]);
        let r = m.restriction(&a4).unwrap();
        for (g, a) in a4.generators().iter().zip(r.action()) {
            assert_eq!(a, &MatGF::permutation(&f3, g.images()));
        }
        assert_eq!(m.restriction(&s4).unwrap().action(), m.action());
        let bad = grp(5, &["(1 5)"]);
        assert!(m.restriction(&bad).is_err());
    }

    #[test]
    fn fixed_points_and_traces() {
        let f3 = field_make(3, 1).unwrap();
        let c3 = grp(3, &["(1 2 3)"]);
        let triv = PermGroup::trivial(3);
        let reg = perm_module(&coset_gset(&c3, &triv).unwrap().0, &f3);
        assert_eq!(reg.fixed_points(&triv).unwrap().dim(), 3);
        assert_eq!(reg.fixed_points(&c3).unwrap().dim(), 1);
        let tr = reg.relative_trace_image(&triv, &c3).unwrap();
        assert_eq!(tr, reg.fixed_points(&c3).unwrap());
        assert_eq!(reg.relative_trace_image(&c3, &c3).unwrap().dim(), 1);
        let k = GModule::trivial(&c3, &f3);
        assert_eq!(k.relative_trace_image(&triv, &c3).unwrap().dim(), 0);
        // orbit count
        let s4 = grp(4, &["(1 2 3 4)", "(1 2)"]);
        let m = perm_module(&GSet::natural(&s4), &f3);
        let v4 = grp(4, &["(1 2)", "(3 4)"]);
        assert_eq!(m.fixed_points(&v4).unwrap().dim(), 2);
    }

    #[test]
    fn dump_format() {
        let f4 = field_make(2, 2).unwrap();
        let c2 = grp(2, &["(1 2)"]);
        let m = perm_module(&GSet::natural(&c2), &f4);
        assert_eq!(m.dump(), "dim 2 field GF(4) p 2 m 2\ngen 1\n0 1\n1 0\n");
    }
}
