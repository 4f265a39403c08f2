use std::collections::HashMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algstruct::{
    is_local_with_radical, primitive_idempotents_with_radical, radical, FdAlgebra, Integral,
};
use crate::error::{Error, Result};
use crate::gflinalg::{solve_commutant, sylvester_kernel, Fq, GField, MatGF, Subspace};

use super::gset::GSet;
use super::module::GModule;

/// `End_{kG}(k[X])` on the basis of orbital matrices: one 0/1 matrix per
/// orbit of `G` on `X × X`.
#[derive(Debug)]
pub struct OrbitalAlgebra {
    size: usize,
    labels: Vec<u32>,
    reps: Vec<(u32, u32)>,
    algebra: FdAlgebra,
    radical: std::sync::OnceLock<Subspace>,
}

impl OrbitalAlgebra {
    pub fn new(x: &GSet, field: &Arc<GField>) -> Result<OrbitalAlgebra> {
        let n = x.size();
        let mut labels = vec![u32::MAX; n * n];
        let mut reps = Vec::new();
        let mut sizes = Vec::new();
        let mut queue = Vec::new();
        for start in 0..n * n {
            if labels[start] != u32::MAX {
                continue;
            }
            let k = reps.len() as u32;
            reps.push(((start / n) as u32, (start % n) as u32));
            labels[start] = k;
            queue.clear();
            queue.push(start);
            let mut i = 0;
            while i < queue.len() {
                let (a, b) = (queue[i] / n, queue[i] % n);
                for g in x.action() {
                    let c = g.image(a as u32) as usize * n + g.image(b as u32) as usize;
                    if labels[c] == u32::MAX {
                        labels[c] = k;
                        queue.push(c);
                    }
                }
                i += 1;
            }
            sizes.push(queue.len() as u64);
        }
        let d = reps.len();
        // c[a][b][k] = #{y : (x_k, y) in a, (y, z_k) in b}
        let mut rows: Vec<Vec<(u32, u32, u64)>> = vec![Vec::new(); d];
        let mut counts: HashMap<(u32, u32), u64> = HashMap::new();
        for (k, &(xk, zk)) in reps.iter().enumerate() {
            counts.clear();
            for y in 0..n {
                let a = labels[xk as usize * n + y];
                let b = labels[y * n + zk as usize];
                *counts.entry((a, b)).or_default() += 1;
            }
            for (&(a, b), &c) in &counts {
                rows[a as usize].push((b, k as u32, c));
            }
        }
        for r in &mut rows {
            r.sort_unstable();
        }
        let traces: Vec<u64> = reps
            .iter()
            .zip(&sizes)
            .map(|(&(a, b), &s)| if a == b { s } else { 0 })
            .collect();
        let p = field.p() as u64;
        let field_rows: Vec<Vec<(u32, u32, Fq)>> = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&(b, k, c)| (b, k, (c % p) as Fq))
                    .collect()
            })
            .collect();
        let unit: Vec<Fq> = reps.iter().map(|&(a, b)| Fq::from(a == b)).collect();
        let algebra = FdAlgebra::new(field, d, field_rows, unit)?.with_integral(Integral {
            degree: n,
            rows,
            traces,
        });
        Ok(OrbitalAlgebra {
            size: n,
            labels,
            reps,
            algebra,
            radical: std::sync::OnceLock::new(),
        })
    }

    pub fn algebra(&self) -> &FdAlgebra {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn radical(&self) -> &Subspace {
        self.radical.get_or_init(|| radical(&self.algebra))
    }

    /// The `|X| × |X|` matrix of an algebra element.
    pub fn matrix_of(&self, x: &[Fq]) -> MatGF {
        let n = self.size;
        let data = self.labels.iter().map(|&l| x[l as usize]).collect();
        MatGF::from_vec(self.algebra.field(), n, n, data)
    }

    /// Coordinates of a matrix commuting with the action.
    pub fn coords_of(&self, m: &MatGF) -> Vec<Fq> {
        self.reps
            .iter()
            .map(|&(a, b)| m.get(a as usize, b as usize))
            .collect()
    }
}

enum Realization {
    /// Corner of an orbital algebra; the basis is in orbital coordinates.
    Orbital {
        orbital: Arc<OrbitalAlgebra>,
        basis: Subspace,
    },
    /// Matrices on the module's own coordinates.
    Commutant(Vec<MatGF>),
}

/// `End_{kG}(M)` with its radical and a way back to endomorphisms.
pub struct EndoAlgebra {
    pub algebra: FdAlgebra,
    pub radical: Subspace,
    realization: Realization,
}

impl EndoAlgebra {
    /// For permutation-basis modules: the matrix on `k[X]`; otherwise the
    /// matrix on module coordinates.
    pub fn to_matrix(&self, x: &[Fq]) -> MatGF {
        match &self.realization {
            Realization::Orbital { orbital, basis } => orbital.matrix_of(&basis.combine(x)),
            Realization::Commutant(mats) => {
                let f = self.algebra.field();
                let n = mats[0].rows();
                let mut out = MatGF::zeros(f, n, n);
                for (m, &c) in mats.iter().zip(x) {
                    if c != 0 {
                        out.add_scaled(m, c);
                    }
                }
                out
            }
        }
    }
}

/// The endomorphism algebra: a corner of the orbital algebra when the module
/// has a permutation basis, the commutant of the action matrices otherwise.
pub fn endo_algebra(m: &GModule) -> Result<EndoAlgebra> {
    if m.is_zero() {
        return Err(Error::InvalidInput("zero module".into()));
    }
    if let Some(prov) = m.provenance() {
        let orbital = Arc::new(OrbitalAlgebra::new(&prov.gset, m.field())?);
        return endo_from_orbital(orbital, prov.projector.as_ref());
    }
    let basis = solve_commutant(m.field(), m.dim(), m.action());
    let algebra = FdAlgebra::from_matrices(m.field(), &basis)?;
    let rad = radical(&algebra);
    Ok(EndoAlgebra {
        algebra,
        radical: rad,
        realization: Realization::Commutant(basis),
    })
}

/// `e A e` for the orbital algebra `A`, with `J(eAe) = e J(A) e`.
pub fn endo_from_orbital(orbital: Arc<OrbitalAlgebra>, projector: Option<&MatGF>) -> Result<EndoAlgebra> {
    let a = orbital.algebra();
    let f = a.field().clone();
    let (algebra, basis) = match projector {
        None => (a.clone(), Subspace::full(&f, a.dim())),
        Some(e) => a.corner(&orbital.coords_of(e))?,
    };
    let jac = orbital.radical();
    let radical = match projector {
        None => jac.clone(),
        Some(e) => {
            let e = orbital.coords_of(e);
            let rows: Vec<Vec<Fq>> = (0..jac.dim())
                .map(|i| basis.coords(&a.mul(&a.mul(&e, jac.vector(i)), &e)))
                .collect();
            Subspace::from_rows(&f, algebra.dim(), &rows)
        }
    };
    Ok(EndoAlgebra {
        algebra,
        radical,
        realization: Realization::Orbital { orbital, basis },
    })
}

/// Indecomposable summands cut out by a complete set of primitive
/// orthogonal idempotents of the endomorphism algebra.
pub fn decompose(m: &GModule, seed: u64) -> Result<Vec<GModule>> {
    if m.is_zero() {
        return Ok(Vec::new());
    }
    let endo = endo_algebra(m)?;
    decompose_with(m, &endo, seed)
}

pub fn decompose_with(m: &GModule, endo: &EndoAlgebra, seed: u64) -> Result<Vec<GModule>> {
    let dec = primitive_idempotents_with_radical(&endo.algebra, &endo.radical, seed)?;
    let mut out = Vec::with_capacity(dec.idempotents.len());
    for f in &dec.idempotents {
        let mat = endo.to_matrix(f);
        let summand = match (&endo.realization, m.provenance()) {
            (Realization::Orbital { .. }, Some(prov)) => {
                GModule::permutation_summand(&prov.gset, m.field(), Some(mat))?
            }
            _ => m.summand(&mat)?,
        };
        out.push(summand);
    }
    Ok(out)
}

/// Indecomposability via locality of the endomorphism algebra; `absolute`
/// also demands a one-dimensional top, i.e. indecomposability over the
/// algebraic closure.
pub fn is_indecomposable(m: &GModule, absolute: bool) -> Result<bool> {
    let endo = endo_algebra(m)?;
    let loc = is_local_with_radical(&endo.algebra, &endo.radical)?;
    Ok(loc.local && (!absolute || loc.top_dim == 1))
}

/// Basis of `Hom_{kG}(a, b)` as `dim b × dim a` matrices.
pub fn hom_space(a: &GModule, b: &GModule) -> Result<Vec<MatGF>> {
    if !a.group().same_as(b.group()) || a.group().generators() != b.group().generators() {
        return Err(Error::InvalidInput("modules for different groups".into()));
    }
    Ok(sylvester_kernel(a.field(), b.dim(), a.dim(), a.action(), b.action()))
}

/// Searches for `φ: a → b` and `ψ: b → a` with `ψ φ` invertible, which
/// certifies `a` as a direct summand of `b`. For indecomposable `a` such a
/// pair exists exactly when `a | b`, and random pairs find it with
/// probability at least `1 - 1/q` per try.
pub fn split_pair(a: &GModule, b: &GModule, seed: u64, tries: usize) -> Result<Option<(MatGF, MatGF)>> {
    let phis = hom_space(a, b)?;
    let psis = hom_space(b, a)?;
    if phis.is_empty() || psis.is_empty() {
        return Ok(None);
    }
    let f = a.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut random = |basis: &[MatGF]| {
        let mut out = MatGF::zeros(f, basis[0].rows(), basis[0].cols());
        for m in basis {
            let c = rng.gen_range(0..f.size()) as Fq;
            out.add_scaled(m, c);
        }
        out
    };
    for _ in 0..tries {
        let phi = random(&phis);
        let psi = random(&psis);
        if psi.mul(&phi).rank() == a.dim() {
            return Ok(Some((phi, psi)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gflinalg::field_make;
    use crate::modrep::{coset_gset, perm_module};
    use crate::permgroup::{Perm, PermGroup};

    fn grp(degree: usize, gens: &[&str]) -> PermGroup {
        PermGroup::new(
            degree,
            gens.iter().map(|s| Perm::parse(degree, s).unwrap()).collect(),
        )
        .unwrap()
    }

    fn dims(ms: &[GModule]) -> Vec<usize> {
        let mut d: Vec<usize> = ms.iter().map(|m| m.dim()).collect();
        d.sort_unstable();
        d
    }

    #[test]
    fn orbital_matches_commutant() {
        let f2 = field_make(2, 1).unwrap();
        let s4 = grp(4, &["(1 2 3 4)", "(1 2)"]);
        let v4 = grp(4, &["(1 2)(3 4)", "(1 3)(2 4)"]);
        let (x, _) = coset_gset(&s4, &v4).unwrap();
        let m = perm_module(&x, &f2);
        let orb = endo_algebra(&m).unwrap();
        let com = endo_algebra(&m.without_provenance()).unwrap();
        assert_eq!(orb.algebra.dim(), com.algebra.dim());
        assert_eq!(orb.radical.dim(), com.radical.dim());
        // orbital basis matrices commute with the action
        for i in 0..orb.algebra.dim() {
            let e = orb.to_matrix(&orb.algebra.basis_vector(i));
            for a in m.action() {
                assert_eq!(a.mul(&e), e.mul(a));
            }
        }
    }

    #[test]
    fn small_decompositions() {
        let f2 = field_make(2, 1).unwrap();
        let f3 = field_make(3, 1).unwrap();
        let s3 = grp(3, &["(1 2 3)", "(1 2)"]);
        let c2 = grp(3, &["(1 2)"]);
        let (x, _) = coset_gset(&s3, &c2).unwrap();
        let m = perm_module(&x, &f2);
        assert_eq!(dims(&decompose(&m, 1).unwrap()), vec![1, 2]);
        assert_eq!(dims(&decompose(&m.without_provenance(), 1).unwrap()), vec![1, 2]);
        let (reg, _) = coset_gset(&s3, &PermGroup::trivial(3)).unwrap();
        let r = perm_module(&reg, &f3);
        let parts = decompose(&r, 7).unwrap();
        assert_eq!(dims(&parts), vec![3, 3]);
        for part in &parts {
            assert!(is_indecomposable(part, true).unwrap());
        }
        assert!(!is_indecomposable(&r, false).unwrap());
    }

    #[test]
    fn indecomposability_flags() {
        let f2 = field_make(2, 1).unwrap();
        let f3 = field_make(3, 1).unwrap();
        let c3 = grp(3, &["(1 2 3)"]);
        let k = GModule::trivial(&c3, &f3);
        assert!(is_indecomposable(&k, true).unwrap());
        let reg = perm_module(&coset_gset(&c3, &PermGroup::trivial(3)).unwrap().0, &f3);
        assert!(is_indecomposable(&reg, true).unwrap());
        let kk = GModule::new(&c3, &f3, 2, vec![MatGF::identity(&f3, 2)]).unwrap();
        assert!(!is_indecomposable(&kk, false).unwrap());
        // GF(2)C3 natural: k + (2-dim irreducible, not absolutely so)
        let parts = decompose(&perm_module(&GSet::natural(&c3), &f2), 3).unwrap();
        assert_eq!(dims(&parts), vec![1, 2]);
        let two = parts.iter().find(|m| m.dim() == 2).unwrap();
        assert!(is_indecomposable(two, false).unwrap());
        assert!(!is_indecomposable(two, true).unwrap());
    }

    #[test]
    fn split_pairs() {
        let f2 = field_make(2, 1).unwrap();
        let s3 = grp(3, &["(1 2 3)", "(1 2)"]);
        let m = perm_module(&GSet::natural(&s3), &f2).without_provenance();
        let k = GModule::trivial(&s3, &f2);
        assert!(split_pair(&k, &m, 1, 20).unwrap().is_some());
        let parts = decompose(&m, 1).unwrap();
        let two = parts.iter().find(|m| m.dim() == 2).unwrap();
        assert!(split_pair(two, &k, 1, 20).unwrap().is_none());
    }
}
