//! Primitive idempotents: split `A/J` by central then corner idempotents
//! obtained from minimal polynomials, and lift through the radical.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{radical, FdAlgebra};
use crate::error::{Error, Result};
use crate::gflinalg::poly::{factor, Poly};
use crate::gflinalg::{Fq, MatGF, Subspace};

const SPLIT_ATTEMPTS: usize = 500;

/// A complete set of orthogonal primitive idempotents.
#[derive(Clone, Debug)]
pub struct IdempotentDecomposition {
    pub idempotents: Vec<Vec<Fq>>,
    pub radical_dim: usize,
    /// Per simple component of `A/J`: (degree of its centre over the base
    /// field, matrix size).
    pub top_dims: Vec<(usize, usize)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Locality {
    pub local: bool,
    /// `dim A/J` over the base field.
    pub top_dim: usize,
}

impl Locality {
    /// Local with a one-dimensional top: stays local over every extension.
    pub fn absolutely_local(&self) -> bool {
        self.local && self.top_dim == 1
    }
}

pub fn is_local(a: &FdAlgebra) -> Result<Locality> {
    let j = radical(a);
    is_local_with_radical(a, &j)
}

/// Locality given the radical: `A/J` must be a field.
pub fn is_local_with_radical(a: &FdAlgebra, j: &Subspace) -> Result<Locality> {
    let top_dim = a.dim() - j.dim();
    if top_dim == 1 {
        return Ok(Locality { local: true, top_dim });
    }
    let s = a.quotient(j)?.algebra;
    let local = s.is_commutative() && berlekamp(&s, &span_all(&s)).dim() == 1;
    Ok(Locality { local, top_dim })
}

fn span_all(s: &FdAlgebra) -> Subspace {
    Subspace::full(s.field(), s.dim())
}

/// `{x ∈ V : x^q = x}` for a subspace V of a commutative algebra closed under
/// the Frobenius map (which is linear there).
fn berlekamp(s: &FdAlgebra, space: &Subspace) -> Subspace {
    let q = s.field().size() as u64;
    let d = space.dim();
    // columns: coordinates of (v_i^q - v_i) in the ambient basis
    let mut cols = MatGF::zeros(s.field(), s.dim(), d);
    for i in 0..d {
        let v = space.vector(i);
        let w = s.sub(&s.pow_in(v, q, s.unit()), v);
        for k in 0..s.dim() {
            cols.set(k, i, w[k]);
        }
    }
    let ker = cols.kernel_basis();
    let rows: Vec<Vec<Fq>> = (0..ker.rows()).map(|r| space.combine(ker.row(r))).collect();
    Subspace::from_rows(s.field(), s.dim(), &rows)
}

/// Minimal polynomial of `x` in the algebra with identity `unit`.
pub fn minimal_polynomial(a: &FdAlgebra, x: &[Fq], unit: &[Fq]) -> Poly {
    let f = &**a.field();
    let mut rows: Vec<(Vec<Fq>, Vec<Fq>, usize)> = Vec::new();
    let mut power = unit.to_vec();
    let mut k = 0usize;
    loop {
        let mut v = power.clone();
        let mut combo = vec![0; k + 1];
        combo[k] = 1;
        for (rv, rc, piv) in &rows {
            let c = v[*piv];
            if c != 0 {
                let nc = f.neg(c);
                for (vi, &ri) in v.iter_mut().zip(rv) {
                    *vi = f.add(*vi, f.mul(nc, ri));
                }
                for (ci, &ri) in combo.iter_mut().zip(rc) {
                    *ci = f.add(*ci, f.mul(nc, ri));
                }
            }
        }
        match v.iter().position(|&c| c != 0) {
            None => return Poly(combo).trimmed(),
            Some(piv) => {
                let inv = f.inv(v[piv]);
                v.iter_mut().for_each(|c| *c = f.mul(*c, inv));
                combo.iter_mut().for_each(|c| *c = f.mul(*c, inv));
                rows.push((v, combo, piv));
            }
        }
        power = a.mul(&power, x);
        k += 1;
    }
}

fn eval_poly(a: &FdAlgebra, poly: &Poly, x: &[Fq], unit: &[Fq]) -> Vec<Fq> {
    let mut acc = a.zero();
    for &c in poly.coeffs().iter().rev() {
        acc = a.add(&a.mul(&acc, x), &a.scale(c, unit));
    }
    acc
}

/// Orthogonal idempotents `E_i(x)` cut out by the coprime prime-power factors
/// of the minimal polynomial of `x`; `None` if it is a prime power.
fn crt_split<R: Rng>(
    a: &FdAlgebra,
    x: &[Fq],
    unit: &[Fq],
    rng: &mut R,
) -> Option<Vec<Vec<Fq>>> {
    let f = &**a.field();
    let mu = minimal_polynomial(a, x, unit);
    let factors = factor(&mu, f, rng);
    if factors.len() < 2 {
        return None;
    }
    let mut out = Vec::new();
    for (fac, e) in &factors {
        let mut qi = Poly::one();
        for _ in 0..*e {
            qi = qi.mul(fac, f);
        }
        let (mi, r) = mu.divrem(&qi, f);
        debug_assert!(r.is_zero());
        let (g, s, _) = mi.ext_gcd(&qi, f);
        debug_assert_eq!(g.degree(), Some(0));
        let s = s.scale(f.inv(g.lead()), f);
        let ei = mi.mul(&s, f).rem(&mu, f);
        out.push(eval_poly(a, &ei, x, unit));
    }
    Some(out)
}

fn random_element<R: Rng>(a: &FdAlgebra, rng: &mut R) -> Vec<Fq> {
    let q = a.field().size();
    (0..a.dim()).map(|_| rng.gen_range(0..q) as Fq).collect()
}

fn random_in(a: &FdAlgebra, space: &Subspace, rng: &mut ChaCha8Rng) -> Vec<Fq> {
    let q = a.field().size();
    let coords: Vec<Fq> = (0..space.dim()).map(|_| rng.gen_range(0..q) as Fq).collect();
    space.combine(&coords)
}

fn corner_dim(a: &FdAlgebra, e: &[Fq]) -> usize {
    let vecs: Vec<Vec<Fq>> = (0..a.dim())
        .map(|k| a.mul(&a.mul(e, &a.basis_vector(k)), e))
        .collect();
    MatGF::from_rows(a.field(), a.dim(), &vecs).rank()
}

fn span_dim(a: &FdAlgebra, e: &[Fq]) -> usize {
    let vecs: Vec<Vec<Fq>> = (0..a.dim()).map(|k| a.mul(e, &a.basis_vector(k))).collect();
    MatGF::from_rows(a.field(), a.dim(), &vecs).rank()
}

/// Primitive idempotents of a commutative semisimple algebra.
fn split_commutative(z: &FdAlgebra, rng: &mut ChaCha8Rng) -> Result<Vec<Vec<Fq>>> {
    let b = berlekamp(z, &span_all(z));
    let target = b.dim();
    let mut ids = vec![z.unit().to_vec()];
    let mut attempts = 0;
    while ids.len() < target {
        attempts += 1;
        if attempts > SPLIT_ATTEMPTS {
            return Err(Error::Internal("central splitting did not converge".into()));
        }
        let r = random_in(z, &b, rng);
        let mut next = Vec::new();
        for e in ids {
            let x = z.mul(&e, &r);
            match crt_split(z, &x, &e, rng) {
                Some(parts) => next.extend(parts),
                None => next.push(e),
            }
        }
        ids = next;
    }
    Ok(ids)
}

/// Splits the identity `c` of a simple algebra `cSc ≅ M_k(GF(q^r))` into `k`
/// primitive idempotents.
fn split_simple(
    s: &FdAlgebra,
    c: &[Fq],
    r: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<Vec<Fq>>> {
    let mut todo = vec![c.to_vec()];
    let mut done = Vec::new();
    while let Some(e) = todo.pop() {
        if corner_dim(s, &e) == r {
            done.push(e);
            continue;
        }
        let mut split = None;
        for _ in 0..SPLIT_ATTEMPTS {
            let y = random_element(s, rng);
            let x = s.mul(&s.mul(&e, &y), &e);
            if let Some(parts) = crt_split(s, &x, &e, rng) {
                split = Some(parts);
                break;
            }
        }
        match split {
            Some(parts) => todo.extend(parts.into_iter().rev()),
            None => return Err(Error::Internal("simple component did not split".into())),
        }
    }
    done.reverse();
    Ok(done)
}

pub fn primitive_idempotents(a: &FdAlgebra, seed: u64) -> Result<IdempotentDecomposition> {
    let j = radical(a);
    primitive_idempotents_with_radical(a, &j, seed)
}

pub fn primitive_idempotents_with_radical(
    a: &FdAlgebra,
    j: &Subspace,
    seed: u64,
) -> Result<IdempotentDecomposition> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let quotient = a.quotient(j)?;
    let s = &quotient.algebra;

    let centre = s.center();
    let zalg = s.restrict_to(&centre, s.unit())?;
    let mut central: Vec<Vec<Fq>> = split_commutative(&zalg, &mut rng)?
        .iter()
        .map(|z| centre.combine(z))
        .collect();
    central.sort();

    let mut top_dims = Vec::new();
    let mut primitive_bar = Vec::new();
    for c in &central {
        let r = centre_degree(s, &centre, c);
        let dim_component = span_dim(s, c);
        let k = ((dim_component / r) as f64).sqrt().round() as usize;
        if r * k * k != dim_component {
            return Err(Error::Internal("simple component has non-square dimension".into()));
        }
        let prims = split_simple(s, c, r, &mut rng)?;
        if prims.len() != k {
            return Err(Error::Internal("wrong number of primitive idempotents".into()));
        }
        top_dims.push((r, k));
        primitive_bar.extend(prims);
    }

    let idempotents = lift(a, &quotient, &primitive_bar)?;
    check_decomposition(a, &idempotents)?;
    Ok(IdempotentDecomposition {
        idempotents,
        radical_dim: j.dim(),
        top_dims,
    })
}

fn centre_degree(s: &FdAlgebra, centre: &Subspace, c: &[Fq]) -> usize {
    let vecs: Vec<Vec<Fq>> = (0..centre.dim())
        .map(|i| s.mul(c, centre.vector(i)))
        .collect();
    MatGF::from_rows(s.field(), s.dim(), &vecs).rank()
}

/// Lifts orthogonal idempotents of `A/J` one at a time inside the
/// complementary corner, by `e ← 3e² − 2e³`.
fn lift(
    a: &FdAlgebra,
    quotient: &super::QuotientAlgebra,
    bars: &[Vec<Fq>],
) -> Result<Vec<Vec<Fq>>> {
    let f = a.field();
    let three = f.from_int(3);
    let two = f.from_int(2);
    let mut rest = a.unit().to_vec();
    let mut out = Vec::new();
    for (i, ebar) in bars.iter().enumerate() {
        if i + 1 == bars.len() {
            out.push(rest.clone());
            break;
        }
        let y0 = quotient.lift(ebar);
        let mut y = a.mul(&a.mul(&rest, &y0), &rest);
        let mut stable = false;
        for _ in 0..=a.dim() {
            let y2 = a.mul(&y, &y);
            if y2 == y {
                stable = true;
                break;
            }
            let y3 = a.mul(&y2, &y);
            y = a.sub(&a.scale(three, &y2), &a.scale(two, &y3));
        }
        if !stable {
            return Err(Error::Internal("idempotent lifting did not stabilize".into()));
        }
        rest = a.sub(&rest, &y);
        out.push(y);
    }
    Ok(out)
}

fn check_decomposition(a: &FdAlgebra, ids: &[Vec<Fq>]) -> Result<()> {
    let mut total = a.zero();
    for (i, e) in ids.iter().enumerate() {
        if FdAlgebra::is_zero(e) || a.mul(e, e) != *e {
            return Err(Error::Internal("lifted element is not a nonzero idempotent".into()));
        }
        for (j, g) in ids.iter().enumerate() {
            if i != j && !FdAlgebra::is_zero(&a.mul(e, g)) {
                return Err(Error::Internal("idempotents are not orthogonal".into()));
            }
        }
        total = a.add(&total, e);
    }
    if total != a.unit() {
        return Err(Error::Internal("idempotents do not sum to the identity".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algstruct::tests::{matrix_algebra, split_algebra, truncated_poly};
    use crate::gflinalg::field_make;

    fn elements(a: &FdAlgebra) -> Vec<Vec<Fq>> {
        let q = a.field().size() as usize;
        let total = q.pow(a.dim() as u32);
        (0..total)
            .map(|mut n| {
                (0..a.dim())
                    .map(|_| {
                        let c = (n % q) as Fq;
                        n /= q;
                        c
                    })
                    .collect()
            })
            .collect()
    }

    /// Size of a complete set of primitive orthogonal idempotents, by
    /// exhaustive search over all idempotents.
    fn brute_primitive_count(a: &FdAlgebra) -> usize {
        let ids: Vec<Vec<Fq>> = elements(a)
            .into_iter()
            .filter(|e| !FdAlgebra::is_zero(e) && a.mul(e, e) == *e)
            .collect();
        fn rank(a: &FdAlgebra, ids: &[Vec<Fq>], e: &[Fq]) -> usize {
            // a proper sub-idempotent f with ef = fe = f splits e = f + (e - f)
            for f in ids {
                if f.as_slice() != e && a.mul(e, f) == *f && a.mul(f, e) == *f {
                    let rest = a.sub(e, f);
                    return rank(a, ids, f) + rank(a, ids, &rest);
                }
            }
            1
        }
        rank(a, &ids, a.unit())
    }

    #[test]
    fn local_examples() {
        let a = truncated_poly(3, 3);
        let d = primitive_idempotents(&a, 1).unwrap();
        assert_eq!(d.idempotents, vec![vec![1, 0, 0]]);
        assert_eq!(is_local(&a).unwrap(), Locality { local: true, top_dim: 1 });
        assert_eq!(is_local(&truncated_poly(2, 2)).unwrap().top_dim, 1);
    }

    #[test]
    fn split_examples() {
        let a = split_algebra(2, 2);
        let d = primitive_idempotents(&a, 1).unwrap();
        let mut ids = d.idempotents.clone();
        ids.sort();
        assert_eq!(ids, vec![vec![0, 1], vec![1, 0]]);
        assert!(!is_local(&a).unwrap().local);
    }

    #[test]
    fn gf4_over_gf2_is_local_but_not_absolutely() {
        // GF(4) as the GF(2)-algebra GF(2)[x]/(x^2 + x + 1)
        let f = field_make(2, 1).unwrap();
        let consts = vec![1, 0, 0, 1, 0, 1, 1, 1];
        let a = FdAlgebra::from_dense(&f, 2, &consts, vec![1, 0]).unwrap();
        let loc = is_local(&a).unwrap();
        assert_eq!(loc, Locality { local: true, top_dim: 2 });
        assert!(!loc.absolutely_local());
    }

    #[test]
    fn matrix_algebras() {
        for (p, m, n) in [(2, 1, 2), (2, 1, 3), (3, 1, 2), (2, 2, 2)] {
            let a = matrix_algebra(p, m, n);
            let d = primitive_idempotents(&a, 7).unwrap();
            assert_eq!(d.idempotents.len(), n);
            assert_eq!(d.top_dims, vec![(1, n)]);
        }
    }

    #[test]
    fn counts_match_exhaustive_search() {
        let cases = [
            truncated_poly(2, 3),
            split_algebra(3, 3),
            matrix_algebra(2, 1, 2),
            split_algebra(2, 1),
        ];
        for a in &cases {
            let d = primitive_idempotents(a, 3).unwrap();
            assert_eq!(d.idempotents.len(), brute_primitive_count(a));
            assert_eq!(is_local(a).unwrap().local, d.idempotents.len() == 1);
        }
    }

    #[test]
    fn minimal_polynomial_of_nilpotent() {
        let a = truncated_poly(2, 4);
        let x = a.basis_vector(1);
        let mu = minimal_polynomial(&a, &x, a.unit());
        assert_eq!(mu.coeffs(), &[0, 0, 0, 0, 1]);
    }
}
