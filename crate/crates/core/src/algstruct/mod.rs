//! Finite-dimensional associative algebras over GF(p^m): radical,
//! semisimple quotient, primitive idempotents and locality.

mod idempotents;
mod radical;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gflinalg::{Fq, GField, MatGF, Subspace};

pub use idempotents::{
    is_local, is_local_with_radical, minimal_polynomial, primitive_idempotents,
    primitive_idempotents_with_radical, IdempotentDecomposition, Locality,
};
pub use radical::radical;

/// Exact integer structure constants of an algebra spanned by 0/1 matrices
/// with disjoint supports (an orbital algebra), plus the traces of the basis
/// matrices. Reducing mod p gives the algebra over the prime field.
#[derive(Clone, Debug)]
pub struct Integral {
    /// Size of the matrices.
    pub degree: usize,
    /// `rows[a]` lists `(b, k, c)` with `b_a b_b = Σ c b_k`.
    pub rows: Vec<Vec<(u32, u32, u64)>>,
    pub traces: Vec<u64>,
}

/// An associative unital algebra given by sparse structure constants.
///
/// Elements are coordinate vectors over the basis. `rows[a]` lists the
/// triples `(b, k, c)` with `b_a b_b = Σ_k c b_k`, sorted by `b`.
#[derive(Clone, Debug)]
pub struct FdAlgebra {
    field: Arc<GField>,
    dim: usize,
    rows: Vec<Vec<(u32, u32, Fq)>>,
    unit: Vec<Fq>,
    integral: Option<Arc<Integral>>,
}

impl FdAlgebra {
    pub fn new(
        field: &Arc<GField>,
        dim: usize,
        mut rows: Vec<Vec<(u32, u32, Fq)>>,
        unit: Vec<Fq>,
    ) -> Result<FdAlgebra> {
        if rows.len() != dim || unit.len() != dim {
            return Err(Error::InvalidInput("structure constants do not match dimension".into()));
        }
        for r in &mut rows {
            r.retain(|t| t.2 != 0);
            r.sort_unstable();
        }
        let alg = FdAlgebra {
            field: field.clone(),
            dim,
            rows,
            unit,
            integral: None,
        };
        for a in 0..dim {
            let e = alg.basis_vector(a);
            if alg.mul(&alg.unit, &e) != e || alg.mul(&e, &alg.unit) != e {
                return Err(Error::InvalidInput("unit is not an identity".into()));
            }
        }
        Ok(alg)
    }

    /// From dense constants `consts[(a*dim + b)*dim + k]`.
    pub fn from_dense(
        field: &Arc<GField>,
        dim: usize,
        consts: &[Fq],
        unit: Vec<Fq>,
    ) -> Result<FdAlgebra> {
        if consts.len() != dim * dim * dim {
            return Err(Error::InvalidInput("expected dim^3 structure constants".into()));
        }
        let rows = (0..dim)
            .map(|a| {
                let mut r = Vec::new();
                for b in 0..dim {
                    for k in 0..dim {
                        let c = consts[(a * dim + b) * dim + k];
                        if c != 0 {
                            r.push((b as u32, k as u32, c));
                        }
                    }
                }
                r
            })
            .collect();
        FdAlgebra::new(field, dim, rows, unit)
    }

    /// The algebra spanned by the given matrices, which must be linearly
    /// independent, closed under products and contain the identity.
    pub fn from_matrices(field: &Arc<GField>, basis: &[MatGF]) -> Result<FdAlgebra> {
        let d = basis.len();
        if d == 0 {
            return Err(Error::InvalidInput("empty basis".into()));
        }
        let n = basis[0].rows();
        let flat: Vec<Vec<Fq>> = basis.iter().map(|m| m.data().to_vec()).collect();
        let flat_mat = MatGF::from_rows(field, n * n, &flat);
        if flat_mat.rank() != d {
            return Err(Error::InvalidInput("basis matrices are dependent".into()));
        }
        // coordinates c with Σ c_k B_k = v
        let coords = |v: &[Fq]| -> Result<Vec<Fq>> {
            let sys = flat_mat.transpose();
            solve(&sys, v).ok_or_else(|| Error::InvalidInput("basis is not closed".into()))
        };
        let mut rows = vec![Vec::new(); d];
        for a in 0..d {
            for b in 0..d {
                let prod = basis[a].mul(&basis[b]);
                for (k, c) in coords(prod.data())?.into_iter().enumerate() {
                    if c != 0 {
                        rows[a].push((b as u32, k as u32, c));
                    }
                }
            }
        }
        let unit = coords(MatGF::identity(field, n).data())?;
        FdAlgebra::new(field, d, rows, unit)
    }

    pub fn with_integral(mut self, integral: Integral) -> FdAlgebra {
        self.integral = Some(Arc::new(integral));
        self
    }

    pub fn integral(&self) -> Option<&Integral> {
        self.integral.as_deref()
    }

    pub fn field(&self) -> &Arc<GField> {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &[Fq] {
        &self.unit
    }

    pub(crate) fn rows(&self) -> &[Vec<(u32, u32, Fq)>] {
        &self.rows
    }

    pub fn zero(&self) -> Vec<Fq> {
        vec![0; self.dim]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Fq> {
        let mut v = self.zero();
        v[i] = 1;
        v
    }

    pub fn mul(&self, x: &[Fq], y: &[Fq]) -> Vec<Fq> {
        let f = &*self.field;
        let mut out = self.zero();
        for (a, &xa) in x.iter().enumerate() {
            if xa == 0 {
                continue;
            }
            for &(b, k, c) in &self.rows[a] {
                let yb = y[b as usize];
                if yb != 0 {
                    let t = f.mul(f.mul(xa, yb), c);
                    out[k as usize] = f.add(out[k as usize], t);
                }
            }
        }
        out
    }

    pub fn add(&self, x: &[Fq], y: &[Fq]) -> Vec<Fq> {
        x.iter().zip(y).map(|(&a, &b)| self.field.add(a, b)).collect()
    }

    pub fn sub(&self, x: &[Fq], y: &[Fq]) -> Vec<Fq> {
        x.iter().zip(y).map(|(&a, &b)| self.field.sub(a, b)).collect()
    }

    pub fn scale(&self, c: Fq, x: &[Fq]) -> Vec<Fq> {
        x.iter().map(|&a| self.field.mul(c, a)).collect()
    }

    pub fn is_zero(x: &[Fq]) -> bool {
        x.iter().all(|&a| a == 0)
    }

    /// `x^e` with `x^0` taken to be `unit` (the identity of a corner).
    pub fn pow_in(&self, x: &[Fq], mut e: u64, unit: &[Fq]) -> Vec<Fq> {
        let mut acc = unit.to_vec();
        let mut base = x.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Matrix of `y ↦ x y` on coordinate columns.
    pub fn left_matrix(&self, x: &[Fq]) -> MatGF {
        let f = &*self.field;
        let mut m = MatGF::zeros(&self.field, self.dim, self.dim);
        for (a, &xa) in x.iter().enumerate() {
            if xa == 0 {
                continue;
            }
            for &(b, k, c) in &self.rows[a] {
                let v = f.add(m.get(k as usize, b as usize), f.mul(xa, c));
                m.set(k as usize, b as usize, v);
            }
        }
        m
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|a| {
            (a + 1..self.dim).all(|b| {
                let ea = self.basis_vector(a);
                let eb = self.basis_vector(b);
                self.mul(&ea, &eb) == self.mul(&eb, &ea)
            })
        })
    }

    /// The centre, as a subspace of coordinate space.
    pub fn center(&self) -> Subspace {
        // x central iff x b_j = b_j x for every j
        let d = self.dim;
        let mut eqs: Vec<Vec<Fq>> = Vec::new();
        for j in 0..d {
            let ej = self.basis_vector(j);
            // column i of (L_{e_i} - R_{e_i}) applied to e_j, i.e. e_i e_j - e_j e_i
            let mut block = vec![vec![0; d]; d];
            for i in 0..d {
                let ei = self.basis_vector(i);
                let diff = self.sub(&self.mul(&ei, &ej), &self.mul(&ej, &ei));
                for k in 0..d {
                    block[k][i] = diff[k];
                }
            }
            for row in block {
                if row.iter().any(|&c| c != 0) {
                    eqs.push(row);
                }
            }
        }
        if eqs.is_empty() {
            return Subspace::full(&self.field, d);
        }
        let sys = MatGF::from_rows(&self.field, d, &eqs);
        Subspace::from_matrix(&sys.kernel_basis())
    }

    /// The algebra structure on a subspace closed under multiplication,
    /// with the given element (in ambient coordinates) as identity.
    pub fn restrict_to(&self, space: &Subspace, unit: &[Fq]) -> Result<FdAlgebra> {
        let r = space.dim();
        let vecs: Vec<Vec<Fq>> = (0..r).map(|i| space.vector(i).to_vec()).collect();
        let mut rows = vec![Vec::new(); r];
        for a in 0..r {
            for b in 0..r {
                let prod = self.mul(&vecs[a], &vecs[b]);
                if !space.contains(&prod) {
                    return Err(Error::Internal("subspace not closed under products".into()));
                }
                for (k, c) in space.coords(&prod).into_iter().enumerate() {
                    if c != 0 {
                        rows[a].push((b as u32, k as u32, c));
                    }
                }
            }
        }
        if !space.contains(unit) {
            return Err(Error::Internal("identity outside subalgebra".into()));
        }
        FdAlgebra::new(&self.field, r, rows, space.coords(unit))
    }

    /// The corner `eAe` for an idempotent `e`, with its basis in `A`-coordinates.
    pub fn corner(&self, e: &[Fq]) -> Result<(FdAlgebra, Subspace)> {
        let vecs: Vec<Vec<Fq>> = (0..self.dim)
            .map(|k| {
                let ek = self.basis_vector(k);
                self.mul(&self.mul(e, &ek), e)
            })
            .collect();
        let space = Subspace::from_rows(&self.field, self.dim, &vecs);
        let alg = self.restrict_to(&space, e)?;
        Ok((alg, space))
    }

    /// `A / I` for a two-sided ideal, realized on the non-pivot coordinates of `I`.
    pub fn quotient(&self, ideal: &Subspace) -> Result<QuotientAlgebra> {
        let mut is_pivot = vec![false; self.dim];
        for &p in ideal.pivots() {
            is_pivot[p] = true;
        }
        let keep: Vec<usize> = (0..self.dim).filter(|&i| !is_pivot[i]).collect();
        let s = keep.len();
        let project = |x: &[Fq]| -> Vec<Fq> {
            let mut w = x.to_vec();
            ideal.reduce(&mut w);
            keep.iter().map(|&i| w[i]).collect()
        };
        let mut rows = vec![Vec::new(); s];
        for (a, &ia) in keep.iter().enumerate() {
            for (b, &ib) in keep.iter().enumerate() {
                let prod = self.mul(&self.basis_vector(ia), &self.basis_vector(ib));
                for (k, c) in project(&prod).into_iter().enumerate() {
                    if c != 0 {
                        rows[a].push((b as u32, k as u32, c));
                    }
                }
            }
        }
        let unit = project(&self.unit);
        let algebra = FdAlgebra::new(&self.field, s, rows, unit)?;
        Ok(QuotientAlgebra {
            algebra,
            ideal: ideal.clone(),
            keep,
        })
    }
}

/// `A / I` together with the projection and a linear section.
#[derive(Clone, Debug)]
pub struct QuotientAlgebra {
    pub algebra: FdAlgebra,
    ideal: Subspace,
    keep: Vec<usize>,
}

impl QuotientAlgebra {
    pub fn project(&self, x: &[Fq]) -> Vec<Fq> {
        let mut w = x.to_vec();
        self.ideal.reduce(&mut w);
        self.keep.iter().map(|&i| w[i]).collect()
    }

    /// A preimage (zero on the ideal's pivot coordinates).
    pub fn lift(&self, y: &[Fq]) -> Vec<Fq> {
        let mut x = vec![0; self.ideal.ambient()];
        for (&i, &c) in self.keep.iter().zip(y) {
            x[i] = c;
        }
        x
    }
}

/// Solves `A x = b`, returning one solution if consistent.
pub(crate) fn solve(a: &MatGF, b: &[Fq]) -> Option<Vec<Fq>> {
    let f = a.field().clone();
    let (rows, cols) = (a.rows(), a.cols());
    let aug_rows: Vec<Vec<Fq>> = (0..rows)
        .map(|i| {
            let mut r = a.row(i).to_vec();
            r.push(b[i]);
            r
        })
        .collect();
    let aug = MatGF::from_rows(&f, cols + 1, &aug_rows);
    let rr = aug.rref();
    if rr.pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![0; cols];
    for (i, &pc) in rr.pivots.iter().enumerate() {
        x[pc] = rr.matrix.get(i, cols);
    }
    Some(x)
}
