use std::sync::Arc;

use super::field::{Fq, GField};
use super::matrix::{axpy, scale_slice, MatGF};

/// Incrementally built semi-echelon basis.
///
/// Each stored row has a leading 1 in its pivot column and a zero in the
/// pivot columns of all earlier rows, so reducing a vector against the rows
/// in insertion order clears every pivot.
#[derive(Clone, Debug)]
pub struct EchelonBuilder {
    field: Arc<GField>,
    n: usize,
    rows: Vec<Vec<Fq>>,
    pivots: Vec<usize>,
}

impl EchelonBuilder {
    pub fn new(field: &Arc<GField>, n: usize) -> Self {
        EchelonBuilder {
            field: field.clone(),
            n,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn reduce(&self, v: &mut [Fq]) {
        let f = &*self.field;
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = v[pc];
            if c != 0 {
                axpy(f, v, row, f.neg(c));
            }
        }
    }

    /// Inserts `v`; returns the reduced vector if it was new.
    pub fn insert(&mut self, v: &[Fq]) -> Option<&[Fq]> {
        assert_eq!(v.len(), self.n);
        let mut w = v.to_vec();
        self.reduce(&mut w);
        let pc = w.iter().position(|&x| x != 0)?;
        let inv = self.field.inv(w[pc]);
        scale_slice(&self.field, &mut w, inv);
        self.rows.push(w);
        self.pivots.push(pc);
        self.rows.last().map(|r| r.as_slice())
    }

    pub fn contains(&self, v: &[Fq]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    pub fn rows(&self) -> &[Vec<Fq>] {
        &self.rows
    }

    pub fn into_subspace(self) -> Subspace {
        Subspace::from_rows(&self.field, self.n, &self.rows)
    }
}

/// A subspace of `GF(q)^n` held by its reduced row-echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    basis: MatGF,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: &Arc<GField>, n: usize) -> Subspace {
        Subspace {
            basis: MatGF::zeros(field, 0, n),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: &Arc<GField>, n: usize) -> Subspace {
        Subspace {
            basis: MatGF::identity(field, n),
            pivots: (0..n).collect(),
        }
    }

    pub fn from_matrix(m: &MatGF) -> Subspace {
        let r = m.rref();
        let keep: Vec<usize> = (0..r.rank).collect();
        let cols: Vec<usize> = (0..m.cols()).collect();
        Subspace {
            basis: r.matrix.submatrix(&keep, &cols),
            pivots: r.pivots,
        }
    }

    pub fn from_rows(field: &Arc<GField>, n: usize, rows: &[Vec<Fq>]) -> Subspace {
        Subspace::from_matrix(&MatGF::from_rows(field, n, rows))
    }

    /// Column space of `m`.
    pub fn column_space(m: &MatGF) -> Subspace {
        Subspace::from_matrix(&m.transpose())
    }

    pub fn field(&self) -> &Arc<GField> {
        self.basis.field()
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &MatGF {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn vector(&self, i: usize) -> &[Fq] {
        self.basis.row(i)
    }

    /// Subtracts the component along the basis so the result vanishes on all pivots.
    pub fn reduce(&self, v: &mut [Fq]) {
        let f = self.basis.field().clone();
        for (i, &pc) in self.pivots.iter().enumerate() {
            let c = v[pc];
            if c != 0 {
                axpy(&f, v, self.basis.row(i), f.neg(c));
            }
        }
    }

    pub fn contains(&self, v: &[Fq]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Coordinates of a vector known to lie in the subspace.
    pub fn coords(&self, v: &[Fq]) -> Vec<Fq> {
        self.pivots.iter().map(|&pc| v[pc]).collect()
    }

    /// Vector with the given coordinates.
    pub fn combine(&self, coords: &[Fq]) -> Vec<Fq> {
        assert_eq!(coords.len(), self.dim());
        self.basis.vec_mul(coords)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        (0..self.dim()).all(|i| other.contains(self.vector(i)))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::from_matrix(&self.basis.vstack(&other.basis))
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        // v = a·B1 = b·B2  <=>  [a, -b] in left kernel of [B1; B2]
        let f = self.field().clone();
        let stacked = self.basis.vstack(&other.basis);
        let left_kernel = stacked.transpose().kernel_basis();
        let k = self.dim();
        let rows: Vec<Vec<Fq>> = (0..left_kernel.rows())
            .map(|i| self.combine(&left_kernel.row(i)[..k]))
            .collect();
        Subspace::from_rows(&f, self.ambient(), &rows)
    }

    /// Image of the subspace under `m` acting on column vectors.
    pub fn image_under(&self, m: &MatGF) -> Subspace {
        let rows: Vec<Vec<Fq>> = (0..self.dim()).map(|i| m.mul_vec(self.vector(i))).collect();
        Subspace::from_rows(self.field(), m.rows(), &rows)
    }
}

/// A quotient `V / W` of subspaces `W <= V <= GF(q)^n`, realized on the
/// lexicographically first echelon complement of `W` inside `V`.
#[derive(Clone, Debug)]
pub struct Quotient {
    sub: Subspace,
    complement: Subspace,
}

impl Quotient {
    pub fn new(space: &Subspace, sub: &Subspace) -> Quotient {
        assert!(sub.is_subspace_of(space), "quotient needs W <= V");
        let f = space.field().clone();
        let n = space.ambient();
        let mut reduced = Vec::new();
        for i in 0..space.dim() {
            let mut v = space.vector(i).to_vec();
            sub.reduce(&mut v);
            reduced.push(v);
        }
        let complement = Subspace::from_rows(&f, n, &reduced);
        let complement = Subspace::from_matrix(&filter_nonzero(complement.basis()));
        Quotient {
            sub: sub.clone(),
            complement,
        }
    }

    pub fn dim(&self) -> usize {
        self.complement.dim()
    }

    pub fn complement(&self) -> &Subspace {
        &self.complement
    }

    /// Coordinates of the class of `v` (which must lie in V).
    pub fn class_coords(&self, v: &[Fq]) -> Vec<Fq> {
        let mut w = v.to_vec();
        self.sub.reduce(&mut w);
        self.complement.reduce_keep_coords(&w)
    }

    /// Matrix of a linear map preserving V and W, induced on V/W.
    pub fn induced(&self, m: &MatGF) -> MatGF {
        let d = self.dim();
        let mut out = MatGF::zeros(self.complement.field(), d, d);
        for j in 0..d {
            let img = m.mul_vec(self.complement.vector(j));
            let c = self.class_coords(&img);
            for i in 0..d {
                out.set(i, j, c[i]);
            }
        }
        out
    }
}

fn filter_nonzero(m: &MatGF) -> MatGF {
    let rows: Vec<Vec<Fq>> = m
        .row_vecs()
        .into_iter()
        .filter(|r| r.iter().any(|&x| x != 0))
        .collect();
    MatGF::from_rows(m.field(), m.cols(), &rows)
}

impl Subspace {
    // Coordinates after reducing against W: the vector is a combination of the
    // complement basis, whose RREF pivots read off the coefficients.
    fn reduce_keep_coords(&self, w: &[Fq]) -> Vec<Fq> {
        let c = self.coords(w);
        debug_assert!(self.contains(w), "vector not in V after reduction");
        c
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builder_and_subspace_agree() {
        let f = Arc::new(GField::new(3, 1).unwrap());
        let mut b = EchelonBuilder::new(&f, 3);
        assert!(b.insert(&[1, 2, 0]).is_some());
        assert!(b.insert(&[2, 1, 0]).is_none());
        assert!(b.insert(&[0, 1, 1]).is_some());
        let s = b.into_subspace();
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&[1, 0, 1]));
        assert!(!s.contains(&[0, 0, 1]));
    }

    #[test]
    fn intersection_dimension() {
        let f = Arc::new(GField::new(2, 1).unwrap());
        let a = Subspace::from_rows(&f, 3, &[vec![1, 0, 0], vec![0, 1, 0]]);
        let b = Subspace::from_rows(&f, 3, &[vec![0, 1, 0], vec![0, 0, 1]]);
        let c = a.intersection(&b);
        assert_eq!(c.dim(), 1);
        assert!(c.contains(&[0, 1, 0]));
    }

    #[test]
    fn quotient_of_line() {
        let f = Arc::new(GField::new(2, 1).unwrap());
        let v = Subspace::full(&f, 2);
        let w = Subspace::from_rows(&f, 2, &[vec![1, 1]]);
        let q = Quotient::new(&v, &w);
        assert_eq!(q.dim(), 1);
        // swap matrix acts trivially on k^2 / <(1,1)>
        let swap = MatGF::permutation(&f, &[1, 0]);
        assert!(q.induced(&swap).is_identity());
    }
}
