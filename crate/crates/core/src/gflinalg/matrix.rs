use std::fmt;
use std::sync::Arc;

use super::field::{Fq, GField};

/// Dense row-major matrix over a finite field.
///
/// Linear maps act on column vectors: `A v`.
#[derive(Clone)]
pub struct MatGF {
    field: Arc<GField>,
    rows: usize,
    cols: usize,
    data: Vec<Fq>,
}

impl PartialEq for MatGF {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.data == other.data
            && *self.field == *other.field
    }
}

impl Eq for MatGF {}

impl fmt::Debug for MatGF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "MatGF {}x{} over {:?}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

/// Result of row reduction.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: MatGF,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// `dst += c * src` over the field.
#[inline]
pub(crate) fn axpy(field: &GField, dst: &mut [Fq], src: &[Fq], c: Fq) {
    if c == 0 {
        return;
    }
    if field.is_prime_field() {
        let p = field.p();
        let c = c as u32;
        for (d, &s) in dst.iter_mut().zip(src) {
            if s != 0 {
                *d = ((*d as u32 + c * s as u32) % p) as Fq;
            }
        }
    } else {
        for (d, &s) in dst.iter_mut().zip(src) {
            if s != 0 {
                *d = field.add(*d, field.mul(c, s));
            }
        }
    }
}

#[inline]
pub(crate) fn scale_slice(field: &GField, v: &mut [Fq], c: Fq) {
    for x in v.iter_mut() {
        *x = field.mul(*x, c);
    }
}

pub(crate) fn dot(field: &GField, a: &[Fq], b: &[Fq]) -> Fq {
    if field.is_prime_field() {
        let p = field.p() as u64;
        let s: u64 = a.iter().zip(b).map(|(&x, &y)| x as u64 * y as u64).sum();
        (s % p) as Fq
    } else {
        a.iter()
            .zip(b)
            .fold(0, |acc, (&x, &y)| field.add(acc, field.mul(x, y)))
    }
}

impl MatGF {
    pub fn zeros(field: &Arc<GField>, rows: usize, cols: usize) -> MatGF {
        MatGF {
            field: field.clone(),
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: &Arc<GField>, n: usize) -> MatGF {
        let mut m = MatGF::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_vec(field: &Arc<GField>, rows: usize, cols: usize, data: Vec<Fq>) -> MatGF {
        assert_eq!(data.len(), rows * cols, "entry count must be rows * cols");
        assert!(data.iter().all(|&x| (x as u32) < field.size()));
        MatGF {
            field: field.clone(),
            rows,
            cols,
            data,
        }
    }

    /// Builds from rows; every row must have length `cols`.
    pub fn from_rows(field: &Arc<GField>, cols: usize, rows: &[Vec<Fq>]) -> MatGF {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            data.extend_from_slice(r);
        }
        MatGF::from_vec(field, rows.len(), cols, data)
    }

    /// Builds from integer entries reduced mod p.
    pub fn from_ints(field: &Arc<GField>, rows: &[Vec<i64>]) -> MatGF {
        let cols = rows.first().map_or(0, |r| r.len());
        let conv: Vec<Vec<Fq>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| field.from_int(x)).collect())
            .collect();
        MatGF::from_rows(field, cols, &conv)
    }

    /// Permutation matrix sending basis vector x to basis vector `images[x]`.
    pub fn permutation(field: &Arc<GField>, images: &[u32]) -> MatGF {
        let n = images.len();
        let mut m = MatGF::zeros(field, n, n);
        for (x, &y) in images.iter().enumerate() {
            m.data[y as usize * n + x] = 1;
        }
        m
    }

    pub fn field(&self) -> &Arc<GField> {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[Fq] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Fq {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Fq) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Fq] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [Fq] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Fq>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<Fq> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows)
                .all(|i| (0..self.cols).all(|j| self.get(i, j) == (i == j) as Fq))
    }

    pub fn transpose(&self) -> MatGF {
        let mut t = MatGF::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    pub fn mul(&self, other: &MatGF) -> MatGF {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let (n, k, m) = (self.rows, self.cols, other.cols);
        let mut out = MatGF::zeros(&self.field, n, m);
        let f = &*self.field;
        if f.is_prime_field() {
            let p = f.p() as u64;
            let mut acc = vec![0u64; m];
            for i in 0..n {
                acc.iter_mut().for_each(|x| *x = 0);
                for t in 0..k {
                    let a = self.data[i * k + t] as u64;
                    if a == 0 {
                        continue;
                    }
                    let brow = &other.data[t * m..(t + 1) * m];
                    for (x, &b) in acc.iter_mut().zip(brow) {
                        *x += a * b as u64;
                    }
                }
                for (o, &x) in out.data[i * m..(i + 1) * m].iter_mut().zip(&acc) {
                    *o = (x % p) as Fq;
                }
            }
        } else {
            for i in 0..n {
                for t in 0..k {
                    let a = self.data[i * k + t];
                    if a == 0 {
                        continue;
                    }
                    let (lo, hi) = (t * m, (t + 1) * m);
                    let brow = &other.data[lo..hi];
                    axpy(f, &mut out.data[i * m..(i + 1) * m], brow, a);
                }
            }
        }
        out
    }

    /// `A v` for a column vector `v`.
    pub fn mul_vec(&self, v: &[Fq]) -> Vec<Fq> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| dot(&self.field, self.row(i), v))
            .collect()
    }

    /// `v^T A` for a row vector `v`.
    pub fn vec_mul(&self, v: &[Fq]) -> Vec<Fq> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![0; self.cols];
        for (i, &c) in v.iter().enumerate() {
            axpy(&self.field, &mut out, self.row(i), c);
        }
        out
    }

    pub fn add(&self, other: &MatGF) -> MatGF {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        axpy(&self.field, &mut out.data, &other.data, 1);
        out
    }

    pub fn sub(&self, other: &MatGF) -> MatGF {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        axpy(&self.field, &mut out.data, &other.data, self.field.neg(1));
        out
    }

    pub fn scale(&self, c: Fq) -> MatGF {
        let mut out = self.clone();
        scale_slice(&self.field, &mut out.data, c);
        out
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &MatGF, c: Fq) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let field = self.field.clone();
        axpy(&field, &mut self.data, &other.data, c);
    }

    pub fn trace(&self) -> Fq {
        assert!(self.is_square());
        (0..self.rows).fold(0, |acc, i| self.field.add(acc, self.get(i, i)))
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> MatGF {
        let mut out = MatGF::zeros(&self.field, rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out.data[a * cols.len() + b] = self.get(i, j);
            }
        }
        out
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &MatGF) -> MatGF {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        MatGF::from_vec(&self.field, self.rows + other.rows, self.cols, data)
    }

    /// Reduced row-echelon form; pivots are chosen as the first nonzero entry.
    pub fn rref(&self) -> Rref {
        let mut a = self.clone();
        let f = self.field.clone();
        let (rows, cols) = (a.rows, a.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(piv) = (r..rows).find(|&i| a.data[i * cols + c] != 0) else {
                continue;
            };
            if piv != r {
                for j in 0..cols {
                    a.data.swap(piv * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(a.data[r * cols + c]);
            scale_slice(&f, &mut a.data[r * cols..(r + 1) * cols], inv);
            let pivot_row: Vec<Fq> = a.data[r * cols..(r + 1) * cols].to_vec();
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let x = a.data[i * cols + c];
                if x != 0 {
                    axpy(&f, &mut a.data[i * cols..(i + 1) * cols], &pivot_row, f.neg(x));
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref {
            matrix: a,
            rank: r,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Rows spanning the right null space `{x : A x = 0}`.
    pub fn kernel_basis(&self) -> MatGF {
        let Rref {
            matrix: r, pivots, ..
        } = self.rref();
        let f = &self.field;
        let cols = self.cols;
        let is_pivot: Vec<bool> = {
            let mut v = vec![false; cols];
            pivots.iter().for_each(|&c| v[c] = true);
            v
        };
        let mut basis = Vec::new();
        for free in (0..cols).filter(|&c| !is_pivot[c]) {
            let mut x = vec![0; cols];
            x[free] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                x[pc] = f.neg(r.get(row, free));
            }
            basis.push(x);
        }
        MatGF::from_rows(f, cols, &basis)
    }

    pub fn inverse(&self) -> Option<MatGF> {
        assert!(self.is_square());
        let n = self.rows;
        let mut aug = MatGF::zeros(&self.field, n, 2 * n);
        for i in 0..n {
            aug.row_mut(i)[..n].copy_from_slice(self.row(i));
            aug.data[i * 2 * n + n + i] = 1;
        }
        let red = aug.rref();
        if red.pivots.len() < n || red.pivots[n - 1] != n - 1 {
            return None;
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        let rows: Vec<usize> = (0..n).collect();
        Some(red.matrix.submatrix(&rows, &cols))
    }

    pub fn pow(&self, mut e: u64) -> MatGF {
        assert!(self.is_square());
        let mut acc = MatGF::identity(&self.field, self.rows);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32) -> Arc<GField> {
        Arc::new(GField::new(p, 1).unwrap())
    }

    #[test]
    fn rref_examples() {
        let f = gf(2);
        let id = MatGF::identity(&f, 3);
        let r = id.rref();
        assert_eq!(r.rank, 3);
        assert_eq!(r.matrix, id);
        let z = MatGF::zeros(&f, 2, 3);
        assert_eq!(z.rref().rank, 0);
        assert!(z.rref().matrix.is_zero());
        let a = MatGF::from_ints(&f, &[vec![1, 1], vec![1, 1]]);
        assert_eq!(a.rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        let f = gf(2);
        assert_eq!(MatGF::identity(&f, 4).kernel_basis().rows(), 0);
        assert_eq!(MatGF::zeros(&f, 3, 3).kernel_basis().rows(), 3);
        let a = MatGF::from_ints(&f, &[vec![1, 1]]);
        let k = a.kernel_basis();
        assert_eq!(k.row_vecs(), vec![vec![1, 1]]);
    }

    #[test]
    fn inverse_roundtrip() {
        let f = gf(5);
        let a = MatGF::from_ints(&f, &[vec![1, 2], vec![3, 4]]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        let s = MatGF::from_ints(&f, &[vec![1, 2], vec![2, 4]]);
        assert!(s.inverse().is_none());
    }

    #[test]
    fn permutation_matrix_composes_like_left_action() {
        let f = gf(3);
        let a = [1u32, 2, 0];
        let b = [1u32, 0, 2];
        // (a∘b)(x) = a(b(x))
        let ab: Vec<u32> = (0..3).map(|x| a[b[x] as usize]).collect();
        let pa = MatGF::permutation(&f, &a);
        let pb = MatGF::permutation(&f, &b);
        assert_eq!(pa.mul(&pb), MatGF::permutation(&f, &ab));
    }
}
