//! Jacobson radical by the characteristic-p trace tower.
//!
//! Over GF(p) with a faithful representation of degree N, set
//! `I_0 = {a : Tr(ab) = 0 ∀b}` and for `i = 1..⌊log_p N⌋`
//! `I_i = {a ∈ I_{i-1} : g_i(ab) = 0 ∀b}`, where `g_i(a)` is the p-adic digit
//! of weight `p^i` of `Tr(ã^{p^i})` for an integer lift `ã`. Then `I_l = J`.
//! `g_i` is additive on `I_{i-1}`, so it is evaluated on a basis only.
//! Algebras over GF(p^m) are handled through their prime-field form.

use std::sync::Arc;

use super::FdAlgebra;
use crate::gflinalg::{Fq, GField, MatGF, Subspace};

enum Faithful<'a> {
    /// Exact integral orbital form acting on `degree` points.
    Integral(&'a super::Integral),
    /// Left regular representation over the prime field.
    Regular,
}

struct PrimeForm<'a> {
    p: u64,
    dim: usize,
    /// Structure constants reduced mod p, as in `FdAlgebra`.
    rows: Vec<Vec<(u32, u32, u64)>>,
    faithful: Faithful<'a>,
}

enum Embedding {
    /// Prime-field coordinates coincide with the algebra's.
    Direct,
    /// Coordinate `k*m + t` is digit `t` of coordinate `k`.
    Restricted(u32),
}

fn prime_form(a: &FdAlgebra) -> (PrimeForm<'_>, Embedding) {
    let field = a.field();
    let p = field.p() as u64;
    if let Some(int) = a.integral() {
        let rows = int
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .filter(|t| t.2 % p != 0)
                    .map(|&(b, k, c)| (b, k, c % p))
                    .collect()
            })
            .collect();
        let pf = PrimeForm {
            p,
            dim: a.dim(),
            rows,
            faithful: Faithful::Integral(int),
        };
        return (pf, Embedding::Direct);
    }
    let in_prime = a.rows().iter().flatten().all(|t| (t.2 as u64) < p);
    if in_prime {
        let rows = a
            .rows()
            .iter()
            .map(|r| r.iter().map(|&(b, k, c)| (b, k, c as u64)).collect())
            .collect();
        let pf = PrimeForm {
            p,
            dim: a.dim(),
            rows,
            faithful: Faithful::Regular,
        };
        return (pf, Embedding::Direct);
    }
    let m = field.m() as usize;
    let d = a.dim();
    let mut rows = vec![Vec::new(); d * m];
    for (ia, row) in a.rows().iter().enumerate() {
        for s in 0..m {
            for &(b, k, c) in row {
                for t in 0..m {
                    let w = field.mul(
                        field.mul(field.basis_element(s as u32), field.basis_element(t as u32)),
                        c,
                    );
                    for u in 0..m {
                        let digit = field.digit(w, u as u32) as u64;
                        if digit != 0 {
                            rows[ia * m + s].push((
                                (b as usize * m + t) as u32,
                                (k as usize * m + u) as u32,
                                digit,
                            ));
                        }
                    }
                }
            }
        }
    }
    for r in &mut rows {
        r.sort_unstable();
    }
    let pf = PrimeForm {
        p,
        dim: d * m,
        rows,
        faithful: Faithful::Regular,
    };
    (pf, Embedding::Restricted(m as u32))
}

impl PrimeForm<'_> {
    fn degree(&self) -> usize {
        match self.faithful {
            Faithful::Integral(int) => int.degree,
            Faithful::Regular => self.dim,
        }
    }

    /// Traces of the basis elements mod p.
    fn basis_traces(&self) -> Vec<u64> {
        match self.faithful {
            Faithful::Integral(int) => int.traces.iter().map(|t| t % self.p).collect(),
            Faithful::Regular => (0..self.dim)
                .map(|k| {
                    self.rows[k]
                        .iter()
                        .filter(|t| t.0 == t.1)
                        .map(|t| t.2)
                        .sum::<u64>()
                        % self.p
                })
                .collect(),
        }
    }

    /// `Σ_a x_a Σ_{(b,k,c) ∈ rows[a]} c γ_k` for every `b`: the functional
    /// `b ↦ γ(x e_b)`.
    fn pair_with(&self, x: &[u64], gamma: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; self.dim];
        for (a, &xa) in x.iter().enumerate() {
            if xa == 0 {
                continue;
            }
            for &(b, k, c) in &self.rows[a] {
                let g = gamma[k as usize];
                if g != 0 {
                    out[b as usize] = (out[b as usize] + xa * c % self.p * g) % self.p;
                }
            }
        }
        out
    }

    /// Weight-`p^i` digit of `Tr(x̃^(p^i))`.
    fn g(&self, x: &[u64], i: u32) -> u64 {
        let modulus = self.p.pow(i + 1);
        let t = match self.faithful {
            Faithful::Integral(int) => {
                let mut z = x.to_vec();
                for _ in 0..i {
                    z = int_pow(&int.rows, &z, self.p, modulus);
                }
                z.iter()
                    .zip(&int.traces)
                    .fold(0u64, |acc, (&zk, &tk)| (acc + zk * (tk % modulus)) % modulus)
            }
            Faithful::Regular => {
                let n = self.dim;
                let mut m = vec![0u64; n * n];
                for (a, &xa) in x.iter().enumerate() {
                    if xa == 0 {
                        continue;
                    }
                    for &(b, k, c) in &self.rows[a] {
                        let e = &mut m[k as usize * n + b as usize];
                        *e = (*e + xa * c) % self.p;
                    }
                }
                for _ in 0..i {
                    m = mat_pow(&m, n, self.p, modulus);
                }
                (0..n).fold(0u64, |acc, j| (acc + m[j * n + j]) % modulus)
            }
        };
        t / self.p.pow(i)
    }
}

fn int_mul(rows: &[Vec<(u32, u32, u64)>], x: &[u64], y: &[u64], modulus: u64) -> Vec<u64> {
    let mut out = vec![0u64; x.len()];
    for (a, &xa) in x.iter().enumerate() {
        if xa == 0 {
            continue;
        }
        for &(b, k, c) in &rows[a] {
            let yb = y[b as usize];
            if yb != 0 {
                let o = &mut out[k as usize];
                *o = (*o + xa * yb % modulus * (c % modulus)) % modulus;
            }
        }
    }
    out
}

fn int_pow(rows: &[Vec<(u32, u32, u64)>], x: &[u64], mut e: u64, modulus: u64) -> Vec<u64> {
    let mut acc: Option<Vec<u64>> = None;
    let mut base = x.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = Some(match acc {
                None => base.clone(),
                Some(a) => int_mul(rows, &a, &base, modulus),
            });
        }
        e >>= 1;
        if e > 0 {
            base = int_mul(rows, &base, &base, modulus);
        }
    }
    acc.expect("positive exponent")
}

fn mat_mul(a: &[u64], b: &[u64], n: usize, modulus: u64) -> Vec<u64> {
    let mut out = vec![0u64; n * n];
    for i in 0..n {
        let row = &mut out[i * n..(i + 1) * n];
        for k in 0..n {
            let aik = a[i * n + k];
            if aik == 0 {
                continue;
            }
            let brow = &b[k * n..(k + 1) * n];
            for (o, &bkj) in row.iter_mut().zip(brow) {
                *o += aik * bkj;
            }
        }
        for o in row.iter_mut() {
            *o %= modulus;
        }
    }
    out
}

fn mat_pow(m: &[u64], n: usize, mut e: u64, modulus: u64) -> Vec<u64> {
    let mut acc: Option<Vec<u64>> = None;
    let mut base = m.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = Some(match acc {
                None => base.clone(),
                Some(a) => mat_mul(&a, &base, n, modulus),
            });
        }
        e >>= 1;
        if e > 0 {
            base = mat_mul(&base, &base, n, modulus);
        }
    }
    acc.expect("positive exponent")
}

/// Left kernel `{α : α M = 0}` of an `r × c` matrix, as rows.
fn left_kernel(fp: &Arc<GField>, rows: &[Vec<u64>], cols: usize) -> MatGF {
    let r = rows.len();
    let mut t = MatGF::zeros(fp, cols, r);
    for (s, row) in rows.iter().enumerate() {
        for (b, &v) in row.iter().enumerate() {
            if v != 0 {
                t.set(b, s, v as Fq);
            }
        }
    }
    t.kernel_basis()
}

/// Basis of the Jacobson radical, as a subspace of coordinate space.
pub fn radical(a: &FdAlgebra) -> Subspace {
    let (pf, embedding) = prime_form(a);
    let fp = Arc::new(GField::new(pf.p as u32, 1).expect("characteristic is prime"));
    let dim = pf.dim;

    // level 0: kernel of the trace form
    let traces = pf.basis_traces();
    let gram: Vec<Vec<u64>> = (0..dim)
        .map(|x| {
            let mut e = vec![0u64; dim];
            e[x] = 1;
            pf.pair_with(&e, &traces)
        })
        .collect();
    let mut ideal = Subspace::from_matrix(&left_kernel(&fp, &gram, dim));

    let mut level = 0u32;
    let mut bound = 1usize;
    while bound.saturating_mul(pf.p as usize) <= pf.degree() {
        bound *= pf.p as usize;
        level += 1;
        if ideal.dim() == 0 {
            break;
        }
        let basis: Vec<Vec<u64>> = (0..ideal.dim())
            .map(|s| ideal.vector(s).iter().map(|&v| v as u64).collect())
            .collect();
        let mut gamma = vec![0u64; dim];
        for (s, &pc) in ideal.pivots().iter().enumerate() {
            gamma[pc] = pf.g(&basis[s], level);
        }
        let h: Vec<Vec<u64>> = basis.iter().map(|v| pf.pair_with(v, &gamma)).collect();
        let alpha = left_kernel(&fp, &h, dim);
        let rows: Vec<Vec<Fq>> = (0..alpha.rows())
            .map(|r| ideal.combine(alpha.row(r)))
            .collect();
        ideal = Subspace::from_rows(&fp, dim, &rows);
    }

    let field = a.field();
    let rows: Vec<Vec<Fq>> = match embedding {
        Embedding::Direct => (0..ideal.dim()).map(|s| ideal.vector(s).to_vec()).collect(),
        Embedding::Restricted(m) => (0..ideal.dim())
            .map(|s| {
                let v = ideal.vector(s);
                (0..a.dim())
                    .map(|k| {
                        (0..m).fold(0, |acc: Fq, t| {
                            let c = field.mul(
                                v[k * m as usize + t as usize],
                                field.basis_element(t),
                            );
                            field.add(acc, c)
                        })
                    })
                    .collect()
            })
            .collect(),
    };
    Subspace::from_rows(field, a.dim(), &rows)
}
