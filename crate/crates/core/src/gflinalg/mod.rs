//! Exact dense linear algebra over GF(p^m).

mod field;
mod matrix;
pub mod poly;
mod subspace;

use std::sync::Arc;

pub use field::{is_prime, Fq, GField, MAX_FIELD_SIZE};
pub use matrix::{MatGF, Rref};
pub use subspace::{EchelonBuilder, Quotient, Subspace};


use crate::error::Result;

/// Convenience constructor returning a shared field.
pub fn field_make(p: u32, m: u32) -> Result<Arc<GField>> {
    Ok(Arc::new(GField::new(p, m)?))
}

/// Basis of `{X : X g = g X for every g}` for square matrices of one size.
///
/// The unknown matrix is flattened row-major and the stacked Sylvester
/// system is solved by row reduction.
pub fn solve_commutant(field: &Arc<GField>, n: usize, generators: &[MatGF]) -> Vec<MatGF> {
    sylvester_kernel(field, n, n, generators, generators)
}

/// Basis of `{X (rows x cols) : X a_i = b_i X}`; used for homomorphism spaces.
pub fn sylvester_kernel(
    field: &Arc<GField>,
    rows: usize,
    cols: usize,
    source: &[MatGF],
    target: &[MatGF],
) -> Vec<MatGF> {
    assert_eq!(source.len(), target.len());
    let unknowns = rows * cols;
    if source.is_empty() {
        return (0..unknowns)
            .map(|k| {
                let mut m = MatGF::zeros(field, rows, cols);
                m.set(k / cols, k % cols, 1);
                m
            })
            .collect();
    }
    let f = &**field;
    let mut eqs: Vec<Vec<Fq>> = Vec::with_capacity(source.len() * unknowns);
    for (a, b) in source.iter().zip(target) {
        assert_eq!((a.rows(), a.cols()), (cols, cols));
        assert_eq!((b.rows(), b.cols()), (rows, rows));
        for i in 0..rows {
            for j in 0..cols {
                // (X a)_{ij} - (b X)_{ij}
                let mut eq = vec![0; unknowns];
                for k in 0..cols {
                    let c = a.get(k, j);
                    if c != 0 {
                        eq[i * cols + k] = f.add(eq[i * cols + k], c);
                    }
                }
                for k in 0..rows {
                    let c = b.get(i, k);
                    if c != 0 {
                        eq[k * cols + j] = f.sub(eq[k * cols + j], c);
                    }
                }
                eqs.push(eq);
            }
        }
    }
    let system = MatGF::from_rows(field, unknowns, &eqs);
    let kernel = system.kernel_basis();
    (0..kernel.rows())
        .map(|r| MatGF::from_vec(field, rows, cols, kernel.row(r).to_vec()))
        .collect()
}

/// Smallest subspace containing `vectors` and invariant under every generator.
pub fn spin(field: &Arc<GField>, n: usize, vectors: &[Vec<Fq>], generators: &[MatGF]) -> Subspace {
    let mut builder = EchelonBuilder::new(field, n);
    let mut queue: Vec<Vec<Fq>> = Vec::new();
    for v in vectors {
        if let Some(w) = builder.insert(v) {
            queue.push(w.to_vec());
        }
    }
    while let Some(v) = queue.pop() {
        for g in generators {
            let img = g.mul_vec(&v);
            if let Some(w) = builder.insert(&img) {
                queue.push(w.to_vec());
            }
        }
    }
    builder.into_subspace()
}
