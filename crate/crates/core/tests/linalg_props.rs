use std::sync::Arc;

use proptest::prelude::*;

use scott_core::gflinalg::{field_make, solve_commutant, Fq, GField, MatGF};

fn field_of(ix: usize) -> Arc<GField> {
    let (p, m) = [(2, 1), (3, 1), (2, 2), (3, 2), (5, 1)][ix];
    field_make(p, m).unwrap()
}

fn matrix(f: &Arc<GField>, rows: usize, cols: usize, raw: &[u32]) -> MatGF {
    let q = f.size();
    MatGF::from_vec(f, rows, cols, raw.iter().take(rows * cols).map(|&x| (x % q) as Fq).collect())
}

fn random_matrix() -> impl Strategy<Value = MatGF> {
    (0usize..5, 1usize..8, 1usize..8, prop::collection::vec(any::<u32>(), 64))
        .prop_map(|(ix, r, c, raw)| matrix(&field_of(ix), r, c, &raw))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn field_axioms(ix in 0usize..4, a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let f = field_of(ix);
        let q = f.size();
        let (a, b, c) = ((a % q) as Fq, (b % q) as Fq, (c % q) as Fq);
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), 0);
        prop_assert_eq!(f.sub(a, b), f.add(a, f.neg(b)));
        prop_assert_eq!(f.mul(a, 1), a);
        if a != 0 {
            prop_assert_eq!(f.mul(a, f.inv(a)), 1);
            prop_assert_eq!(f.pow(a, q as u64 - 1), 1);
        }
    }

    #[test]
    fn rref_is_idempotent(a in random_matrix()) {
        let once = a.rref();
        let twice = once.matrix.rref();
        prop_assert_eq!(once.matrix.data(), twice.matrix.data());
        prop_assert_eq!(once.rank, twice.rank);
    }

    #[test]
    fn kernel_is_annihilated(a in random_matrix()) {
        let k = a.kernel_basis();
        prop_assert_eq!(k.rows() + a.rank(), a.cols());
        if k.rows() > 0 {
            prop_assert!(a.mul(&k.transpose()).is_zero());
            prop_assert_eq!(k.rank(), k.rows());
        }
    }

    #[test]
    fn inverse_when_full_rank(ix in 0usize..5, n in 1usize..7, raw in prop::collection::vec(any::<u32>(), 64)) {
        let f = field_of(ix);
        let a = matrix(&f, n, n, &raw);
        match a.inverse() {
            Some(b) => {
                prop_assert!(a.mul(&b).is_identity());
                prop_assert!(b.mul(&a).is_identity());
            }
            None => prop_assert!(a.rank() < n),
        }
    }
}

/// `dim {X : X A = A X for all A}` from the `n² × n²` Kronecker system.
fn commutant_dim_brute(f: &Arc<GField>, n: usize, gens: &[MatGF]) -> usize {
    let mut rows: Vec<Vec<Fq>> = Vec::new();
    for a in gens {
        // entry (i, j) of X A - A X, as a linear form in vec(X)
        for i in 0..n {
            for j in 0..n {
                let mut row = vec![0; n * n];
                for k in 0..n {
                    row[i * n + k] = f.add(row[i * n + k], a.get(k, j));
                    row[k * n + j] = f.sub(row[k * n + j], a.get(i, k));
                }
                rows.push(row);
            }
        }
    }
    n * n - MatGF::from_rows(f, n * n, &rows).rank()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn commutant_commutes(
        ix in 0usize..5,
        n in 1usize..=12,
        k in 1usize..3,
        // sparse entries keep the commutant non-trivial often
        raw in prop::collection::vec(prop_oneof![2 => Just(0u32), 1 => any::<u32>()], 288),
    ) {
        let f = field_of(ix);
        let gens: Vec<MatGF> = (0..k).map(|i| matrix(&f, n, n, &raw[i * 144..])).collect();
        let basis = solve_commutant(&f, n, &gens);
        for x in &basis {
            for a in &gens {
                prop_assert_eq!(x.mul(a).data().to_vec(), a.mul(x).data().to_vec());
            }
        }
        prop_assert_eq!(basis.len(), commutant_dim_brute(&f, n, &gens));
    }
}
