//! Univariate polynomials over GF(q) and their factorization.

use rand::Rng;

use super::field::{Fq, GField};

/// Coefficients, lowest degree first; no trailing zeros (zero polynomial is empty).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly(pub Vec<Fq>);

impl Poly {
    pub fn zero() -> Poly {
        Poly(Vec::new())
    }

    pub fn one() -> Poly {
        Poly(vec![1])
    }

    pub fn x() -> Poly {
        Poly(vec![0, 1])
    }

    pub fn constant(c: Fq) -> Poly {
        Poly(vec![c]).trimmed()
    }

    pub fn trimmed(mut self) -> Poly {
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> Fq {
        *self.0.last().unwrap_or(&0)
    }

    pub fn coeffs(&self) -> &[Fq] {
        &self.0
    }

    pub fn monic(&self, f: &GField) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let inv = f.inv(self.lead());
        Poly(self.0.iter().map(|&c| f.mul(c, inv)).collect())
    }

    pub fn add(&self, other: &Poly, f: &GField) -> Poly {
        let n = self.0.len().max(other.0.len());
        let v = (0..n)
            .map(|i| {
                let a = self.0.get(i).copied().unwrap_or(0);
                let b = other.0.get(i).copied().unwrap_or(0);
                f.add(a, b)
            })
            .collect();
        Poly(v).trimmed()
    }

    pub fn sub(&self, other: &Poly, f: &GField) -> Poly {
        self.add(&other.scale(f.neg(1), f), f)
    }

    pub fn scale(&self, c: Fq, f: &GField) -> Poly {
        Poly(self.0.iter().map(|&a| f.mul(a, c)).collect()).trimmed()
    }

    pub fn mul(&self, other: &Poly, f: &GField) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![0; self.0.len() + other.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.0.iter().enumerate() {
                v[i + j] = f.add(v[i + j], f.mul(a, b));
            }
        }
        Poly(v).trimmed()
    }

    pub fn divrem(&self, d: &Poly, f: &GField) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.0.len() - 1;
        let inv = f.inv(d.lead());
        let mut r = self.0.clone();
        if r.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut q = vec![0; r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = f.mul(r[k + dd], inv);
            q[k] = c;
            if c != 0 {
                for (i, &di) in d.0.iter().enumerate() {
                    r[k + i] = f.sub(r[k + i], f.mul(c, di));
                }
            }
        }
        r.truncate(dd);
        (Poly(q).trimmed(), Poly(r).trimmed())
    }

    pub fn rem(&self, d: &Poly, f: &GField) -> Poly {
        self.divrem(d, f).1
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Poly, f: &GField) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b, f);
            a = b;
            b = r;
        }
        a.monic(f)
    }

    /// Returns `(g, s, t)` with `s·self + t·other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Poly, f: &GField) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1, f);
            let s2 = s0.sub(&q.mul(&s1, f), f);
            let t2 = t0.sub(&q.mul(&t1, f), f);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = f.inv(r0.lead());
        (r0.scale(inv, f), s0.scale(inv, f), t0.scale(inv, f))
    }

    pub fn derivative(&self, f: &GField) -> Poly {
        let v = self
            .0
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(c, f.from_int(i as i64)))
            .collect();
        Poly(v).trimmed()
    }

    pub fn mul_mod(&self, other: &Poly, m: &Poly, f: &GField) -> Poly {
        self.mul(other, f).rem(m, f)
    }

    pub fn pow_mod(&self, mut e: u64, m: &Poly, f: &GField) -> Poly {
        let mut acc = Poly::one().rem(m, f);
        let mut b = self.rem(m, f);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(&b, m, f);
            }
            b = b.mul_mod(&b, m, f);
            e >>= 1;
        }
        acc
    }

    pub fn eval(&self, x: Fq, f: &GField) -> Fq {
        self.0.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }
}

/// Squarefree factorization: pairs `(g, e)` with `f = Π g^e`, each `g` squarefree.
fn squarefree(fp: &Poly, f: &GField) -> Vec<(Poly, u32)> {
    let mut out = Vec::new();
    let p = f.p();
    let c = fp.gcd(&fp.derivative(f), f);
    let mut w = fp.monic(f).divrem(&c, f).0;
    let mut c = c;
    let mut i = 1u32;
    while w.degree().unwrap_or(0) > 0 {
        let y = w.gcd(&c, f);
        let fac = w.divrem(&y, f).0;
        if fac.degree().unwrap_or(0) > 0 {
            out.push((fac, i));
        }
        w = y.clone();
        c = c.divrem(&y, f).0;
        i += 1;
    }
    if c.degree().unwrap_or(0) > 0 {
        // c is a p-th power: take the p-th root coefficientwise
        let root_exp = (f.size() / p) as u64;
        let root: Vec<Fq> = c
            .0
            .iter()
            .step_by(p as usize)
            .map(|&a| f.pow(a, root_exp))
            .collect();
        for (g, e) in squarefree(&Poly(root).trimmed(), f) {
            out.push((g, e * p));
        }
    }
    out
}

/// `x^(q^k) mod m` by repeated q-th powering.
fn frobenius_power(base: &Poly, k: usize, m: &Poly, f: &GField) -> Poly {
    let mut h = base.rem(m, f);
    for _ in 0..k {
        h = h.pow_mod(f.size() as u64, m, f);
    }
    h
}

/// Distinct-degree factorization of a monic squarefree polynomial.
fn distinct_degree(g: &Poly, f: &GField) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    let mut rest = g.clone();
    let mut h = Poly::x();
    let mut d = 0;
    while rest.degree().unwrap_or(0) >= 2 * (d + 1) {
        d += 1;
        h = frobenius_power(&h, 1, &rest, f);
        let fac = h.sub(&Poly::x(), f).gcd(&rest, f);
        if fac.degree().unwrap_or(0) > 0 {
            rest = rest.divrem(&fac, f).0;
            h = h.rem(&rest, f);
            out.push((fac, d));
        }
    }
    if let Some(dr) = rest.degree().filter(|&dr| dr > 0) {
        out.push((rest, dr));
    }
    out
}

/// Splits a product of distinct irreducibles all of degree `d` (Cantor–Zassenhaus).
fn equal_degree<R: Rng>(g: &Poly, d: usize, f: &GField, rng: &mut R) -> Vec<Poly> {
    let n = g.degree().unwrap();
    if n == d {
        return vec![g.clone()];
    }
    let q = f.size() as u64;
    loop {
        let a = Poly((0..n).map(|_| rng.gen_range(0..q) as Fq).collect()).trimmed();
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if f.p() == 2 {
            // trace map a + a^2 + ... + a^(2^(m d - 1))
            let mut t = a.rem(g, f);
            let mut acc = t.clone();
            for _ in 1..(f.m() as usize * d) {
                t = t.mul_mod(&t, g, f);
                acc = acc.add(&t, f);
            }
            acc
        } else {
            // a^((q^d - 1)/2) = (a^(1 + q + ... + q^(d-1)))^((q-1)/2)
            let mut prod = Poly::one();
            let mut t = a.rem(g, f);
            for i in 0..d {
                if i > 0 {
                    t = t.pow_mod(q, g, f);
                }
                prod = prod.mul_mod(&t, g, f);
            }
            prod.pow_mod((q - 1) / 2, g, f).sub(&Poly::one(), f)
        };
        let h = b.gcd(g, f);
        let dh = h.degree().unwrap_or(0);
        if dh > 0 && dh < n {
            let other = g.divrem(&h, f).0;
            let mut out = equal_degree(&h, d, f, rng);
            out.extend(equal_degree(&other, d, f, rng));
            return out;
        }
    }
}

/// Complete factorization into monic irreducibles with multiplicities,
/// sorted by (degree, coefficients).
pub fn factor<R: Rng>(fp: &Poly, f: &GField, rng: &mut R) -> Vec<(Poly, u32)> {
    assert!(!fp.is_zero(), "cannot factor zero");
    let mut out: Vec<(Poly, u32)> = Vec::new();
    for (g, e) in squarefree(fp, f) {
        for (h, d) in distinct_degree(&g, f) {
            for irr in equal_degree(&h, d, f, rng) {
                match out.iter_mut().find(|(x, _)| *x == irr) {
                    Some(entry) => entry.1 += e,
                    None => out.push((irr, e)),
                }
            }
        }
    }
    out.sort_by(|a, b| (a.0.degree(), &a.0 .0).cmp(&(b.0.degree(), &b.0 .0)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn expand(factors: &[(Poly, u32)], f: &GField) -> Poly {
        factors.iter().fold(Poly::one(), |acc, (g, e)| {
            (0..*e).fold(acc, |a, _| a.mul(g, f))
        })
    }

    fn brute_irreducible(g: &Poly, f: &GField) -> bool {
        // no root-free check: try all monic divisors of degree <= deg/2
        let n = g.degree().unwrap();
        let q = f.size() as usize;
        for d in 1..=n / 2 {
            for idx in 0..q.pow(d as u32) {
                let mut v = Vec::new();
                let mut x = idx;
                for _ in 0..d {
                    v.push((x % q) as Fq);
                    x /= q;
                }
                v.push(1);
                if g.rem(&Poly(v), f).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn factors_multiply_back_and_are_irreducible() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (p, m) in [(2, 1), (3, 1), (2, 2), (3, 2), (5, 1)] {
            let f = GField::new(p, m).unwrap();
            for _ in 0..30 {
                let deg = rng.gen_range(1..8);
                let mut v: Vec<Fq> = (0..deg).map(|_| rng.gen_range(0..f.size()) as Fq).collect();
                v.push(1);
                let poly = Poly(v);
                let fac = factor(&poly, &f, &mut rng);
                assert_eq!(expand(&fac, &f), poly);
                for (g, _) in &fac {
                    assert!(brute_irreducible(g, &f), "{g:?} reducible over GF({p}^{m})");
                }
            }
        }
    }

    #[test]
    fn repeated_factor_in_char_p() {
        let f = GField::new(2, 1).unwrap();
        // (x+1)^4 = x^4 + 1 over GF(2)
        let poly = Poly(vec![1, 0, 0, 0, 1]);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let fac = factor(&poly, &f, &mut rng);
        assert_eq!(fac, vec![(Poly(vec![1, 1]), 4)]);
    }
}
