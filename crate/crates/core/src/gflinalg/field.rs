//! Finite fields GF(p^m) with table arithmetic.
//!
//! An element is stored as its coefficient vector over GF(p) packed into a
//! single integer in base p, little-endian: `c_0 + c_1 p + ... + c_{m-1} p^{m-1}`
//! represents `c_0 + c_1 x + ... + c_{m-1} x^{m-1}` modulo the defining
//! polynomial. For m = 1 this is just the residue.

use std::fmt;

use crate::error::{Error, Result};

/// Field element in packed coefficient encoding.
pub type Fq = u16;

/// Largest field size we build addition/multiplication tables for.
pub const MAX_FIELD_SIZE: u32 = 1024;

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub struct GField {
    p: u32,
    m: u32,
    q: u32,
    /// Monic modulus, low degree first, length m + 1.
    modulus: Vec<u32>,
    add: Vec<Fq>,
    mul: Vec<Fq>,
    neg: Vec<Fq>,
    inv: Vec<Fq>,
}

impl fmt::Debug for GField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.p, self.m)
    }
}

impl PartialEq for GField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m && self.modulus == other.modulus
    }
}

impl Eq for GField {}

// Dense polynomials over GF(p) used only while constructing the field.
fn prime_poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lead_inv = pow_mod(b[db], p - 2, p);
    while r.len() > db {
        let lead = *r.last().unwrap();
        if lead != 0 {
            let c = lead * lead_inv % p;
            let shift = r.len() - 1 - db;
            for (i, &bi) in b.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p * p - c * bi % p) % p;
            }
        }
        r.pop();
    }
    while r.len() > 1 && *r.last().unwrap() == 0 {
        r.pop();
    }
    r
}

fn pow_mod(mut b: u32, mut e: u32, p: u32) -> u32 {
    let mut acc = 1u32;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn monic_from_index(idx: u32, deg: u32, p: u32) -> Vec<u32> {
    let mut v = Vec::with_capacity(deg as usize + 1);
    let mut x = idx;
    for _ in 0..deg {
        v.push(x % p);
        x /= p;
    }
    v.push(1);
    v
}

/// Irreducibility by trial division with all monic polynomials of degree <= deg/2.
fn is_irreducible_prime(f: &[u32], p: u32) -> bool {
    let deg = f.len() as u32 - 1;
    for d in 1..=deg / 2 {
        for idx in 0..p.pow(d) {
            let g = monic_from_index(idx, d, p);
            let r = prime_poly_rem(f, &g, p);
            if r.len() == 1 && r[0] == 0 {
                return false;
            }
        }
    }
    true
}

impl GField {
    /// Builds GF(p^m) with the lexicographically least monic irreducible
    /// modulus (lower coefficients read as a base-p number).
    pub fn new(p: u32, m: u32) -> Result<GField> {
        if !is_prime(p) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        if m == 0 {
            return Err(Error::InvalidInput("extension degree must be >= 1".into()));
        }
        let q = p
            .checked_pow(m)
            .filter(|&q| q <= MAX_FIELD_SIZE)
            .ok_or_else(|| Error::InvalidInput(format!("GF({p}^{m}) is too large")))?;
        let modulus = if m == 1 {
            vec![0, 1]
        } else {
            (0..p.pow(m))
                .map(|idx| monic_from_index(idx, m, p))
                .find(|f| f[0] != 0 && is_irreducible_prime(f, p))
                .expect("irreducible polynomials exist in every degree")
        };
        let mut field = GField {
            p,
            m,
            q,
            modulus,
            add: Vec::new(),
            mul: Vec::new(),
            neg: Vec::new(),
            inv: Vec::new(),
        };
        field.build_tables();
        Ok(field)
    }

    fn digits(&self, a: u32) -> Vec<u32> {
        let mut v = vec![0; self.m as usize];
        let mut x = a;
        for d in v.iter_mut() {
            *d = x % self.p;
            x /= self.p;
        }
        v
    }

    fn pack(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        let (p, m) = (self.p, self.m as usize);
        let da = self.digits(a);
        let db = self.digits(b);
        let mut prod = vec![0u32; 2 * m - 1];
        for i in 0..m {
            for j in 0..m {
                prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
            }
        }
        let mut r = if m == 1 { prod } else { prime_poly_rem(&prod, &self.modulus, p) };
        r.resize(m, 0);
        self.pack(&r)
    }

    fn build_tables(&mut self) {
        let q = self.q as usize;
        let p = self.p;
        self.add = vec![0; q * q];
        self.mul = vec![0; q * q];
        self.neg = vec![0; q];
        self.inv = vec![0; q];
        for a in 0..q as u32 {
            let da = self.digits(a);
            let na: Vec<u32> = da.iter().map(|&c| (p - c) % p).collect();
            self.neg[a as usize] = self.pack(&na) as Fq;
            for b in 0..q as u32 {
                let db = self.digits(b);
                let s: Vec<u32> = da.iter().zip(&db).map(|(&x, &y)| (x + y) % p).collect();
                self.add[a as usize * q + b as usize] = self.pack(&s) as Fq;
                self.mul[a as usize * q + b as usize] = self.slow_mul(a, b) as Fq;
            }
        }
        for a in 1..q {
            let b = (1..q).find(|&b| self.mul[a * q + b] == 1).unwrap();
            self.inv[a] = b as Fq;
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn size(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn is_prime_field(&self) -> bool {
        self.m == 1
    }

    #[inline]
    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        self.add[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg[b as usize])
    }

    #[inline]
    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        self.mul[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: Fq) -> Fq {
        self.neg[a as usize]
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self, a: Fq) -> Fq {
        assert!(a != 0, "inverse of zero in {self:?}");
        self.inv[a as usize]
    }

    pub fn div(&self, a: Fq, b: Fq) -> Fq {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: Fq, mut e: u64) -> Fq {
        let mut acc: Fq = 1;
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    /// Image of an integer under Z -> GF(p) -> GF(q).
    pub fn from_int(&self, n: i64) -> Fq {
        n.rem_euclid(self.p as i64) as Fq
    }

    /// Coefficient of x^t in the packed encoding.
    pub fn digit(&self, a: Fq, t: u32) -> u32 {
        (a as u32 / self.p.pow(t)) % self.p
    }

    /// The primitive-element power x^t (x the class of the indeterminate), for t < m
    /// this is simply the packed basis vector.
    pub fn basis_element(&self, t: u32) -> Fq {
        let mut x: Fq = 1;
        let gen: Fq = if self.m == 1 { 1 } else { self.p as Fq };
        for _ in 0..t {
            x = self.mul(x, gen);
        }
        x
    }

    /// All elements in packed order.
    pub fn elements(&self) -> impl Iterator<Item = Fq> {
        0..self.q as Fq
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_fields() {
        let f2 = GField::new(2, 1).unwrap();
        assert_eq!(f2.size(), 2);
        let f3 = GField::new(3, 1).unwrap();
        assert_eq!(f3.mul(2, 2), 1);
        let f4 = GField::new(2, 2).unwrap();
        // x^2 + x + 1
        assert_eq!(f4.modulus(), &[1, 1, 1]);
        let x: Fq = 2;
        assert_eq!(f4.mul(x, x), 3); // x^2 = x + 1
    }

    #[test]
    fn rejects_composite() {
        assert!(GField::new(4, 1).is_err());
        assert!(GField::new(2, 0).is_err());
    }

    #[test]
    fn frobenius_is_identity_on_prime_subfield() {
        let f9 = GField::new(3, 2).unwrap();
        for a in f9.elements() {
            assert_eq!(f9.pow(a, 9), a);
            let fixed = f9.pow(a, 3) == a;
            assert_eq!(fixed, a < 3);
        }
    }
}
