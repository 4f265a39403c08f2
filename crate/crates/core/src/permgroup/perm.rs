use std::fmt;

use crate::error::{Error, Result};

/// A permutation of `{0, .., degree-1}`; displayed 1-based in cycle notation.
///
/// Products compose right to left: `(a * b)(x) = a(b(x))`. The derived order is
/// lexicographic on the image list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u32>,
}

impl Perm {
    pub fn identity(degree: usize) -> Perm {
        Perm {
            images: (0..degree as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(Error::InvalidInput(format!(
                    "image list {images:?} is not a bijection"
                )));
            }
            seen[x] = true;
        }
        Ok(Perm { images })
    }

    /// From 1-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<u32>]) -> Result<Perm> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        for cyc in cycles {
            for (i, &a) in cyc.iter().enumerate() {
                if a == 0 || a as usize > degree {
                    return Err(Error::InvalidInput(format!(
                        "point {a} outside 1..{degree}"
                    )));
                }
                if touched[a as usize - 1] {
                    return Err(Error::InvalidInput(format!(
                        "point {a} repeated in cycle notation"
                    )));
                }
                touched[a as usize - 1] = true;
                let b = cyc[(i + 1) % cyc.len()];
                images[a as usize - 1] = b - 1;
            }
        }
        Perm::from_images(images)
    }

    /// Parses cycle notation such as `(1 2 3)(4 5)` or `()`.
    pub fn parse(degree: usize, text: &str) -> Result<Perm> {
        let mut cycles = Vec::new();
        let mut current: Option<Vec<u32>> = None;
        let mut chars = text.chars().peekable();
        while let Some(&c) = chars.peek() {
            match c {
                '(' => {
                    if current.is_some() {
                        return Err(Error::InvalidInput("nested '('".into()));
                    }
                    current = Some(Vec::new());
                    chars.next();
                }
                ')' => {
                    let cyc = current
                        .take()
                        .ok_or_else(|| Error::InvalidInput("unbalanced ')'".into()))?;
                    if !cyc.is_empty() {
                        cycles.push(cyc);
                    }
                    chars.next();
                }
                c if c.is_whitespace() || c == ',' => {
                    chars.next();
                }
                c if c.is_ascii_digit() => {
                    let mut num = String::new();
                    while let Some(&d) = chars.peek() {
                        if d.is_ascii_digit() {
                            num.push(d);
                            chars.next();
                        } else {
                            break;
                        }
                    }
                    let cyc = current.as_mut().ok_or_else(|| {
                        Error::InvalidInput(format!("number {num} outside parentheses"))
                    })?;
                    let v: u32 = num
                        .parse()
                        .map_err(|_| Error::InvalidInput(format!("bad point {num}")))?;
                    cyc.push(v);
                }
                other => {
                    return Err(Error::InvalidInput(format!(
                        "unexpected character '{other}' in cycle notation"
                    )))
                }
            }
        }
        if current.is_some() {
            return Err(Error::InvalidInput("missing ')'".into()));
        }
        Perm::from_cycles(degree, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, x: u32) -> u32 {
        self.images[x as usize]
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: other.images.iter().map(|&x| self.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm { images: inv }
    }

    pub fn pow(&self, mut e: u64) -> Perm {
        let mut acc = Perm::identity(self.degree());
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&b);
            }
            b = b.compose(&b);
            e >>= 1;
        }
        acc
    }

    /// `g self g^-1`.
    pub fn conjugate_by(&self, g: &Perm) -> Perm {
        g.compose(self).compose(&g.inverse())
    }

    pub fn commutes_with(&self, other: &Perm) -> bool {
        (0..self.degree() as u32).all(|x| self.image(other.image(x)) == other.image(self.image(x)))
    }

    /// Non-trivial cycles, each starting at its smallest point (0-based).
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cyc = Vec::new();
            let mut x = start as u32;
            while !seen[x as usize] {
                seen[x as usize] = true;
                cyc.push(x);
                x = self.image(x);
            }
            out.push(cyc);
        }
        out
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .map(|c| c.len() as u64)
            .fold(1, |acc, l| acc / gcd(acc, l) * l)
    }

    /// Smallest moved point.
    pub fn first_moved(&self) -> Option<u32> {
        (0..self.degree() as u32).find(|&x| self.image(x) != x)
    }

    /// Extends to a larger degree by fixing the new points; `offset` shifts the support.
    pub fn embed(&self, degree: usize, offset: usize) -> Perm {
        assert!(offset + self.degree() <= degree);
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for (i, &x) in self.images.iter().enumerate() {
            images[offset + i] = x + offset as u32;
        }
        Perm { images }
    }
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl std::ops::Mul for &Perm {
    type Output = Perm;

    fn mul(self, rhs: &Perm) -> Perm {
        self.compose(rhs)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let pts: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
            write!(f, "({})", pts.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
