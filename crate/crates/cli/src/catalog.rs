//! Named groups: symmetric, alternating, cyclic, dihedral, special linear,
//! and p-groups built from multiplication tables in their regular
//! representation; plus semidirect products by a single automorphism.

use std::collections::HashMap;

use scott_core::permgroup::{Perm, PermGroup};
use scott_core::{Error, Result};

use crate::text::parse_group;

/// A finite group as a multiplication table on `0..n`, with `0` the identity.
#[derive(Clone, Debug)]
pub struct Table {
    n: usize,
    mul: Vec<u32>,
    gens: Vec<u32>,
}

impl Table {
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.n + b as usize]
    }

    pub fn generators(&self) -> &[u32] {
        &self.gens
    }

    pub fn cyclic(n: usize) -> Table {
        let mul = (0..n * n).map(|k| ((k / n + k % n) % n) as u32).collect();
        Table {
            n,
            mul,
            gens: if n > 1 { vec![1] } else { Vec::new() },
        }
    }

    pub fn direct(a: &Table, b: &Table) -> Table {
        let n = a.n * b.n;
        let mut mul = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                let (xa, xb) = (x / b.n, x % b.n);
                let (ya, yb) = (y / b.n, y % b.n);
                mul[x * n + y] =
                    a.mul(xa as u32, ya as u32) * b.n as u32 + b.mul(xb as u32, yb as u32);
            }
        }
        let mut gens: Vec<u32> = a.gens.iter().map(|&g| g * b.n as u32).collect();
        gens.extend(b.gens.iter().copied());
        Table { n, mul, gens }
    }

    /// From a permutation group by enumerating its elements (identity first).
    pub fn from_group(g: &PermGroup) -> Table {
        let mut elems = g.elements();
        elems.sort();
        let index: HashMap<&Perm, u32> =
            elems.iter().enumerate().map(|(i, e)| (e, i as u32)).collect();
        let n = elems.len();
        let mut mul = vec![0; n * n];
        for (i, a) in elems.iter().enumerate() {
            for (j, b) in elems.iter().enumerate() {
                mul[i * n + j] = index[&a.compose(b)];
            }
        }
        let gens = g.generators().iter().map(|s| index[s]).collect();
        Table { n, mul, gens }
    }

    pub fn element_order(&self, x: u32) -> usize {
        let mut y = x;
        let mut k = 1;
        while y != 0 {
            y = self.mul(x, y);
            k += 1;
        }
        k
    }

    /// Checks that `alpha` is an automorphism.
    pub fn is_automorphism(&self, alpha: &[u32]) -> bool {
        let mut seen = vec![false; self.n];
        for &y in alpha {
            if y as usize >= self.n || std::mem::replace(&mut seen[y as usize], true) {
                return false;
            }
        }
        (0..self.n as u32).all(|a| {
            (0..self.n as u32).all(|b| alpha[self.mul(a, b) as usize] == self.mul(alpha[a as usize], alpha[b as usize]))
        })
    }

    /// The homomorphism sending each generator to the given image, if one exists.
    pub fn hom_from_images(&self, images: &[u32]) -> Option<Vec<u32>> {
        let mut phi = vec![u32::MAX; self.n];
        phi[0] = 0;
        let mut queue = vec![0u32];
        let mut i = 0;
        while i < queue.len() {
            let y = queue[i];
            for (s, &img) in self.gens.iter().zip(images) {
                let x = self.mul(*s, y);
                let v = self.mul(img, phi[y as usize]);
                if phi[x as usize] == u32::MAX {
                    phi[x as usize] = v;
                    queue.push(x);
                } else if phi[x as usize] != v {
                    return None;
                }
            }
            i += 1;
        }
        (queue.len() == self.n).then_some(phi)
    }

    /// The group `⟨N, t⟩` with `t x t^-1 = alpha(x)` and `t^m = z`. Requires
    /// `alpha(z) = z` and `alpha^m` to be conjugation by `z`; checked.
    pub fn extension(base: &Table, alpha: &[u32], m: usize, z: u32) -> Result<Table> {
        if !base.is_automorphism(alpha) || alpha[z as usize] != z {
            return Err(Error::InvalidInput("not an automorphism fixing t^m".into()));
        }
        let bn = base.n;
        let n = bn * m;
        let mut powers = vec![(0..bn as u32).collect::<Vec<u32>>()];
        for k in 1..m {
            let prev = &powers[k - 1];
            powers.push(prev.iter().map(|&x| alpha[x as usize]).collect());
        }
        let mut mul = vec![0; n * n];
        for x in 0..n {
            let (x1, k1) = ((x / m) as u32, x % m);
            for y in 0..n {
                let (x2, k2) = ((y / m) as u32, y % m);
                let mut e = base.mul(x1, powers[k1][x2 as usize]);
                if k1 + k2 >= m {
                    e = base.mul(e, z);
                }
                mul[x * n + y] = e * m as u32 + ((k1 + k2) % m) as u32;
            }
        }
        let mut gens: Vec<u32> = base.gens.iter().map(|&g| g * m as u32).collect();
        if m > 1 {
            gens.push(1);
        }
        let t = Table { n, mul, gens };
        // associativity: enough for generators against all pairs
        for &g in &t.gens {
            for a in 0..n as u32 {
                for b in 0..n as u32 {
                    if t.mul(g, t.mul(a, b)) != t.mul(t.mul(g, a), b) {
                        return Err(Error::InvalidInput("extension data do not define a group".into()));
                    }
                }
            }
        }
        Ok(t)
    }

    /// Left regular representation on `n` points.
    pub fn regular(&self) -> PermGroup {
        let gens = self.gens.iter().map(|&g| self.left(g)).collect();
        PermGroup::new(self.n, gens).expect("degrees agree")
    }

    fn left(&self, g: u32) -> Perm {
        Perm::from_images((0..self.n as u32).map(|x| self.mul(g, x)).collect()).expect("row of a group table")
    }

    /// `N ⋊ ⟨alpha⟩` acting on the elements of `N`: left translations
    /// together with `alpha` itself.
    pub fn holomorph_extension(&self, alpha: &[u32]) -> Result<PermGroup> {
        if !self.is_automorphism(alpha) {
            return Err(Error::InvalidInput("not an automorphism".into()));
        }
        let mut gens: Vec<Perm> = self.gens.iter().map(|&g| self.left(g)).collect();
        gens.push(Perm::from_images(alpha.to_vec())?);
        PermGroup::new(self.n, gens)
    }
}

fn power_map(n: usize, r: usize) -> Vec<u32> {
    (0..n).map(|i| ((i * r) % n) as u32).collect()
}

fn quaternion(n: usize) -> Table {
    // ⟨a, t | a^(n/2) = 1, t^2 = a^(n/4), t a t^-1 = a^-1⟩
    let half = n / 2;
    let c = Table::cyclic(half);
    Table::extension(&c, &power_map(half, half - 1), 2, (half / 2) as u32).expect("generalized quaternion")
}

/// `C_{p^n} ⋊ C_p` with the generator acting as `x ↦ x^(1+p^(n-1))`.
fn modular(p: usize, n: u32) -> Table {
    let q = p.pow(n);
    let c = Table::cyclic(q);
    Table::extension(&c, &power_map(q, 1 + p.pow(n - 1)), p, 0).expect("modular group")
}

/// Unitriangular 3×3 matrices over GF(p): `(C_p × C_p) ⋊ C_p`.
fn heisenberg(p: usize) -> Table {
    let base = Table::direct(&Table::cyclic(p), &Table::cyclic(p));
    // element i*p + j = c^i b^j ; alpha: b -> b c
    let alpha: Vec<u32> = (0..p * p)
        .map(|k| (((k / p + k % p) % p) * p + k % p) as u32)
        .collect();
    Table::extension(&base, &alpha, p, 0).expect("Heisenberg group")
}

fn elementary_abelian(p: usize, k: u32) -> Table {
    let mut t = Table::cyclic(1);
    for _ in 0..k {
        t = Table::direct(&t, &Table::cyclic(p));
    }
    t
}

fn dihedral_table(n: usize) -> Table {
    Table::extension(&Table::cyclic(n), &power_map(n, n - 1), 2, 0).expect("dihedral group")
}

/// Every group of order 8, 16 or 27, each with a descriptive label.
pub fn groups_of_order(order: usize) -> Result<Vec<(&'static str, PermGroup)>> {
    let c = Table::cyclic;
    let d = Table::direct;
    let tables: Vec<(&'static str, Table)> = match order {
        8 => vec![
            ("C8", c(8)),
            ("C4xC2", d(&c(4), &c(2))),
            ("C2^3", elementary_abelian(2, 3)),
            ("D8", dihedral_table(4)),
            ("Q8", quaternion(8)),
        ],
        16 => {
            // C4 x C2 with element 2i + j = a^i b^j
            let c4c2 = d(&c(4), &c(2));
            let g3_alpha: Vec<u32> = (0..8).map(|k| ((k / 2) * 2 + (k / 2 + k % 2) % 2) as u32).collect();
            // C4 x C2 = <z> x <x>, Pauli: t x t^-1 = z^2 x
            let pauli_alpha: Vec<u32> = (0..8).map(|k| ((((k / 2) + 2 * (k % 2)) % 4) * 2 + k % 2) as u32).collect();
            vec![
                ("C16", c(16)),
                ("C4xC4", d(&c(4), &c(4))),
                ("(C4xC2):C2", Table::extension(&c4c2, &g3_alpha, 2, 0)?),
                ("C4:C4", Table::extension(&c(4), &power_map(4, 3), 4, 0)?),
                ("C8xC2", d(&c(8), &c(2))),
                ("M16", modular(2, 3)),
                ("D16", dihedral_table(8)),
                ("SD16", Table::extension(&c(8), &power_map(8, 3), 2, 0)?),
                ("Q16", quaternion(16)),
                ("C4xC2xC2", d(&c(4), &elementary_abelian(2, 2))),
                ("C2xD8", d(&c(2), &dihedral_table(4))),
                ("C2xQ8", d(&c(2), &quaternion(8))),
                ("C4oD8", Table::extension(&c4c2, &pauli_alpha, 2, 0)?),
                ("C2^4", elementary_abelian(2, 4)),
            ]
        }
        27 => vec![
            ("C27", c(27)),
            ("C9xC3", d(&c(9), &c(3))),
            ("C3^3", elementary_abelian(3, 3)),
            ("Heisenberg(3)", heisenberg(3)),
            ("M27", modular(3, 2)),
        ],
        _ => return Err(Error::InvalidInput(format!("no list of groups of order {order}"))),
    };
    Ok(tables.into_iter().map(|(name, t)| (name, t.regular())).collect())
}

fn parse_num(s: &str, what: &str) -> Result<usize> {
    s.parse()
        .map_err(|_| Error::InvalidInput(format!("bad {what} '{s}'")))
}

fn parse_prime(s: &str) -> Result<usize> {
    let p = parse_num(s, "prime")?;
    if !scott_core::gflinalg::is_prime(p as u32) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    Ok(p)
}

fn check_degree(n: usize) -> Result<()> {
    if n == 0 || n > crate::text::MAX_DEGREE {
        return Err(Error::InvalidInput(format!("degree {n} out of range")));
    }
    Ok(())
}

fn cycle(n: usize, points: &[usize]) -> Perm {
    let cyc: Vec<u32> = points.iter().map(|&x| x as u32 + 1).collect();
    Perm::from_cycles(n, &[cyc]).expect("valid cycle")
}

pub fn symmetric(n: usize) -> Result<PermGroup> {
    check_degree(n)?;
    let gens = if n < 2 {
        Vec::new()
    } else if n == 2 {
        vec![cycle(2, &[0, 1])]
    } else {
        vec![cycle(n, &(0..n).collect::<Vec<_>>()), cycle(n, &[0, 1])]
    };
    PermGroup::new(n, gens)
}

pub fn alternating(n: usize) -> Result<PermGroup> {
    check_degree(n)?;
    let gens = (2..n).map(|k| cycle(n, &[0, 1, k])).collect();
    PermGroup::new(n, gens)
}

/// Dihedral group of the given order `2n`, acting on `n` points.
pub fn dihedral(order: usize) -> Result<PermGroup> {
    if order < 2 || order % 2 != 0 {
        return Err(Error::InvalidInput("dihedral order must be even".into()));
    }
    let n = order / 2;
    if n <= 2 {
        // D2 = C2, D4 = V4: too small to act faithfully as polygon symmetries
        return Ok(dihedral_table(n).regular());
    }
    check_degree(n)?;
    let refl: Vec<u32> = (0..n).map(|i| ((n - i) % n) as u32).collect();
    PermGroup::new(
        n,
        vec![cycle(n, &(0..n).collect::<Vec<_>>()), Perm::from_images(refl)?],
    )
}

/// `SL(2, p)` acting on the nonzero vectors of `GF(p)^2`.
pub fn special_linear_2(p: usize) -> Result<PermGroup> {
    let n = p * p - 1;
    check_degree(n)?;
    let index = |x: usize, y: usize| x * p + y - 1;
    let act = |m: [usize; 4]| -> Result<Perm> {
        let imgs = (1..p * p)
            .map(|v| {
                let (x, y) = (v / p, v % p);
                index((m[0] * x + m[1] * y) % p, (m[2] * x + m[3] * y) % p) as u32
            })
            .collect();
        Perm::from_images(imgs)
    };
    PermGroup::new(n, vec![act([1, 1, 0, 1])?, act([0, p - 1, 1, 0])?])
}

/// An automorphism of order 2 of a p-group, searched by generator images in
/// index order; returns `P ⋊ C2` on the elements of `P`.
pub fn find_involutory_extension(p_group: &PermGroup) -> Option<PermGroup> {
    let table = Table::from_group(p_group);
    let gens = table.generators().to_vec();
    let orders: Vec<usize> = (0..table.order() as u32).map(|x| table.element_order(x)).collect();
    let candidates: Vec<Vec<u32>> = gens
        .iter()
        .map(|&g| {
            (0..table.order() as u32)
                .filter(|&x| orders[x as usize] == orders[g as usize])
                .collect()
        })
        .collect();
    let mut choice = vec![0usize; gens.len()];
    loop {
        let images: Vec<u32> = choice.iter().zip(&candidates).map(|(&i, c)| c[i]).collect();
        if images != gens {
            if let Some(alpha) = table.hom_from_images(&images) {
                let involution = (0..table.order()).all(|x| alpha[alpha[x] as usize] as usize == x);
                if involution && table.is_automorphism(&alpha) {
                    return table.holomorph_extension(&alpha).ok();
                }
            }
        }
        // odometer
        let mut k = 0;
        loop {
            if k == choice.len() {
                return None;
            }
            choice[k] += 1;
            if choice[k] < candidates[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

/// `G ⋊ ⟨α⟩` where `α` (a permutation of the same points) normalizes `G`;
/// the automorphism is conjugation by `α`, of the order it has on `G`.
pub fn semidirect(g: &PermGroup, alpha: &Perm) -> Result<PermGroup> {
    if alpha.degree() != g.degree() {
        return Err(Error::DegreeMismatch {
            expected: g.degree(),
            found: alpha.degree(),
        });
    }
    let table = Table::from_group(g);
    let mut elems = g.elements();
    elems.sort();
    let index: HashMap<&Perm, u32> = elems.iter().enumerate().map(|(i, e)| (e, i as u32)).collect();
    let map = elems
        .iter()
        .map(|e| index.get(&e.conjugate_by(alpha)).copied())
        .collect::<Option<Vec<u32>>>()
        .ok_or_else(|| Error::InvalidInput("the permutation does not normalize the group".into()))?;
    table.holomorph_extension(&map)
}

/// Looks up a catalog name such as `symmetric:4` or `extraspecial:3:minus`.
pub fn named_group(name: &str) -> Result<PermGroup> {
    let parts: Vec<&str> = name.split(':').collect();
    let bad = || Error::InvalidInput(format!("bad group name '{name}'"));
    let g = match parts.as_slice() {
        ["symmetric", n] => symmetric(parse_num(n, "degree")?)?,
        ["alternating", n] => alternating(parse_num(n, "degree")?)?,
        ["cyclic", n] => {
            let n = parse_num(n, "order")?;
            check_degree(n)?;
            Table::cyclic(n).regular()
        }
        ["dihedral", n] => dihedral(parse_num(n, "order")?)?,
        ["elemabelian", p, k] => {
            let p = parse_prime(p)?;
            let k = parse_num(k, "rank")? as u32;
            check_degree(p.checked_pow(k).ok_or_else(bad)?)?;
            elementary_abelian(p, k).regular()
        }
        ["extraspecial", p, kind] => {
            let p = parse_prime(p)?;
            check_degree(p * p * p)?;
            match (p, *kind) {
                (2, "plus") => dihedral_table(4).regular(),
                (2, "minus") => quaternion(8).regular(),
                (_, "plus") => heisenberg(p).regular(),
                (_, "minus") => modular(p, 2).regular(),
                _ => return Err(bad()),
            }
        }
        ["modular", p, n] => {
            let p = parse_prime(p)?;
            let n = parse_num(n, "exponent")? as u32;
            if n < 1 || (p == 2 && n < 3) {
                return Err(Error::InvalidInput("modular group needs n >= 1 (n >= 3 for p = 2)".into()));
            }
            check_degree(p.checked_pow(n + 1).ok_or_else(bad)?)?;
            modular(p, n).regular()
        }
        ["sl2", p] => special_linear_2(parse_prime(p)?)?,
        ["pgroup", order, k] => {
            let list = groups_of_order(parse_num(order, "order")?)?;
            let k = parse_num(k, "index")?;
            list.into_iter().nth(k.wrapping_sub(1)).ok_or_else(bad)?.1
        }
        ["semidirect", group_file, aut_file] => {
            let g = parse_group(&std::fs::read_to_string(group_file)?)?;
            let a = parse_group(&std::fs::read_to_string(aut_file)?)?;
            let [alpha] = a.generators() else {
                return Err(Error::InvalidInput("automorphism file must hold one generator".into()));
            };
            semidirect(&g, alpha)?
        }
        _ => return Err(bad()),
    };
    Ok(g)
}
