//! Deterministic Schreier–Sims with straight-line words.
//!
//! Every strong generator remembers how it was produced from earlier strong
//! generators and transversal elements, so any homomorphic image of the group
//! (point actions, matrix representations) can be evaluated on arbitrary
//! members without flattening words.

use super::perm::Perm;

#[derive(Clone, Copy, Debug)]
pub(crate) enum Factor {
    Strong { index: usize, inverse: bool },
    Transversal { level: usize, point: u32, inverse: bool },
}

#[derive(Clone, Debug)]
pub(crate) enum Definition {
    Original(usize),
    Word(Vec<Factor>),
}

#[derive(Clone, Debug)]
pub(crate) struct StrongGen {
    pub perm: Perm,
    pub definition: Definition,
}

#[derive(Clone, Debug)]
pub(crate) struct Level {
    pub point: u32,
    pub gens: Vec<usize>,
    /// Orbit of `point` in discovery order; tree edges never change once set.
    pub orbit: Vec<u32>,
    /// For each point reached: (parent point, strong generator) with `point = s(parent)`.
    pub edge: Vec<Option<(u32, usize)>>,
    pub in_orbit: Vec<bool>,
    /// `transversal[x]` maps the base point to `x`.
    pub transversal: Vec<Option<Perm>>,
}

impl Level {
    fn new(point: u32, degree: usize) -> Level {
        let mut in_orbit = vec![false; degree];
        in_orbit[point as usize] = true;
        let mut transversal = vec![None; degree];
        transversal[point as usize] = Some(Perm::identity(degree));
        Level {
            point,
            gens: Vec::new(),
            orbit: vec![point],
            edge: vec![None; degree],
            in_orbit,
            transversal,
        }
    }

    fn extend(&mut self, strong: &[StrongGen]) {
        let mut i = 0;
        while i < self.orbit.len() {
            let x = self.orbit[i];
            for &s in &self.gens {
                let y = strong[s].perm.image(x);
                if !self.in_orbit[y as usize] {
                    self.in_orbit[y as usize] = true;
                    self.edge[y as usize] = Some((x, s));
                    let u = strong[s]
                        .perm
                        .compose(self.transversal[x as usize].as_ref().unwrap());
                    self.transversal[y as usize] = Some(u);
                    self.orbit.push(y);
                }
            }
            i += 1;
        }
    }

    pub fn transversal(&self, x: u32) -> Option<&Perm> {
        self.transversal[x as usize].as_ref()
    }
}

#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    pub(crate) strong: Vec<StrongGen>,
    pub(crate) levels: Vec<Level>,
}

/// Outcome of sifting an element down the chain.
pub(crate) struct Sift {
    pub residue: Perm,
    /// First level where the image left the orbit; `levels.len()` if none.
    pub stopped_at: usize,
    /// Orbit points hit at each passed level.
    pub points: Vec<u32>,
}

impl StabChain {
    pub fn new(degree: usize, generators: &[Perm]) -> StabChain {
        let mut chain = StabChain {
            degree,
            strong: Vec::new(),
            levels: Vec::new(),
        };
        for (k, g) in generators.iter().enumerate() {
            if g.is_identity() {
                continue;
            }
            if chain.levels.iter().all(|l| g.image(l.point) == l.point) {
                chain
                    .levels
                    .push(Level::new(g.first_moved().unwrap(), degree));
            }
            chain.strong.push(StrongGen {
                perm: g.clone(),
                definition: Definition::Original(k),
            });
        }
        for l in 0..chain.levels.len() {
            let base: Vec<u32> = chain.levels[..l].iter().map(|lv| lv.point).collect();
            let gens: Vec<usize> = (0..chain.strong.len())
                .filter(|&s| base.iter().all(|&b| chain.strong[s].perm.image(b) == b))
                .collect();
            chain.levels[l].gens = gens;
            let strong = chain.strong.clone();
            chain.levels[l].extend(&strong);
        }
        let mut i = chain.levels.len() as isize - 1;
        while i >= 0 {
            let l = i as usize;
            match chain.schreier_witness(l) {
                Some((residue, stopped, word)) => {
                    let idx = chain.strong.len();
                    let moved = residue.first_moved();
                    chain.strong.push(StrongGen {
                        perm: residue,
                        definition: Definition::Word(word),
                    });
                    if stopped == chain.levels.len() {
                        chain.levels.push(Level::new(moved.unwrap(), degree));
                    }
                    for lev in l + 1..=stopped {
                        chain.levels[lev].gens.push(idx);
                        let (strong, levels) = (&chain.strong, &mut chain.levels);
                        levels[lev].extend(strong);
                    }
                    i = stopped as isize;
                }
                None => i -= 1,
            }
        }
        chain
    }

    /// First Schreier generator at level `l` that does not sift through the levels below.
    fn schreier_witness(&self, l: usize) -> Option<(Perm, usize, Vec<Factor>)> {
        let level = &self.levels[l];
        for &beta in &level.orbit {
            let u_beta = level.transversal(beta).unwrap();
            for &s in &level.gens {
                let sb = self.strong[s].perm.image(beta);
                let u_sb = level.transversal(sb).unwrap();
                // u_{s beta}^-1 s u_beta fixes the base point
                let h = u_sb.inverse().compose(&self.strong[s].perm).compose(u_beta);
                if h.is_identity() {
                    continue;
                }
                let sift = self.sift_from(&h, l + 1);
                if sift.stopped_at < self.levels.len() || !sift.residue.is_identity() {
                    let mut word: Vec<Factor> = sift
                        .points
                        .iter()
                        .enumerate()
                        .rev()
                        .map(|(k, &pt)| Factor::Transversal {
                            level: l + 1 + k,
                            point: pt,
                            inverse: true,
                        })
                        .collect();
                    word.push(Factor::Transversal {
                        level: l,
                        point: sb,
                        inverse: true,
                    });
                    word.push(Factor::Strong {
                        index: s,
                        inverse: false,
                    });
                    word.push(Factor::Transversal {
                        level: l,
                        point: beta,
                        inverse: false,
                    });
                    return Some((sift.residue, sift.stopped_at, word));
                }
            }
        }
        None
    }

    pub(crate) fn sift_from(&self, g: &Perm, start: usize) -> Sift {
        let mut residue = g.clone();
        let mut points = Vec::new();
        for (l, level) in self.levels.iter().enumerate().skip(start) {
            let beta = residue.image(level.point);
            match level.transversal(beta) {
                Some(u) => {
                    residue = u.inverse().compose(&residue);
                    points.push(beta);
                }
                None => {
                    return Sift {
                        residue,
                        stopped_at: l,
                        points,
                    }
                }
            }
        }
        Sift {
            residue,
            stopped_at: self.levels.len(),
            points,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.point).collect()
    }

    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn strong_generators(&self) -> impl Iterator<Item = &Perm> {
        self.strong.iter().map(|s| &s.perm)
    }

    /// Membership by sifting.
    pub fn contains(&self, g: &Perm) -> bool {
        let s = self.sift_from(g, 0);
        s.stopped_at == self.levels.len() && s.residue.is_identity()
    }

    /// Transversal points `(β_1, .., β_k)` with `g = u_β1 ∘ .. ∘ u_βk`, if `g` is a member.
    pub(crate) fn factorize(&self, g: &Perm) -> Option<Vec<u32>> {
        let s = self.sift_from(g, 0);
        (s.stopped_at == self.levels.len() && s.residue.is_identity()).then_some(s.points)
    }
}

/// A target for evaluating group elements: anything with an associative
/// product, an identity and inverses supplied alongside generator images.
pub trait Representation {
    type Elt: Clone;
    fn identity(&self) -> Self::Elt;
    fn mul(&self, a: &Self::Elt, b: &Self::Elt) -> Self::Elt;
}

/// Evaluates a homomorphism on arbitrary group members from the images of
/// the original generators.
pub struct ChainEvaluator<'a, R: Representation> {
    chain: &'a StabChain,
    rep: R,
    strong: Vec<(R::Elt, R::Elt)>,
    transversal: Vec<Vec<Option<(R::Elt, R::Elt)>>>,
}

impl<'a, R: Representation> ChainEvaluator<'a, R> {
    /// `originals[k]` holds the image of generator `k` and of its inverse.
    pub fn new(chain: &'a StabChain, rep: R, originals: &[(R::Elt, R::Elt)]) -> Self {
        let mut ev = ChainEvaluator {
            chain,
            rep,
            strong: Vec::with_capacity(chain.strong.len()),
            transversal: chain
                .levels
                .iter()
                .map(|_| vec![None; chain.degree])
                .collect(),
        };
        for s in &chain.strong {
            let img = match &s.definition {
                Definition::Original(k) => originals[*k].clone(),
                Definition::Word(word) => {
                    let mut fwd = ev.rep.identity();
                    let mut bwd = ev.rep.identity();
                    for f in word {
                        let (a, a_inv) = ev.factor(*f);
                        fwd = ev.rep.mul(&fwd, &a);
                        bwd = ev.rep.mul(&a_inv, &bwd);
                    }
                    (fwd, bwd)
                }
            };
            ev.strong.push(img);
        }
        ev
    }

    fn factor(&mut self, f: Factor) -> (R::Elt, R::Elt) {
        let (a, b) = match f {
            Factor::Strong { index, inverse } => {
                let (a, b) = self.strong[index].clone();
                if inverse {
                    (b, a)
                } else {
                    (a, b)
                }
            }
            Factor::Transversal {
                level,
                point,
                inverse,
            } => {
                let (a, b) = self.transversal_image(level, point);
                if inverse {
                    (b, a)
                } else {
                    (a, b)
                }
            }
        };
        (a, b)
    }

    fn transversal_image(&mut self, level: usize, point: u32) -> (R::Elt, R::Elt) {
        if let Some(v) = &self.transversal[level][point as usize] {
            return v.clone();
        }
        // walk up to a memoized ancestor (the base point is the root)
        let lv = &self.chain.levels[level];
        let mut path = Vec::new();
        let mut x = point;
        while self.transversal[level][x as usize].is_none() {
            match lv.edge[x as usize] {
                Some((parent, s)) => {
                    path.push((x, s));
                    x = parent;
                }
                None => {
                    let id = self.rep.identity();
                    self.transversal[level][x as usize] = Some((id.clone(), id));
                }
            }
        }
        for &(y, s) in path.iter().rev() {
            let parent = lv.edge[y as usize].unwrap().0;
            let (pu, pu_inv) = self.transversal[level][parent as usize].clone().unwrap();
            let (sa, sa_inv) = self.strong[s].clone();
            let u = self.rep.mul(&sa, &pu);
            let u_inv = self.rep.mul(&pu_inv, &sa_inv);
            self.transversal[level][y as usize] = Some((u, u_inv));
        }
        self.transversal[level][point as usize].clone().unwrap()
    }

    /// Image of a member of the group; `None` if `g` is not a member.
    pub fn eval(&mut self, g: &Perm) -> Option<R::Elt> {
        let points = self.chain.factorize(g)?;
        let mut acc = self.rep.identity();
        for (level, &pt) in points.iter().enumerate() {
            let (u, _) = self.transversal_image(level, pt);
            acc = self.rep.mul(&acc, &u);
        }
        Some(acc)
    }

    pub fn representation(&self) -> &R {
        &self.rep
    }
}

/// Point permutations, composed right to left.
pub struct PermRep {
    pub degree: usize,
}

impl Representation for PermRep {
    type Elt = Perm;

    fn identity(&self) -> Perm {
        Perm::identity(self.degree)
    }

    fn mul(&self, a: &Perm, b: &Perm) -> Perm {
        a.compose(b)
    }
}
