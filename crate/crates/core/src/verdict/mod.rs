//! Brauer indecomposability of Scott modules: the local sufficient
//! conditions, the local criterion under control of fusion, the brute-force
//! oracle, the product-group construction and summand checks.

use std::sync::Arc;

use serde::ser::Serializer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fusion::{build_fusion, is_controlled_by_normalizer, saturation_index, ControlWitness};
use crate::gflinalg::GField;
use crate::modrep::{
    brauer_dim, brauer_quotient, decompose, is_indecomposable, scott_module, split_pair, GModule,
};
use crate::permgroup::{diagonal_subgroup, product_group, subgroups_of_pgroup, PermGroup};

/// Outcome of an indecomposability test on a module that may be zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Indec {
    Indecomposable,
    Decomposable,
    Zero,
}

impl Indec {
    /// "Indecomposable or zero".
    pub fn ok(self) -> bool {
        self != Indec::Decomposable
    }

    fn of(m: &GModule) -> Result<Indec> {
        if m.is_zero() {
            return Ok(Indec::Zero);
        }
        Ok(if is_indecomposable(m, true)? {
            Indec::Indecomposable
        } else {
            Indec::Decomposable
        })
    }
}

impl Serialize for Indec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Indec::Indecomposable => s.serialize_bool(true),
            Indec::Decomposable => s.serialize_bool(false),
            Indec::Zero => s.serialize_str("zero"),
        }
    }
}

/// Generators in cycle notation, for reports.
pub fn describe(q: &PermGroup) -> Vec<String> {
    q.generators().iter().map(|g| g.to_string()).collect()
}

/// One subgroup `Q ≤ P` with everything computed about it.
#[derive(Clone, Debug, Serialize)]
pub struct SubgroupRow {
    pub generators: Vec<String>,
    pub order: u64,
    pub cond_a: bool,
    pub cond_b: bool,
    /// `|N_P(Q)|`.
    pub r_order: u64,
    /// `|⟨N_P(Q), C_G(Q)⟩|`.
    pub l_order: Option<u64>,
    pub local_scott_dim: Option<usize>,
    pub res_centralizer_indec: Option<Indec>,
    pub brauer_dim: Option<usize>,
    pub brute_indec: Option<Indec>,
}

#[derive(Clone, Debug)]
pub struct Hypotheses {
    pub control: bool,
    pub control_witness: Option<ControlWitness>,
    /// `None` when control fails: the saturation shortcut does not apply.
    pub saturated: Option<bool>,
}

impl Hypotheses {
    pub fn hold(&self) -> bool {
        self.control && self.saturated == Some(true)
    }
}

#[derive(Clone, Debug)]
pub struct Verdict {
    pub prime: u32,
    pub hypotheses: Hypotheses,
    pub thm12_applicable: bool,
    /// `None` when the hypotheses fail and the criterion is not licensed.
    pub thm11_criterion_holds: Option<bool>,
    pub brute_force_result: bool,
    pub rows: Vec<SubgroupRow>,
    pub seed: u64,
}

impl Verdict {
    /// The implications the theorems assert, evaluated on this run.
    pub fn consistent(&self) -> bool {
        let sound = !(self.hypotheses.hold() && self.thm12_applicable) || self.brute_force_result;
        let equiv = self
            .thm11_criterion_holds
            .is_none_or(|h| h == self.brute_force_result);
        sound && equiv
    }
}

/// `N_P(Q) = Q C_P(Q)`; the join always lies in the normalizer, so orders decide.
pub fn check_condition_a(p_subgroup: &PermGroup, q: &PermGroup) -> bool {
    let n = p_subgroup.normalizer(q);
    let qc = q.join(&p_subgroup.centralizer(q));
    n.order() == qc.order()
}

/// `C_G(Q)` is p-nilpotent.
pub fn check_condition_b(g: &PermGroup, q: &PermGroup, p: u32) -> bool {
    g.centralizer(q).is_p_nilpotent(p)
}

pub fn hypotheses(g: &PermGroup, p_subgroup: &PermGroup, p: u32) -> Result<Hypotheses> {
    let (control, control_witness) = is_controlled_by_normalizer(g, p_subgroup, p)?;
    let saturated = control.then(|| {
        saturation_index(g, p_subgroup) % num_bigint::BigUint::from(p)
            != num_bigint::BigUint::default()
    });
    Ok(Hypotheses {
        control,
        control_witness,
        saturated,
    })
}

fn p_subgroups(p_subgroup: &PermGroup, p: u32) -> Result<Vec<PermGroup>> {
    if !p_subgroup.is_p_group(p) {
        return Err(Error::NotPGroup(p));
    }
    subgroups_of_pgroup(p_subgroup, p)
}

fn blank_row(q: &PermGroup, p_subgroup: &PermGroup) -> SubgroupRow {
    SubgroupRow {
        generators: describe(q),
        order: q.order_u64(),
        cond_a: false,
        cond_b: false,
        r_order: p_subgroup.normalizer(q).order_u64(),
        l_order: None,
        local_scott_dim: None,
        res_centralizer_indec: None,
        brauer_dim: None,
        brute_indec: None,
    }
}

/// Conditions (a) and (b) for every `Q ≤ P`, and whether they, control and
/// saturation all hold.
pub fn theorem12_verdict(
    g: &PermGroup,
    p_subgroup: &PermGroup,
    p: u32,
) -> Result<(bool, Vec<SubgroupRow>)> {
    let hyp = hypotheses(g, p_subgroup, p)?;
    let rows = condition_rows(g, p_subgroup, p)?;
    let applicable = hyp.hold() && rows.iter().all(|r| r.cond_a || r.cond_b);
    Ok((applicable, rows))
}

fn condition_rows(g: &PermGroup, p_subgroup: &PermGroup, p: u32) -> Result<Vec<SubgroupRow>> {
    Ok(p_subgroups(p_subgroup, p)?
        .iter()
        .map(|q| {
            let mut row = blank_row(q, p_subgroup);
            row.cond_a = check_condition_a(p_subgroup, q);
            row.cond_b = check_condition_b(g, q, p);
            row
        })
        .collect())
}

/// For every `Q ≤ P`: with `R = N_P(Q)` and `L = R C_G(Q)`, the restriction
/// of `Sc(L, R)` to `C_G(Q)` must be absolutely indecomposable. Only
/// licensed under control and saturation.
pub fn theorem11_criterion(
    g: &PermGroup,
    p_subgroup: &PermGroup,
    field: &Arc<GField>,
    seed: u64,
) -> Result<(bool, Vec<SubgroupRow>)> {
    let p = field.p();
    if !hypotheses(g, p_subgroup, p)?.hold() {
        return Err(Error::Hypothesis("criterion not licensed".into()));
    }
    let mut rows = Vec::new();
    let mut holds = true;
    for q in p_subgroups(p_subgroup, p)? {
        let mut row = blank_row(&q, p_subgroup);
        let (indec, l_order, dim) = local_scott_test(g, p_subgroup, &q, field, seed)?;
        row.l_order = Some(l_order);
        row.local_scott_dim = Some(dim);
        row.res_centralizer_indec = Some(indec);
        holds &= indec.ok();
        rows.push(row);
    }
    Ok((holds, rows))
}

fn local_scott_test(
    g: &PermGroup,
    p_subgroup: &PermGroup,
    q: &PermGroup,
    field: &Arc<GField>,
    seed: u64,
) -> Result<(Indec, u64, usize)> {
    let r = p_subgroup.normalizer(q);
    let c = g.centralizer(q);
    let l = r.join(&c);
    // R normalizes C_G(Q), so L = RC as a set
    let rc = r.intersection(&c);
    if l.order() * rc.order() != r.order() * c.order() {
        return Err(Error::Internal("<N_P(Q), C_G(Q)> is not the product set".into()));
    }
    let m = scott_module(&l, &r, field, seed)?;
    let res = m.restriction(&c)?;
    Ok((Indec::of(&res)?, l.order_u64(), m.dim()))
}

/// `Res^{N_G(Q)}_{C_G(Q)} M(Q)` for `M = Sc(G, P)` and every `Q ≤ P`.
pub fn brute_force_brauer_indecomposable(
    g: &PermGroup,
    p_subgroup: &PermGroup,
    field: &Arc<GField>,
    seed: u64,
) -> Result<(bool, Vec<SubgroupRow>)> {
    let m = scott_module(g, p_subgroup, field, seed)?;
    brute_force_on(&m, g, p_subgroup, &p_subgroups(p_subgroup, field.p())?)
}

fn brute_force_on(
    m: &GModule,
    g: &PermGroup,
    p_subgroup: &PermGroup,
    subgroups: &[PermGroup],
) -> Result<(bool, Vec<SubgroupRow>)> {
    let mut rows = Vec::new();
    let mut result = true;
    for q in subgroups {
        let mut row = blank_row(q, p_subgroup);
        let b = brauer_quotient(m, q)?;
        row.brauer_dim = Some(b.module.dim());
        let indec = if b.module.is_zero() {
            Indec::Zero
        } else {
            Indec::of(&b.module.restriction(&g.centralizer(q))?)?
        };
        row.brute_indec = Some(indec);
        result &= indec.ok();
        rows.push(row);
    }
    Ok((result, rows))
}

/// The brute-force oracle over `G`-conjugacy class representatives of
/// subgroups of `P` only.
pub fn brute_force_reduced(
    g: &PermGroup,
    p_subgroup: &PermGroup,
    field: &Arc<GField>,
    seed: u64,
) -> Result<bool> {
    let all = p_subgroups(p_subgroup, field.p())?;
    let mut reps: Vec<PermGroup> = Vec::new();
    for q in all {
        let known = reps.iter().any(|r| {
            r.order() == q.order() && !g.transporter_cosets(&q, r).is_empty()
        });
        if !known {
            reps.push(q);
        }
    }
    let m = scott_module(g, p_subgroup, field, seed)?;
    Ok(brute_force_on(&m, g, p_subgroup, &reps)?.0)
}

/// Hypotheses, both theorems and the brute-force oracle, merged per subgroup.
pub fn run_verdict(
    g: &PermGroup,
    p_subgroup: &PermGroup,
    field: &Arc<GField>,
    seed: u64,
) -> Result<Verdict> {
    let p = field.p();
    let hyp = hypotheses(g, p_subgroup, p)?;
    let mut rows = condition_rows(g, p_subgroup, p)?;
    let thm12_applicable = hyp.hold() && rows.iter().all(|r| r.cond_a || r.cond_b);
    let thm11 = if hyp.hold() {
        let (holds, local) = theorem11_criterion(g, p_subgroup, field, seed)?;
        for (row, l) in rows.iter_mut().zip(local) {
            row.l_order = l.l_order;
            row.local_scott_dim = l.local_scott_dim;
            row.res_centralizer_indec = l.res_centralizer_indec;
        }
        Some(holds)
    } else {
        None
    };
    let (brute, brute_rows) = brute_force_brauer_indecomposable(g, p_subgroup, field, seed)?;
    for (row, b) in rows.iter_mut().zip(brute_rows) {
        row.brauer_dim = b.brauer_dim;
        row.brute_indec = b.brute_indec;
    }
    Ok(Verdict {
        prime: p,
        hypotheses: hyp,
        thm12_applicable,
        thm11_criterion_holds: thm11,
        brute_force_result: brute,
        rows,
        seed,
    })
}

/// `Sc(G × N_G(P), ΔP)` for a Sylow `P` of `G`.
#[derive(Clone, Debug)]
pub struct CorollaryRun {
    pub group_order: u64,
    pub product_order: u64,
    /// `dim k[(G × H)/ΔP]`; the Scott module is a summand of it.
    pub module_dim: usize,
    /// Conditions (a)/(b) per `Q ≤ P`, checked inside `G`.
    pub conditions: Vec<SubgroupRow>,
    pub conditions_hold: bool,
    /// `C_{G×H}(ΔQ) = C_G(Q) × C_H(Q)` for every `Q`.
    pub centralizers_split: bool,
    pub verdict: Verdict,
}

pub fn corollary13_run(g: &PermGroup, field: &Arc<GField>, seed: u64) -> Result<CorollaryRun> {
    let p = field.p();
    let sylow = g.sylow(p);
    let h = g.normalizer(&sylow);
    let (gh, emb) = product_group(g, &h);
    let delta = diagonal_subgroup(&sylow, g, &h, &emb)?;
    let conditions = condition_rows(g, &sylow, p)?;
    let conditions_hold = conditions.iter().all(|r| r.cond_a || r.cond_b);
    let mut centralizers_split = true;
    for q in subgroups_of_pgroup(&sylow, p)? {
        let dq = diagonal_subgroup(&q, g, &h, &emb)?;
        let lhs = gh.centralizer(&dq);
        let rhs = emb.product_of(&g.centralizer(&q), &h.centralizer(&q));
        centralizers_split &= lhs.same_as(&rhs);
    }
    if !centralizers_split {
        return Err(Error::Internal("C(ΔQ) differs from C_G(Q) × C_H(Q)".into()));
    }
    let verdict = run_verdict(&gh, &delta, field, seed)?;
    Ok(CorollaryRun {
        group_order: g.order_u64(),
        product_order: gh.order_u64(),
        module_dim: (gh.order_u64() / delta.order_u64()) as usize,
        conditions,
        conditions_hold,
        centralizers_split,
        verdict,
    })
}

type Fingerprint = (usize, Vec<usize>, usize);

/// Isomorphism fingerprint: dimension, `dim X(U)` for every `U` in a list,
/// and `dim X^G`. The last entry separates projective summands of equal
/// dimension, on which every Brauer quotient vanishes.
fn fingerprint(m: &GModule, subgroups: &[PermGroup]) -> Result<Fingerprint> {
    let dims = subgroups
        .iter()
        .map(|u| brauer_dim(m, u))
        .collect::<Result<Vec<_>>>()?;
    Ok((m.dim(), dims, m.fixed_points(m.group())?.dim()))
}

/// Whether `s` (indecomposable) is a summand of `target`, by fingerprint,
/// or by split pairs when the fingerprint fails to separate the isomorphism
/// classes of summands of `target`. Returns `(is_summand, collision)`.
///
/// Summands sharing a fingerprint are compared with each other first: a
/// repeated isomorphism class is multiplicity, not a collision.
pub fn summand_check(
    s: &GModule,
    target: &GModule,
    probe: &[PermGroup],
    seed: u64,
) -> Result<(bool, bool)> {
    let parts = decompose(target, seed)?;
    let want = fingerprint(s, probe)?;
    let prints = parts
        .iter()
        .map(|t| fingerprint(t, probe))
        .collect::<Result<Vec<_>>>()?;
    let mut collision = false;
    for i in 0..parts.len() {
        if let Some(first) = (0..i).find(|&j| prints[j] == prints[i]) {
            // indecomposables dividing each other are isomorphic
            if split_pair(&parts[first], &parts[i], seed, 32)?.is_none() {
                collision = true;
                break;
            }
        }
    }
    if !collision {
        return Ok((prints.contains(&want), false));
    }
    for (t, fp) in parts.iter().zip(&prints) {
        if *fp == want && split_pair(s, t, seed, 32)?.is_some() {
            return Ok((true, true));
        }
    }
    Ok((false, true))
}

#[derive(Clone, Debug, Serialize)]
pub struct LemmaRow {
    pub lemma: &'static str,
    pub generators: Vec<String>,
    pub order: u64,
    /// `Sc(N_G(Q), N_P(Q))` divides `Res_{N_G(Q)} Sc(G, P)`.
    pub restriction_summand: bool,
    /// `Sc(N_G(Q), N_P(Q))` divides `Sc(G, P)(Q)`.
    pub brauer_summand: bool,
    pub collision: bool,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum MaximalDecomposableCheck {
    /// No subgroup with decomposable restricted Brauer quotient exists.
    Vacuous,
    Checked {
        order: u64,
        proper: bool,
        isomorphic: bool,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct LemmaReport {
    pub control_licensed: bool,
    pub rows: Vec<LemmaRow>,
    pub collisions: usize,
    pub maximal_decomposable: MaximalDecomposableCheck,
}

impl LemmaReport {
    pub fn all_pass(&self) -> bool {
        self.rows
            .iter()
            .all(|r| r.restriction_summand && r.brauer_summand)
    }
}

/// Summand properties of `Sc(G,P)` relative to `N_G(Q)`: for every `Q` under
/// control and saturation, and for every fully normalized `Q` regardless.
/// Also examines a maximal `Q` with decomposable restricted Brauer quotient,
/// if one exists.
pub fn lemma_checks(
    g: &PermGroup,
    p_subgroup: &PermGroup,
    field: &Arc<GField>,
    seed: u64,
) -> Result<LemmaReport> {
    let p = field.p();
    let hyp = hypotheses(g, p_subgroup, p)?;
    let fusion = build_fusion(g, p_subgroup, p)?;
    let sc = scott_module(g, p_subgroup, field, seed)?;
    let mut rows = Vec::new();
    let mut collisions = 0;
    for (i, q) in fusion.objects().iter().enumerate() {
        let mut lemmas = Vec::new();
        if hyp.hold() {
            lemmas.push("control");
        }
        if fusion.is_fully_normalized(i) {
            lemmas.push("fully_normalized");
        }
        if lemmas.is_empty() {
            continue;
        }
        let n = g.normalizer(q);
        let r = p_subgroup.normalizer(q);
        // every p-subgroup of N_G(Q) is conjugate into a Sylow subgroup
        let probe = subgroups_of_pgroup(&n.sylow(p), p)?;
        let local = scott_module(&n, &r, field, seed)?;
        let (res_ok, c1) = summand_check(&local, &sc.restriction(&n)?, &probe, seed)?;
        let bq = brauer_quotient(&sc, q)?.module;
        let (br_ok, c2) = if bq.is_zero() {
            (false, false)
        } else {
            summand_check(&local, &bq, &probe, seed)?
        };
        collisions += usize::from(c1) + usize::from(c2);
        for lemma in lemmas {
            rows.push(LemmaRow {
                lemma,
                generators: describe(q),
                order: q.order_u64(),
                restriction_summand: res_ok,
                brauer_summand: br_ok,
                collision: c1 || c2,
            });
        }
    }
    let maximal_decomposable = maximal_decomposable_check(g, p_subgroup, &sc, field, seed)?;
    Ok(LemmaReport {
        control_licensed: hyp.hold(),
        rows,
        collisions,
        maximal_decomposable,
    })
}

fn maximal_decomposable_check(
    g: &PermGroup,
    p_subgroup: &PermGroup,
    sc: &GModule,
    field: &Arc<GField>,
    seed: u64,
) -> Result<MaximalDecomposableCheck> {
    let subs = p_subgroups(p_subgroup, field.p())?;
    let (_, rows) = brute_force_on(sc, g, p_subgroup, &subs)?;
    let Some(idx) = (0..subs.len())
        .filter(|&i| rows[i].brute_indec == Some(Indec::Decomposable))
        .max_by_key(|&i| (subs[i].order_u64(), std::cmp::Reverse(i)))
    else {
        return Ok(MaximalDecomposableCheck::Vacuous);
    };
    let q = &subs[idx];
    let r = p_subgroup.normalizer(q);
    let rc = r.join(&g.centralizer(q));
    let mq = brauer_quotient(sc, q)?.module.restriction(&rc)?;
    let local = scott_module(&rc, &r, field, seed)?;
    let probe = subgroups_of_pgroup(&r, field.p())?;
    let isomorphic = mq.dim() == local.dim()
        && is_indecomposable(&mq, true)?
        && fingerprint(&mq, &probe)? == fingerprint(&local, &probe)?;
    Ok(MaximalDecomposableCheck::Checked {
        order: q.order_u64(),
        proper: q.order() < p_subgroup.order(),
        isomorphic,
    })
}
