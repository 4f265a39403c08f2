//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use scott_cli::catalog::{find_involutory_extension, groups_of_order, named_group};
use scott_cli::job::{self, GroupSource, JobSpec, Mode, PSource};
use scott_core::fusion::{confirm_witness, is_controlled_by_normalizer};
use scott_core::gflinalg::{field_make, solve_commutant, GField};
use scott_core::modrep::{
    brauer_quotient_with, coset_gset, decompose, perm_module, BrauerMethod, GModule, OrbitalAlgebra,
};
use scott_core::permgroup::{diagonal_subgroup, product_group, subgroups_of_pgroup, Perm, PermGroup};
use scott_core::verdict::{corollary13_run, lemma_checks, run_verdict, Verdict};

const SEED: u64 = 20_240_601;
const INSTANCE_LIMIT: Duration = Duration::from_secs(300);
const COROLLARY_LIMIT: Duration = Duration::from_secs(1800);

struct Instance {
    name: String,
    group: PermGroup,
    p_subgroup: PermGroup,
    p: u32,
}

impl Instance {
    fn new(name: impl Into<String>, group: PermGroup, p: u32) -> Self {
        let p_subgroup = group.sylow(p);
        Instance { name: name.into(), group, p_subgroup, p }
    }

    fn field(&self, m: u32) -> Arc<GField> {
        field_make(self.p, m).unwrap()
    }
}

struct Outcome {
    instance: Instance,
    verdict: Verdict,
    elapsed: Duration,
}

struct Line {
    ok: bool,
    detail: String,
}

fn line(ok: bool, detail: impl Into<String>) -> Line {
    Line { ok, detail: detail.into() }
}

fn product_instance(name: &str, g: &PermGroup, p: u32) -> Instance {
    let sylow = g.sylow(p);
    let h = g.normalizer(&sylow);
    let (gh, emb) = product_group(g, &h);
    let delta = diagonal_subgroup(&sylow, g, &h, &emb).unwrap();
    Instance { name: format!("{name} x N(P), diagonal P"), group: gh, p_subgroup: delta, p }
}

fn order54() -> PermGroup {
    let m27 = named_group("extraspecial:3:minus").unwrap();
    find_involutory_extension(&m27).expect("M27 has an involutory extension")
}

fn plain_suite() -> Vec<Instance> {
    let mut suite = vec![Instance::new("alternating:4", named_group("alternating:4").unwrap(), 3)];
    for (order, p) in [(8usize, 2u32), (16, 2), (27, 3)] {
        for (name, g) in groups_of_order(order).unwrap() {
            suite.push(Instance::new(name, g, p));
        }
    }
    let ext = find_involutory_extension(&named_group("modular:3:2").unwrap()).unwrap();
    suite.push(Instance::new("modular:3:2 in its involutory extension", ext, 3));
    suite.push(Instance::new("sl2:3", named_group("sl2:3").unwrap(), 3));
    // non-Sylow subgroups of S4 wr C2 with controlled, saturated fusion: two
    // Brauer indecomposable despite the sufficient conditions failing, two not
    let wreath = group(8, &["(1 2 3 4)", "(1 2)", "(1 5)(2 6)(3 7)(4 8)"]);
    for gens in [
        ["(6 8)", "(5 7)", "(2 4)(5 6)(7 8)"],
        ["(6 8)", "(5 7)", "(1 2)(3 4)(5 6)(7 8)"],
        ["(5 7)(6 8)", "(5 6 7 8)", "(2 4)(6 8)"],
        ["(5 7)(6 8)", "(5 6 7 8)", "(1 2)(3 4)(6 8)"],
    ] {
        suite.push(Instance {
            name: format!("S4 wr C2, P = <{}>", gens.join(", ")),
            group: wreath.clone(),
            p_subgroup: group(8, &gens),
            p: 2,
        });
    }
    suite
}

fn group(degree: usize, gens: &[&str]) -> PermGroup {
    PermGroup::new(degree, gens.iter().map(|s| Perm::parse(degree, s).unwrap()).collect()).unwrap()
}

fn product_suite() -> Vec<Instance> {
    vec![
        product_instance("S3", &named_group("symmetric:3").unwrap(), 3),
        product_instance("alternating:4", &named_group("alternating:4").unwrap(), 3),
        product_instance("sl2:3", &named_group("sl2:3").unwrap(), 3),
    ]
}

fn run_all(instances: Vec<Instance>) -> Vec<Outcome> {
    instances
        .into_iter()
        .map(|instance| {
            let start = Instant::now();
            let verdict =
                run_verdict(&instance.group, &instance.p_subgroup, &instance.field(1), SEED).unwrap();
            Outcome { instance, verdict, elapsed: start.elapsed() }
        })
        .collect()
}

fn criterion1(outcomes: &[Outcome]) -> Line {
    let mut bad = Vec::new();
    for o in outcomes {
        let v = &o.verdict;
        if !v.hypotheses.hold() {
            bad.push(format!("{}: hypotheses fail", o.instance.name));
        } else if v.thm11_criterion_holds != Some(v.brute_force_result) {
            bad.push(format!("{}: criterion {:?} vs brute {}", o.instance.name, v.thm11_criterion_holds, v.brute_force_result));
        } else if o.elapsed > INSTANCE_LIMIT {
            bad.push(format!("{}: {:?}", o.instance.name, o.elapsed));
        }
    }
    let slowest = outcomes.iter().map(|o| o.elapsed).max().unwrap_or_default();
    let negative = outcomes.iter().filter(|o| !o.verdict.brute_force_result).count();
    line(
        bad.is_empty() && outcomes.len() >= 8,
        format!(
            "{} instances ({negative} not Brauer indecomposable), slowest {:.1}s; {}",
            outcomes.len(),
            slowest.as_secs_f64(),
            summary(&bad)
        ),
    )
}

fn criterion2(outcomes: &[Outcome]) -> Line {
    let applicable: Vec<&Outcome> = outcomes.iter().filter(|o| o.verdict.thm12_applicable).collect();
    let bad: Vec<String> = applicable
        .iter()
        .filter(|o| !o.verdict.brute_force_result)
        .map(|o| o.instance.name.clone())
        .collect();
    line(bad.is_empty(), format!("{} applicable instances; {}", applicable.len(), summary(&bad)))
}

fn criterion3() -> (Line, Option<Outcome>) {
    let g = order54();
    let start = Instant::now();
    let run = corollary13_run(&g, &field_make(3, 1).unwrap(), SEED).unwrap();
    let elapsed = start.elapsed();
    let ok = run.conditions_hold
        && run.centralizers_split
        && run.module_dim == 108
        && run.verdict.brute_force_result
        && run.verdict.consistent()
        && elapsed < COROLLARY_LIMIT;
    let detail = format!(
        "|G| = {}, |G x H| = {}, permutation module dim {}, Scott module dim {}, conditions {}, brute {}, {:.1}s",
        run.group_order,
        run.product_order,
        run.module_dim,
        scott_dim(&run.verdict),
        run.conditions_hold,
        run.verdict.brute_force_result,
        elapsed.as_secs_f64()
    );
    let outcome = Outcome {
        instance: product_instance("order-54 extension of M27", &g, 3),
        verdict: run.verdict,
        elapsed,
    };
    (line(ok, detail), Some(outcome))
}

fn scott_dim(v: &Verdict) -> usize {
    v.rows.iter().find(|r| r.order == 1).and_then(|r| r.brauer_dim).unwrap_or(0)
}

fn criterion4(outcomes: &[Outcome]) -> Line {
    let mut bad = Vec::new();
    let mut collisions = 0;
    let mut rows = 0;
    for o in outcomes.iter().filter(|o| o.verdict.hypotheses.hold()) {
        let i = &o.instance;
        let rep = lemma_checks(&i.group, &i.p_subgroup, &i.field(1), SEED).unwrap();
        rows += rep.rows.len();
        collisions += rep.collisions;
        if !rep.all_pass() {
            bad.push(i.name.clone());
        }
    }
    line(
        bad.is_empty() && collisions == 0,
        format!("{rows} subgroup checks, {collisions} fingerprint collisions; {}", summary(&bad)),
    )
}

/// Permutation modules `k[G/H]` for the suite, `H` running over subgroups of `P`.
fn suite_modules(instances: &[&Instance], max_order: u64) -> Vec<(String, GModule)> {
    let mut out = Vec::new();
    for i in instances.iter().filter(|i| i.group.order_u64() <= max_order) {
        for h in subgroups_of_pgroup(&i.p_subgroup, i.p).unwrap() {
            if i.group.order_u64() / h.order_u64() > 216 {
                continue;
            }
            let (x, _) = coset_gset(&i.group, &h).unwrap();
            out.push((format!("{} / order {}", i.name, h.order_u64()), perm_module(&x, &i.field(1))));
        }
    }
    out
}

fn criterion5(instances: &[&Instance]) -> Line {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let candidates: Vec<&&Instance> = instances.iter().filter(|i| i.group.order_u64() <= 2000).collect();
    let mut mismatches = Vec::new();
    let mut summands = 0;
    for _ in 0..100 {
        let inst = candidates[rng.gen_range(0..candidates.len())];
        let subs = subgroups_of_pgroup(&inst.p_subgroup, inst.p).unwrap();
        let h = &subs[rng.gen_range(0..subs.len())];
        let q = &subs[rng.gen_range(0..subs.len())];
        let (x, _) = coset_gset(&inst.group, h).unwrap();
        let mut m = perm_module(&x, &inst.field(1));
        if rng.gen_bool(0.5) {
            let parts = decompose(&m, rng.gen()).unwrap();
            m = parts[rng.gen_range(0..parts.len())].clone();
            summands += 1;
        }
        let a = brauer_quotient_with(&m, q, BrauerMethod::FixedBasis).unwrap().module.dim();
        let b = brauer_quotient_with(&m, q, BrauerMethod::QuotientFormula).unwrap().module.dim();
        if a != b {
            mismatches.push(format!("{} H={} Q={}: {a} vs {b}", inst.name, h.order_u64(), q.order_u64()));
        }
    }
    line(mismatches.is_empty(), format!("100 pairs ({summands} on summands); {}", summary(&mismatches)))
}

/// `|H\G/H|` from explicit coset sets.
fn double_cosets(g: &PermGroup, h: &PermGroup) -> usize {
    let hs = h.elements();
    let mut cosets: BTreeMap<Perm, usize> = BTreeMap::new();
    let mut reps = Vec::new();
    for x in g.elements() {
        let key = hs.iter().map(|y| x.compose(y)).min().unwrap();
        if !cosets.contains_key(&key) {
            cosets.insert(key, reps.len());
            reps.push(x);
        }
    }
    let mut seen = vec![false; reps.len()];
    let mut orbits = 0;
    for start in 0..reps.len() {
        if seen[start] {
            continue;
        }
        orbits += 1;
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(c) = stack.pop() {
            for y in &hs {
                let z = y.compose(&reps[c]);
                let key = hs.iter().map(|w| z.compose(w)).min().unwrap();
                let j = cosets[&key];
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
    }
    orbits
}

fn criterion6(instances: &[&Instance]) -> Line {
    let mut bad = Vec::new();
    let (mut count, mut commutants) = (0, 0);
    for i in instances.iter().filter(|i| i.group.order_u64() <= 2000) {
        for h in subgroups_of_pgroup(&i.p_subgroup, i.p).unwrap() {
            let (x, _) = coset_gset(&i.group, &h).unwrap();
            let end = OrbitalAlgebra::new(&x, &i.field(1)).unwrap().dim();
            let expect = double_cosets(&i.group, &h);
            count += 1;
            if end != expect {
                bad.push(format!("{} H={}: {end} vs {expect}", i.name, h.order_u64()));
            }
            // the commutant of the action matrices, independent of orbitals
            if x.size() <= 64 {
                let m = perm_module(&x, &i.field(1));
                let c = solve_commutant(m.field(), m.dim(), m.action()).len();
                commutants += 1;
                if c != expect {
                    bad.push(format!("{} H={}: commutant {c} vs {expect}", i.name, h.order_u64()));
                }
            }
        }
    }
    line(bad.is_empty(), format!("{count} modules ({commutants} also by commutant); {}", summary(&bad)))
}

fn criterion7(instances: &[&Instance]) -> Line {
    let mut bad = Vec::new();
    let modules = suite_modules(instances, u64::MAX);
    for (name, m) in &modules {
        let shapes: BTreeSet<Vec<usize>> = (0..5)
            .map(|s| {
                let mut dims: Vec<usize> =
                    decompose(m, SEED + s).unwrap().iter().map(GModule::dim).collect();
                dims.sort_unstable();
                dims
            })
            .collect();
        if shapes.len() != 1 {
            bad.push(format!("{name}: {shapes:?}"));
        }
    }
    line(bad.is_empty(), format!("{} modules x 5 seeds; {}", modules.len(), summary(&bad)))
}

fn criterion8(outcomes: &[Outcome]) -> Line {
    let mut bad = Vec::new();
    for o in outcomes {
        let i = &o.instance;
        let v2 = run_verdict(&i.group, &i.p_subgroup, &i.field(2), SEED).unwrap();
        let v1 = &o.verdict;
        let same = v1.thm11_criterion_holds == v2.thm11_criterion_holds
            && v1.brute_force_result == v2.brute_force_result
            && v1.rows.iter().zip(&v2.rows).all(|(a, b)| {
                a.res_centralizer_indec == b.res_centralizer_indec
                    && a.brute_indec == b.brute_indec
                    && a.brauer_dim == b.brauer_dim
            });
        if !same {
            bad.push(i.name.clone());
        }
    }
    line(bad.is_empty(), format!("{} instances over GF(p) and GF(p^2); {}", outcomes.len(), summary(&bad)))
}

fn criterion9() -> Line {
    let s4 = named_group("symmetric:4").unwrap();
    let p2 = s4.sylow(2);
    let (control, witness) = is_controlled_by_normalizer(&s4, &p2, 2).unwrap();
    let confirmed = witness.as_ref().is_some_and(|w| confirm_witness(&s4, &p2, w));
    let outcome = job::run(&JobSpec {
        group: GroupSource::Named("symmetric:4".into()),
        prime: 2,
        p_subgroup: PSource::Sylow,
        mode: Mode::Criteria,
        field_degree: None,
        seed: SEED,
    })
    .unwrap();
    let reported = &outcome.report["fusion"];
    let ok = !control
        && confirmed
        && outcome.exit_code == job::exit::HYPOTHESES_UNMET
        && reported["control"] == false
        && !reported["control_witness"].is_null();
    let detail = match &witness {
        Some(w) => format!(
            "Q = <{}>, g = {}, confirmed {confirmed}, exit {}",
            w.subgroup.generators().iter().map(ToString::to_string).collect::<Vec<_>>().join(", "),
            w.element,
            outcome.exit_code
        ),
        None => "no witness".into(),
    };
    line(ok, detail)
}

fn summary(bad: &[String]) -> String {
    if bad.is_empty() {
        "no failures".into()
    } else {
        format!("failures: {}", bad.join("; "))
    }
}

fn main() {
    let start = Instant::now();
    let mut outcomes = run_all(plain_suite());
    outcomes.extend(run_all(product_suite()));
    let (c3, big) = criterion3();
    outcomes.extend(big);
    let instances: Vec<&Instance> = outcomes.iter().map(|o| &o.instance).collect();

    type Check<'a> = Box<dyn Fn() -> Line + 'a>;
    let checks: Vec<(&str, &str, Check)> = vec![
        ("1", "criterion equals brute force", Box::new(|| criterion1(&outcomes))),
        ("2", "sufficient conditions are sound", Box::new(|| criterion2(&outcomes))),
        ("4", "summand property", Box::new(|| criterion4(&outcomes))),
        ("5", "Brauer construction cross-check", Box::new(|| criterion5(&instances))),
        ("6", "End dimension = double cosets", Box::new(|| criterion6(&instances))),
        ("7", "Krull-Schmidt stability", Box::new(|| criterion7(&instances))),
        ("8", "field robustness", Box::new(|| criterion8(&outcomes))),
        ("9", "negative control detection", Box::new(criterion9)),
    ];
    let mut lines = vec![("3", "diagonal Scott module at order 54", c3)];
    for (n, title, check) in checks {
        let t = Instant::now();
        let mut l = check();
        l.detail += &format!(" [{:.1}s]", t.elapsed().as_secs_f64());
        lines.push((n, title, l));
    }
    lines.sort_by_key(|(n, _, _)| *n);
    let mut failed = 0;
    for (n, title, l) in &lines {
        let tag = if l.ok { "PASS" } else { "FAIL" };
        println!("criterion {n} [{tag}] {title}: {}", l.detail);
        failed += usize::from(!l.ok);
    }
    println!("acceptance: {} of {} criteria pass ({:.1}s)", lines.len() - failed, lines.len(), start.elapsed().as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}
