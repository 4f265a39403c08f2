//! Job description, orchestration and the JSON report.

use std::path::PathBuf;
use std::sync::Arc;

use serde_json::{json, Value};

use scott_core::fusion::build_fusion;
use scott_core::gflinalg::{field_make, is_prime, GField};
use scott_core::permgroup::PermGroup;
use scott_core::verdict::{
    brute_force_brauer_indecomposable, corollary13_run, describe, hypotheses, lemma_checks,
    run_verdict, theorem11_criterion, theorem12_verdict, Hypotheses, SubgroupRow,
};
use scott_core::{Error, Result};

use crate::catalog::named_group;
use crate::text::parse_group_file;

pub const SCHEMA: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSource {
    File(PathBuf),
    Named(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PSource {
    Sylow,
    File(PathBuf),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Criteria,
    Brute,
    Both,
    Corollary13,
    Lemmas,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Criteria => "criteria",
            Mode::Brute => "brute",
            Mode::Both => "both",
            Mode::Corollary13 => "corollary13",
            Mode::Lemmas => "lemmas",
        }
    }
}

#[derive(Clone, Debug)]
pub struct JobSpec {
    pub group: GroupSource,
    pub prime: u32,
    pub p_subgroup: PSource,
    pub mode: Mode,
    /// `None` for automatic: the prime field.
    pub field_degree: Option<u32>,
    pub seed: u64,
}

/// Exit codes of a finished job.
pub mod exit {
    pub const OK: i32 = 0;
    pub const INPUT_ERROR: i32 = 1;
    pub const CHECK_FAILED: i32 = 2;
    pub const HYPOTHESES_UNMET: i32 = 3;
}

#[derive(Debug)]
pub struct Outcome {
    pub report: Value,
    pub exit_code: i32,
}

pub fn load_group(src: &GroupSource) -> Result<PermGroup> {
    match src {
        GroupSource::Named(name) => named_group(name),
        GroupSource::File(path) => Ok(parse_group_file(&std::fs::read_to_string(path)?)?.group),
    }
}

fn big(n: &num_bigint::BigUint) -> Value {
    match u64::try_from(n) {
        Ok(v) => json!(v),
        Err(_) => json!(n.to_string()),
    }
}

fn row_json(r: &SubgroupRow) -> Value {
    json!({
        "Q_order": r.order,
        "Q_gens": r.generators,
        "cond_a": r.cond_a,
        "cond_b": r.cond_b,
        "R_order": r.r_order,
        "L_order": r.l_order,
        "local_scott_dim": r.local_scott_dim,
        "res_indec": r.res_centralizer_indec,
        "brauer_dim": r.brauer_dim,
        "brute_indec": r.brute_indec,
    })
}

fn rows_json(rows: &[SubgroupRow]) -> Value {
    Value::Array(rows.iter().map(row_json).collect())
}

fn fusion_json(g: &PermGroup, p_subgroup: &PermGroup, p: u32, hyp: &Hypotheses) -> Result<Value> {
    let mut summary = build_fusion(g, p_subgroup, p)?.summary();
    summary.control = Some(hyp.control);
    summary.saturated = hyp.saturated;
    summary.control_witness = hyp
        .control_witness
        .as_ref()
        .map(|w| (describe(&w.subgroup).join(", "), w.element.to_string()));
    Ok(json!({
        "objects": summary.objects,
        "morphism_counts": summary.morphism_counts,
        "control": summary.control,
        "control_witness": summary.control_witness.map(|(q, g)| json!({"Q_gens": q, "g": g})),
        "saturated": summary.saturated.map_or(json!("not determined"), |s| json!(s)),
    }))
}

fn job_json(job: &JobSpec) -> Value {
    json!({
        "group": match &job.group {
            GroupSource::Named(n) => json!({"named": n}),
            GroupSource::File(p) => json!({"file": p.display().to_string()}),
        },
        "prime": job.prime,
        "psubgroup": match &job.p_subgroup {
            PSource::Sylow => json!("sylow"),
            PSource::File(p) => json!({"file": p.display().to_string()}),
        },
        "mode": job.mode.name(),
        "field_degree": job.field_degree.map_or(json!("auto"), |m| json!(m)),
        "seed": job.seed,
    })
}

/// Runs a job; errors are input errors (exit code 1).
pub fn run(job: &JobSpec) -> Result<Outcome> {
    let p = job.prime;
    if !is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    let field: Arc<GField> = field_make(p, job.field_degree.unwrap_or(1))?;
    let g = load_group(&job.group)?;
    let p_subgroup = match &job.p_subgroup {
        PSource::Sylow => g.sylow(p),
        PSource::File(path) => {
            let f = parse_group_file(&std::fs::read_to_string(path)?)?;
            if f.group.degree() != g.degree() || !f.group.is_subgroup_of(&g) {
                return Err(Error::NotContained("P is not a subgroup of G".into()));
            }
            if !f.group.is_p_group(p) {
                return Err(Error::NotPGroup(p));
            }
            f.group
        }
    };
    let mut report = json!({
        "schema": SCHEMA,
        "version": env!("CARGO_PKG_VERSION"),
        "job": job_json(job),
        "group": {"order": big(g.order()), "degree": g.degree()},
        "p": p,
        "field": {"p": p, "m": field.m()},
        "P": {"order": big(p_subgroup.order()), "gens": describe(&p_subgroup)},
        "seed": job.seed,
        "timings": null,
    });
    let obj = report.as_object_mut().expect("object");
    let exit_code;
    match job.mode {
        Mode::Corollary13 => {
            let run = corollary13_run(&g, &field, job.seed)?;
            let v = &run.verdict;
            let fine = v.consistent() && (!run.conditions_hold || v.brute_force_result);
            exit_code = if !fine {
                exit::CHECK_FAILED
            } else if !run.conditions_hold {
                exit::HYPOTHESES_UNMET
            } else {
                exit::OK
            };
            obj.insert(
                "corollary13".into(),
                json!({
                    "product_order": run.product_order,
                    "permutation_module_dim": run.module_dim,
                    "scott_module_dim": v.rows.iter().find(|r| r.order == 1).and_then(|r| r.brauer_dim),
                    "conditions_hold": run.conditions_hold,
                    "centralizers_split": run.centralizers_split,
                    "conditions": rows_json(&run.conditions),
                }),
            );
            insert_verdict(obj, v);
        }
        Mode::Lemmas => {
            let hyp = hypotheses(&g, &p_subgroup, p)?;
            obj.insert("fusion".into(), fusion_json(&g, &p_subgroup, p, &hyp)?);
            let rep = lemma_checks(&g, &p_subgroup, &field, job.seed)?;
            exit_code = if !rep.all_pass() {
                exit::CHECK_FAILED
            } else if !rep.control_licensed {
                exit::HYPOTHESES_UNMET
            } else {
                exit::OK
            };
            obj.insert("lemmas".into(), serde_json::to_value(&rep)?);
        }
        Mode::Criteria => {
            let hyp = hypotheses(&g, &p_subgroup, p)?;
            obj.insert("fusion".into(), fusion_json(&g, &p_subgroup, p, &hyp)?);
            let (applicable, rows) = theorem12_verdict(&g, &p_subgroup, p)?;
            obj.insert("thm12".into(), json!({"applicable": applicable, "rows": rows_json(&rows)}));
            if hyp.hold() {
                let (holds, rows) = theorem11_criterion(&g, &p_subgroup, &field, job.seed)?;
                obj.insert(
                    "thm11".into(),
                    json!({"licensed": true, "holds": holds, "rows": rows_json(&rows)}),
                );
                exit_code = if applicable && !holds {
                    exit::CHECK_FAILED
                } else {
                    exit::OK
                };
            } else {
                obj.insert("thm11".into(), json!({"licensed": false, "holds": null, "rows": []}));
                exit_code = exit::HYPOTHESES_UNMET;
            }
        }
        Mode::Brute => {
            let hyp = hypotheses(&g, &p_subgroup, p)?;
            obj.insert("fusion".into(), fusion_json(&g, &p_subgroup, p, &hyp)?);
            let (result, rows) = brute_force_brauer_indecomposable(&g, &p_subgroup, &field, job.seed)?;
            obj.insert(
                "brute".into(),
                json!({"result": result, "licensed": hyp.hold(), "rows": rows_json(&rows)}),
            );
            exit_code = exit::OK;
        }
        Mode::Both => {
            let v = run_verdict(&g, &p_subgroup, &field, job.seed)?;
            obj.insert("fusion".into(), fusion_json(&g, &p_subgroup, p, &v.hypotheses)?);
            exit_code = if !v.consistent() {
                exit::CHECK_FAILED
            } else if !v.hypotheses.hold() {
                exit::HYPOTHESES_UNMET
            } else {
                exit::OK
            };
            insert_verdict(obj, &v);
        }
    }
    obj.insert("exit_code".into(), json!(exit_code));
    Ok(Outcome { report, exit_code })
}

fn insert_verdict(obj: &mut serde_json::Map<String, Value>, v: &scott_core::verdict::Verdict) {
    let licensed = v.hypotheses.hold();
    obj.insert(
        "hypotheses".into(),
        json!({
            "control": v.hypotheses.control,
            "saturated": v.hypotheses.saturated.map_or(json!("not determined"), |s| json!(s)),
        }),
    );
    obj.insert("thm12".into(), json!({"applicable": v.thm12_applicable, "rows": rows_json(&v.rows)}));
    obj.insert(
        "thm11".into(),
        json!({"licensed": licensed, "holds": v.thm11_criterion_holds, "rows": rows_json(&v.rows)}),
    );
    obj.insert(
        "brute".into(),
        json!({
            "result": v.brute_force_result,
            "label": if licensed { "theorem check" } else { "unlicensed observation" },
            "rows": rows_json(&v.rows),
        }),
    );
}
