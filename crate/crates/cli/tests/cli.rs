use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

struct Scratch(PathBuf);

impl Scratch {
    fn new(tag: &str) -> Self {
        let dir = std::env::temp_dir().join(format!("scott-cli-{tag}-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        Scratch(dir)
    }

    fn file(&self, name: &str, text: &str) -> String {
        let path = self.0.join(name);
        std::fs::write(&path, text).unwrap();
        path.display().to_string()
    }

    fn path(&self, name: &str) -> String {
        self.0.join(name).display().to_string()
    }
}

impl Drop for Scratch {
    fn drop(&mut self) {
        let _ = std::fs::remove_dir_all(&self.0);
    }
}

fn scott(args: &[&str]) -> (i32, Option<Value>) {
    let out = args
        .iter()
        .position(|a| *a == "--out")
        .map(|i| args[i + 1].to_string());
    let status = Command::new(env!("CARGO_BIN_EXE_scott"))
        .arg("check")
        .args(args)
        .status()
        .unwrap();
    let report = out
        .and_then(|p| std::fs::read_to_string(p).ok())
        .map(|t| serde_json::from_str(&t).unwrap());
    (status.code().unwrap(), report)
}

#[test]
fn both_on_a4() {
    let s = Scratch::new("a4");
    let out = s.path("r.json");
    let (code, report) = scott(&["--named", "alternating:4", "--prime", "3", "--mode", "both", "--out", &out]);
    let r = report.unwrap();
    assert_eq!(code, 0);
    assert_eq!(r["schema"], 1);
    assert_eq!(r["group"]["order"], 12);
    assert_eq!(r["P"]["order"], 3);
    assert_eq!(r["brute"]["result"], true);
    assert_eq!(r["thm11"]["holds"], true);
    assert_eq!(r["thm12"]["applicable"], true);
    assert_eq!(r["fusion"]["control"], true);
    assert!(r["timings"].is_null());
    let row = &r["brute"]["rows"][0];
    for key in ["Q_order", "Q_gens", "cond_a", "cond_b", "R_order", "L_order", "local_scott_dim", "res_indec", "brauer_dim", "brute_indec"] {
        assert!(row.get(key).is_some(), "row lacks {key}");
    }
}

#[test]
fn criteria_on_s4_reports_failed_control() {
    let s = Scratch::new("s4");
    let out = s.path("r.json");
    let (code, report) = scott(&["--named", "symmetric:4", "--prime", "2", "--mode", "criteria", "--out", &out]);
    let r = report.unwrap();
    assert_eq!(code, 3);
    assert_eq!(r["fusion"]["control"], false);
    assert!(r["fusion"]["control_witness"]["g"].is_string());
    assert_eq!(r["thm11"]["licensed"], false);
}

#[test]
fn brute_on_trivial_group() {
    let s = Scratch::new("trivial");
    let g = s.file("g.txt", "# the trivial group\ndegree 3\n");
    let out = s.path("r.json");
    let (code, report) = scott(&["--group", &g, "--prime", "2", "--mode", "brute", "--out", &out]);
    let r = report.unwrap();
    assert_eq!(code, 0);
    assert_eq!(r["brute"]["result"], true);
    assert_eq!(r["brute"]["rows"].as_array().unwrap().len(), 1);
}

#[test]
fn explicit_subgroup_and_field() {
    let s = Scratch::new("sub");
    let p = s.file("p.txt", "parent symmetric:4\ndegree 4\ngen (1 2)(3 4)\n");
    let out = s.path("r.json");
    let (code, report) = scott(&[
        "--named", "symmetric:4", "--prime", "2", "--psubgroup", &p, "--mode", "both",
        "--field-degree", "2", "--out", &out,
    ]);
    let r = report.unwrap();
    assert_eq!(code, 0);
    assert_eq!(r["P"]["order"], 2);
    assert_eq!(r["field"]["m"], 2);
    assert_eq!(r["brute"]["result"], true);
}

#[test]
fn corollary_and_lemma_modes() {
    let s = Scratch::new("modes");
    let out = s.path("c.json");
    let (code, report) = scott(&["--named", "sl2:3", "--prime", "3", "--mode", "corollary13", "--out", &out]);
    let r = report.unwrap();
    assert_eq!(code, 0);
    assert_eq!(r["corollary13"]["product_order"], 144);
    assert_eq!(r["corollary13"]["conditions_hold"], true);
    assert_eq!(r["brute"]["result"], true);

    let out = s.path("l.json");
    let (code, report) = scott(&["--named", "dihedral:8", "--prime", "2", "--mode", "lemmas", "--out", &out]);
    assert_eq!(code, 0);
    assert_eq!(report.unwrap()["lemmas"]["control_licensed"], true);
}

#[test]
fn reports_are_reproducible() {
    let s = Scratch::new("repro");
    let (a, b) = (s.path("a.json"), s.path("b.json"));
    for out in [&a, &b] {
        let (code, _) = scott(&["--named", "modular:3:2", "--prime", "3", "--mode", "both", "--seed", "7", "--out", out]);
        assert_eq!(code, 0);
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn input_errors_exit_with_one() {
    let s = Scratch::new("errors");
    let out = s.path("r.json");
    let bad_subgroup = s.file("p.txt", "degree 4\ngen (1 2 3)\n");
    let bad_group = s.file("g.txt", "degree 4\ngen (1 5)\n");
    for args in [
        vec!["--named", "symmetric:4", "--prime", "4", "--mode", "both", "--out", &out],
        vec!["--named", "nonsense:4", "--prime", "2", "--mode", "both", "--out", &out],
        vec!["--named", "symmetric:4", "--prime", "2", "--psubgroup", &bad_subgroup, "--mode", "both", "--out", &out],
        vec!["--group", &bad_group, "--prime", "2", "--mode", "both", "--out", &out],
        vec!["--named", "symmetric:4", "--prime", "2", "--mode", "both", "--field-degree", "zero", "--out", &out],
    ] {
        assert_eq!(scott(&args).0, 1, "{args:?}");
    }
    assert!(!std::path::Path::new(&out).exists());
}
