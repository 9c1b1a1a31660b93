use std::process::{Command, Output};

fn qsf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsf")).args(args).output().expect("qsf runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn partitions_of_five() {
    let o = qsf(&["partitions", "--n", "5"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "7");
}

#[test]
fn partition_variants() {
    let o = qsf(&["partitions", "--n", "10", "--variant", "distinct"]);
    assert_eq!(stdout(&o).trim(), "10");
    let o = qsf(&["partitions", "--n", "10", "--variant", "odd"]);
    assert_eq!(stdout(&o).trim(), "10");
    let o = qsf(&["partitions", "--n", "6", "--variant", "max:2"]);
    assert_eq!(stdout(&o).trim(), "4");
    assert_eq!(qsf(&["partitions", "--n", "6", "--variant", "prime"]).status.code(), Some(2));
}

#[test]
fn saalschutz_suite_exits_zero() {
    let o = qsf(&["suite", "run", "--filter", "SAALSCHUTZ", "--seed", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let cases = v["cases"].as_array().unwrap();
    assert_eq!(cases.len(), 20);
    assert_eq!(v["summary"]["pass"], 20);
    for c in cases {
        for key in ["id", "paper_eq", "params", "lhs", "rhs", "rel_err", "tol", "status", "note"] {
            assert!(c.get(key).is_some(), "missing {key}");
        }
        assert_eq!(c["lhs"].as_array().unwrap().len(), 2);
    }
}

#[test]
fn q_gamma_at_one() {
    let o = qsf(&["eval", "qgamma", "--z", "1", "--q", "0.5"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "1");
}

#[test]
fn suite_json_is_deterministic() {
    let dir = std::env::temp_dir();
    let a = dir.join(format!("qsf-det-a-{}.json", std::process::id()));
    let b = dir.join(format!("qsf-det-b-{}.json", std::process::id()));
    for p in [&a, &b] {
        let o = qsf(&["suite", "run", "--filter", "transformation", "--seed", "3", "--json", p.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    }
    let (x, y) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    std::fs::remove_file(&a).ok();
    std::fs::remove_file(&b).ok();
    assert_eq!(x, y);
}

#[test]
fn seeds_change_points() {
    let a = qsf(&["suite", "run", "--filter", "BIN-THM", "--seed", "1", "--points", "2"]);
    let b = qsf(&["suite", "run", "--filter", "BIN-THM", "--seed", "2", "--points", "2"]);
    assert_ne!(a.stdout, b.stdout);
}

#[test]
fn usage_and_domain_errors_exit_two() {
    assert_eq!(qsf(&["eval", "qgamma", "--z", "1"]).status.code(), Some(2));
    assert_eq!(qsf(&["eval", "nosuch"]).status.code(), Some(2));
    assert_eq!(qsf(&["suite", "run", "--filter", "NO-SUCH-CASE"]).status.code(), Some(2));
    assert_eq!(qsf(&["rr", "--which", "3", "--order", "5"]).status.code(), Some(2));
    assert_eq!(qsf(&["ct", "--rank", "2", "--k", "9"]).status.code(), Some(2));
    assert_eq!(qsf(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn max_terms_env_is_honoured() {
    // 1phi0 at z near 1 needs far more than four terms
    let o = Command::new(env!("CARGO_BIN_EXE_qsf"))
        .args(["eval", "phi", "--a", "0.5", "--q", "0.9", "--z", "0.99"])
        .env("QSF_MAX_TERMS", "4")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    let bad = Command::new(env!("CARGO_BIN_EXE_qsf")).args(["partitions", "--n", "3"]).env("QSF_MAX_TERMS", "x").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn rogers_ramanujan_table() {
    let o = qsf(&["rr", "--which", "2", "--order", "12"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("sum     1 0 1 1 1 1 2 2 3 3 4 4 6"), "{out}");
    assert!(out.contains("equal through q^12"));
}

#[test]
fn constant_term_a1() {
    // k = 1, rank 1: [2 choose 1]_q = 1 + q
    let o = qsf(&["ct", "--rank", "1", "--k", "1"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("constant term 1 1"));
}

#[test]
fn macdonald_two_variables() {
    // P_(1,1) = m_(1,1) = e_2
    let o = qsf(&["macdonald", "--lambda", "1,1", "--n", "2", "--q", "1/2", "--t", "1/3"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("m_(1,1)  1"), "{out}");
    let o = qsf(&["macdonald", "--lambda", "2", "--n", "2", "--q", "1/2", "--t", "1/3", "--check"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(qsf(&["macdonald", "--lambda", "2", "--n", "2", "--q", "0.5", "--t", "1/3"]).status.code(), Some(2));
}

#[test]
fn gustafson_one_variable() {
    let o = qsf(&["gustafson", "--n", "1", "--grid", "128"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("GUSTAFSON-AW"));
}
