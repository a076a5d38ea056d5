use std::process::{Command, Output};

use affvoa::classifier::{canonical_family, closed_form_mu, Variant};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_affvoa")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let o = run(&a);
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(&o)))
}

fn displays(v: &Value) -> Vec<String> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|f| f["display"].as_str().unwrap().to_string())
        .collect()
}

#[test]
fn verify_examples() {
    let o = run(&["verify", "--type", "D", "--rank", "4", "--n", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("singular at k = -2"));

    let o = run(&["verify", "--type", "B", "--rank", "3", "--b-vector"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("singular at k = -3/2"));

    let o = run(&["verify", "--type", "D", "--rank", "4", "--state", "E(+1,-2)(-1)|0>"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("no singular level"));
}

#[test]
fn verify_expected_level() {
    let ok = run(&["verify", "--rank", "5", "--n", "2", "--expect-level", "-2"]);
    assert_eq!(ok.status.code(), Some(0));
    let bad = run(&["verify", "--rank", "5", "--n", "2", "--expect-level", "-3"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("NOT confirmed"));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["verify", "--type", "X"][..],
        &["verify", "--type", "D", "--rank", "2"],
        &["classify", "--rank", "5", "--ideal", "triality"],
        &["verify", "--b-vector"],
        &["verify", "--state", "E(+9,-2)(-1)|0>"],
        &["search", "--ideal", "v"],
        &["search", "--level", "1/0"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn classify_d4_single_ideal() {
    let v = json(&["classify", "--type", "D", "--rank", "4", "--ideal", "v"]);
    assert_eq!(v["schema"], 1);
    let c = &v["classification"];
    assert_eq!(c["residual_check"], true);
    let mut got = displays(&c["families"]);
    got.sort();
    let mut want = vec![
        "tω_3",
        "tω_4",
        "(-2-t)ω_1 + tω_3",
        "(-2-t)ω_1 + tω_4",
        "(-1-t)ω_2 + tω_3",
        "(-1-t)ω_2 + tω_4",
        "tω_1 + (-1-t)ω_2 + tω_3",
        "tω_1 + (-1-t)ω_2 + tω_4",
    ];
    want.sort();
    assert_eq!(got, want);
    for f in c["ordinary"].as_array().unwrap() {
        assert_eq!(f["ordinary_constraint"], "t in Z>=0");
    }
    assert_eq!(c["ordinary"].as_array().unwrap().len(), 2);
}

#[test]
fn classify_d4_triality() {
    let v = json(&["classify", "--type", "D", "--rank", "4", "--ideal", "triality"]);
    let c = &v["classification"];
    let mut got = displays(&c["families"]);
    got.sort();
    let mut want = vec!["0", "-2ω_1", "-2ω_3", "-2ω_4", "-ω_2"];
    want.sort();
    assert_eq!(got, want);
    assert_eq!(displays(&c["ordinary"]), ["0"]);
    assert_eq!(c["ordinary"][0]["ordinary_constraint"], "none");
}

#[test]
fn classify_d5_matches_closed_form() {
    let v = json(&["classify", "--type", "D", "--rank", "5"]);
    let mut got = displays(&v["classification"]["families"]);
    got.sort();
    let mut want = Vec::new();
    for mask in 0..8usize {
        let s: Vec<usize> = (1..=3).filter(|i| mask >> (i - 1) & 1 == 1).collect();
        for var in [Variant::OmegaLMinus1, Variant::OmegaL] {
            want.push(canonical_family(&closed_form_mu(5, &s, var).unwrap()).to_string());
        }
    }
    want.sort();
    assert_eq!(got, want);
}

#[test]
fn search_examples() {
    let o = run(&["search", "--type", "D", "--rank", "4", "--level", "-2", "--ideal", "v", "--max-degree", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("weight 2ω_3: 1 singular"));
    assert!(s.contains("weight 2ω_4: 1 singular"));
    assert!(!s.contains("vacuum only"));

    let v = json(&["search", "--level", "-2", "--max-degree", "0"]);
    assert_eq!(v["vacuum_only"], true);

    // -2 is not a singular level of v_1 on D5
    let o = run(&["search", "--rank", "5", "--level", "-2", "--max-degree", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn zhu_output() {
    let v = json(&["zhu", "--rank", "4"]);
    let g = &v["generators"][0];
    assert_eq!(g["zhu_image"], "E(+1,-2) E(+1,+2) + E(+1,-3) E(+1,+3) + E(+1,-4) E(+1,+4)");
    assert_eq!(g["module_dim"], 35);
    assert_eq!(g["zero_weight_dim"], 3);
    assert_eq!(v["level"], "-2");
}

#[test]
fn cold_and_warm_cache_agree_byte_for_byte() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    for cmd in ["report", "classify"] {
        let base = [cmd, "--rank", "4", "--ideal", "triality", "--format", "json"];
        let plain = run(&base);
        let mut with_cache = base.to_vec();
        with_cache.extend(["--cache-dir", cache]);
        let cold = run(&with_cache);
        let warm = run(&with_cache);
        assert_eq!(cold.status.code(), Some(0));
        assert_eq!(cold.stdout, warm.stdout);
        assert_eq!(cold.stdout, plain.stdout);
    }
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}
