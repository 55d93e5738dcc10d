use serde_json::{json, Value};
use sextic_core::families::MarkedSextic;
use std::path::PathBuf;
use std::process::{Command, Output};

fn sextic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sextic")).args(args).output().expect("run sextic")
}

fn report(args: &[&str]) -> (i32, Value) {
    let mut a = args.to_vec();
    a.push("--json");
    let o = sextic(&a);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stderr)));
    (o.status.code().unwrap(), v)
}

fn tmp(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("sextic-cli-{}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d.join(name)
}

fn failed_reasons(v: &Value) -> Vec<String> {
    v["checks"].as_array().unwrap().iter().filter(|c| c["pass"] == false).map(|c| c["reason"].as_str().unwrap().to_string()).collect()
}

#[test]
fn out_of_range_labels_are_usage_errors() {
    assert_eq!(sextic(&["generate", "--r", "2", "--seed", "1"]).status.code(), Some(1));
    let o = sextic(&["degenerate", "--r", "18", "--seed", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("18"));
    assert_eq!(sextic(&["generate", "--r", "16"]).status.code(), Some(1), "seed is mandatory");
    assert_eq!(sextic(&["verify"]).status.code(), Some(1));
    assert_eq!(sextic(&["--help"]).status.code(), Some(0));
}

#[test]
fn generate_writes_a_certified_instance() {
    let out = tmp("g16.json");
    let (code, v) = report(&["generate", "--r", "16", "--seed", "7", "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["pass"], true);
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(v["expected_table_hash"].as_str().unwrap().len(), 64);
    assert!(v["result"].is_null());
    let inst: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let ms = MarkedSextic::from_json(&inst).unwrap();
    assert_eq!(ms.r, 16);
    assert_eq!(ms.to_json(), inst);
    // the file feeds the other commands
    let (code, v) = report(&["verify", "--instance", out.to_str().unwrap()]);
    assert_eq!(code, 0, "{v}");
}

#[test]
fn generation_is_deterministic() {
    let (_, a) = report(&["generate", "--r", "13", "--seed", "5"]);
    let (_, b) = report(&["generate", "--r", "13", "--seed", "5"]);
    assert_eq!(a["result"], b["result"]);
    let (_, c) = report(&["generate", "--r", "13", "--seed", "6"]);
    assert_ne!(a["result"], c["result"]);
}

#[test]
fn eighteen_has_two_triple_points() {
    let (code, v) = report(&["generate", "--r", "18", "--seed", "1"]);
    assert_eq!(code, 0);
    let census = v["checks"].as_array().unwrap().iter().find(|c| c["name"] == "membership.census").unwrap();
    assert!(census["detail"].as_str().unwrap().starts_with("9 nodes + 2 triples"), "{census}");
}

#[test]
fn table_matches_the_expected_rows() {
    let (code, v) = report(&["table", "--seed", "1"]);
    assert_eq!(code, 0, "{:?}", failed_reasons(&v));
    let rows = v["result"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 16);
    let row = |r: u64| rows.iter().find(|x| x["r"] == r).unwrap();
    assert_eq!(row(14)["computed"], json!([14, 8, 1]));
    assert_eq!(row(14)["gk_predicted"], json!([0, 3]));
    assert_eq!(row(11)["computed"], json!([11, 11, 1]));
    assert_eq!(row(11)["gk_geometric"], json!([0, 0]));
    assert_eq!(row(18)["computed"], json!([18, 4, 0]));
    assert_eq!(row(18)["gk_predicted"], json!([0, 7]));
    assert_eq!(row(18)["overlattice_index"], "128");
    assert!(rows.iter().all(|x| x["pass"] == true));
}

#[test]
fn invariants_of_a_fresh_instance() {
    let (code, v) = report(&["invariants", "--r", "12", "--seed", "3"]);
    assert_eq!(code, 0);
    assert_eq!((v["result"]["r"].as_u64(), v["result"]["a"].as_u64(), v["result"]["delta"].as_u64()), (Some(12), Some(10), Some(1)));
    assert_eq!(v["result"]["overlattice_index"], "2");
}

#[test]
fn cycle_certificates() {
    let inst = tmp("c16.json");
    assert_eq!(sextic(&["generate", "--r", "16", "--seed", "7", "--out", inst.to_str().unwrap()]).status.code(), Some(0));
    let p = inst.to_str().unwrap();
    for which in ["node-1", "node-2"] {
        let (code, v) = report(&["cycle", "--instance", p, "--which", which]);
        assert_eq!(code, 0, "{which}: {:?}", failed_reasons(&v));
        let checks = &v["result"]["checks"];
        for k in ["divisor_sum", "squares", "product", "isotropic", "primitive"] {
            assert_eq!(checks[k], true, "{which} {k}");
        }
        assert_eq!(v["result"]["which"], which);
    }
    let (code, plain) = report(&["cycle", "--instance", p, "--marking", "0"]);
    assert_eq!(code, 0);
    let (code, conj) = report(&["cycle", "--instance", p, "--marking", "conjugate"]);
    assert_eq!(code, 0);
    assert_eq!(conj["result"]["checks"]["divisor_sum"], true);
    assert_eq!(conj["result"]["strong_marking"], "inf");
    assert_eq!(conj["result"]["p0"], plain["result"]["p_inf"]);
    assert_eq!(sextic(&["cycle", "--instance", p, "--marking", "sideways"]).status.code(), Some(1));
}

#[test]
fn non_generic_marking_exits_with_five() {
    let lines = [[1, 2, 0], [0, 1, 2], [1, 1, -1], [1, -3, 0], [0, 1, -1], [2, 5, -2]];
    let pt = |p: [i64; 3]| json!(p.iter().map(|x| format!("{x}/1")).collect::<Vec<_>>());
    let inst = json!({
        "r": 16,
        "labeled_parts": {"kind": "lines", "lines": lines.iter().map(|l| pt(*l)).collect::<Vec<_>>()},
        "weak_marking": [pt([0, 0, 1]), pt([1, 0, 0])],
        "strong_marking": "0",
        "seed": 0,
    });
    let f = tmp("nongeneric.json");
    std::fs::write(&f, inst.to_string()).unwrap();
    let (code, v) = report(&["cycle", "--instance", f.to_str().unwrap()]);
    assert_eq!(code, 5);
    assert_eq!(failed_reasons(&v), vec!["genericity"]);
    let (code, v) = report(&["verify", "--instance", f.to_str().unwrap()]);
    assert_eq!(code, 5);
    assert!(failed_reasons(&v).contains(&"genericity".to_string()));
}

#[test]
fn broken_marking_fails_verification() {
    let f = tmp("m15.json");
    assert_eq!(sextic(&["generate", "--r", "15", "--seed", "2", "--out", f.to_str().unwrap()]).status.code(), Some(0));
    let mut inst: Value = serde_json::from_str(&std::fs::read_to_string(&f).unwrap()).unwrap();
    inst["weak_marking"][1] = json!(["1/1", "2/1", "3/1"]);
    std::fs::write(&f, inst.to_string()).unwrap();
    let (code, v) = report(&["verify", "--instance", f.to_str().unwrap()]);
    assert_eq!(code, 4);
    assert!(failed_reasons(&v).contains(&"membership_marking".to_string()));
}

#[test]
fn io_failures_exit_with_three() {
    let (code, v) = report(&["invariants", "--instance", "/nonexistent/instance.json"]);
    assert_eq!(code, 3);
    assert_eq!(failed_reasons(&v), vec!["io"]);
    let bad = tmp("garbage.json");
    std::fs::write(&bad, "{ not json").unwrap();
    let (code, v) = report(&["verify", "--instance", bad.to_str().unwrap()]);
    assert_eq!(code, 3);
    assert_eq!(failed_reasons(&v), vec!["malformed_instance"]);
    let (code, _) = report(&["generate", "--r", "16", "--seed", "1", "--out", "/nonexistent/dir/x.json"]);
    assert_eq!(code, 3);
}

#[test]
fn degenerate_fifteen_lands_on_sixteen() {
    let (code, v) = report(&["degenerate", "--r", "15", "--seed", "1"]);
    assert_eq!(code, 0, "{:?}", failed_reasons(&v));
    let lat = &v["result"]["checks"]["lattice_specialization"];
    assert_eq!(lat["boundary_invariants"], json!([16, 6, 1]));
    assert_eq!(lat["generic_invariants"], json!([15, 7, 1]));
    assert_eq!(v["result"]["boundary_instance"]["r"], 16);
    assert!(v["result"]["unresolved_point"].is_null());
}

#[test]
fn degenerate_twelve_keeps_the_unresolved_label() {
    let (code, v) = report(&["degenerate", "--r", "12", "--seed", "1"]);
    assert_eq!(code, 0, "{:?}", failed_reasons(&v));
    assert_eq!(v["result"]["checks"]["lattice_specialization"]["boundary_invariants"], json!([13, 9, 1]));
    assert!(v["result"]["unresolved_point"].is_array());
    assert!(v["checks"].as_array().unwrap().iter().any(|c| c["name"] == "unresolved_point"));
}

#[test]
fn table_hash_is_pinned() {
    let (_, v) = report(&["generate", "--r", "3", "--seed", "1"]);
    assert_eq!(v["expected_table_hash"], EXPECTED_TABLE_HASH);
}

// sha256 of the lines "r a δ g k description", r = 3..18
const EXPECTED_TABLE_HASH: &str = "e6bcc77812365449979ebf6eb17027f73ad11ee028cf76e8a20ae4be2268fbfa";
