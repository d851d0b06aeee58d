use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (Value, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_qhc")).args(args).output().expect("spawn qhc");
    let v: Value = serde_json::from_slice(&out.stdout).expect("JSON report");
    assert_eq!(v["schema"], 1);
    (v, out.status.code().unwrap())
}

#[test]
fn roots_a1() {
    let (v, code) = run(&["roots", "--type", "A", "--rank", "1", "--l0", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["real_rank"], 1);
    assert_eq!(v["mu"], serde_json::json!([[2]]));
}

#[test]
fn roots_not_hermitian() {
    let (v, code) = run(&["roots", "--type", "C", "--rank", "2", "--l0", "1"]);
    assert_eq!(code, 2);
    assert_eq!(v["hermitian"], false);
    assert!(v["error"].as_str().unwrap().contains("not Hermitian"));
}

#[test]
fn invalid_l0_exits_2() {
    let (v, code) = run(&["roots", "--type", "A", "--rank", "2", "--l0", "3"]);
    assert_eq!(code, 2);
    assert_eq!(v["passed"], false);
}

#[test]
fn explicit_cartan_matrix() {
    let (v, code) = run(&["roots", "--cartan", "[[2,-1],[-2,2]]", "--l0", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["real_rank"], 2);
}

#[test]
fn module_dimensions() {
    let (v, code) = run(&["module", "--type", "A", "--rank", "2", "--l0", "1", "--hw", "1,1"]);
    assert_eq!(code, 0);
    assert_eq!(v["dim"], 8);
    let (v, _) = run(&["module", "--type", "A", "--rank", "1", "--l0", "1", "--hw", "1"]);
    assert_eq!(v["dim"], 2);
    let (v, _) = run(&["module", "--type", "A", "--rank", "1", "--l0", "1", "--hw", "0"]);
    assert_eq!(v["dim"], 1);
}

#[test]
fn module_numeric_sample() {
    let (v, code) = run(&["module", "--type", "A", "--rank", "1", "--l0", "1", "--hw", "1", "--q0", "1/4"]);
    assert_eq!(code, 0);
    assert!(v["blocks"].as_array().unwrap().iter().all(|b| b["gram_det"]["at_q0"].is_number()));
    let (_, code) = run(&["module", "--type", "A", "--rank", "1", "--l0", "1", "--hw", "1", "--q0", "2"]);
    assert_eq!(code, 2);
}

#[test]
fn series_a1_level_4() {
    let (v, code) = run(&["series", "--type", "A", "--rank", "1", "--l0", "1", "--k", "1", "--level", "4"]);
    assert_eq!(code, 0);
    assert!(v["relations"]["relations"].as_array().unwrap().iter().all(|r| r["passed"] == true));
    assert!(v["specialization"]["mismatches"].as_array().unwrap().is_empty());
}

#[test]
fn series_at_zero_parameter() {
    let (v, code) = run(&["series", "--type", "A", "--rank", "1", "--l0", "1", "--k", "1", "--u", "0", "--jobs", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["specialization"]["points"], serde_json::json!([[0]]));
    // The untwisted action kills 1 under E and F.
    assert!(v["vacuum"]["E1"]["components"].as_array().unwrap().is_empty());
    assert!(v["vacuum"]["F1"]["components"].as_array().unwrap().is_empty());
}

#[test]
fn series_rejects_bad_parameter() {
    let (_, code) = run(&["series", "--type", "A", "--rank", "1", "--l0", "1", "--k", "2"]);
    assert_eq!(code, 2);
}
