use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn ymalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ymalg")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn functional_file(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ymalg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn series_table() {
    let out = ymalg(&["series", "--n", "3", "--D", "10"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let dims: Vec<&str> = v["lie_dims"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
    assert_eq!(dims, ["3", "3", "5", "10", "24", "50", "120", "270", "640", "1500"]);
    assert_eq!(v["pbw_check"], true);
    assert_eq!(v["freeness"], true);
}

#[test]
fn quotient_identities() {
    let out = ymalg(&["quotient", "--n", "3", "--l", "4", "--identities", "--verify-paper-basis"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["dims"], serde_json::json!([3, 3, 5, 10]));
    assert_eq!(v["named_basis"], true);
    let ids = v["identities"].as_array().unwrap();
    assert_eq!(ids.iter().filter(|i| i["identity"].as_str().unwrap().len() > 6).count(), ids.len());
    assert!(ids.iter().all(|i| i["holds"] == true));
}

#[test]
fn koszul_slices() {
    let v = json(&ymalg(&["koszul", "--n", "3", "--max-p", "4"]));
    assert_eq!(v["slices"][2]["dims"], serde_json::json!([0, 5, 0, 0]));
    assert_eq!(v["w"], serde_json::json!([3, 5, 7, 9]));
}

#[test]
fn orbit_and_weylmap() {
    let f = functional_file("w1.json", r#"{"algebra":{"n":3,"l":2},"coords":{"x13":"1","x23":"1"}}"#);
    let f = f.to_str().unwrap();
    let v = json(&ymalg(&["orbit", "--functional", f]));
    assert_eq!(v["weight"], 1);
    assert_eq!(v["radical_dim"], 4);

    let out = ymalg(&["weylmap", "--n", "3", "--l", "2", "--functional", f, "--pullback-degree", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["weight"], 1);
    assert_eq!(v["relator_check"], true);
    assert_eq!(v["surjectivity"]["status"], "surjective");
    assert_eq!(v["images"]["13"], serde_json::json!([[[[0], [0]], "1"]]));
    assert_eq!(v["pullback"]["monomials"].as_array().unwrap().len(), 3);

    let again = ymalg(&["weylmap", "--n", "3", "--l", "2", "--functional", f, "--pullback-degree", "2"]);
    assert_eq!(out.stdout, again.stdout);
}

#[test]
fn weight_four_map() {
    let f = functional_file("w4.json", r#"{"algebra":{"n":3,"l":4},"coords":{"x312":"1","x2312":"1","x1112":"1"}}"#);
    let v = json(&ymalg(&["weylmap", "--functional", f.to_str().unwrap(), "--surjectivity-depth", "4"]));
    assert_eq!(v["weight"], 4);
    assert_eq!(v["hom_check"], true);
    assert_eq!(v["surjectivity"]["witnesses"].as_array().unwrap().len(), 8);
}

#[test]
fn bad_input_exit_codes() {
    assert_eq!(ymalg(&["quotient", "--n", "1", "--l", "2"]).status.code(), Some(2));
    assert_eq!(ymalg(&["quotient", "--n", "3"]).status.code(), Some(2));
    assert_eq!(ymalg(&["orbit", "--functional", "/nonexistent/f.json"]).status.code(), Some(2));
    let f = functional_file("mismatch.json", r#"{"algebra":{"n":3,"l":2},"coords":{"x13":"1"}}"#);
    let out = ymalg(&["orbit", "--n", "4", "--functional", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--n"));
    let bad = functional_file("bad.json", r#"{"algebra":{"n":3,"l":2},"coords":{"x99":"1"}}"#);
    assert_eq!(ymalg(&["orbit", "--functional", bad.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn degree_cap_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_ymalg"))
        .args(["quotient", "--n", "3", "--l", "5"])
        .env("YMALG_DEGREE_CAP", "4")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_file() {
    let path = std::env::temp_dir().join(format!("ymalg-cli-out-{}.json", std::process::id()));
    let out = ymalg(&["series", "--n", "2", "--D", "3", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["hilbert"], serde_json::json!(["1", "2", "4", "6"]));
}
