use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn examples() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../docs/examples")
}

fn splitkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_splitkit")).args(args).current_dir(examples()).output().unwrap()
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn self_intersection_of_z() {
    let out = splitkit(&["inum", "--s", "z.json", "--t", "z.json", "--radius", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["count"], 0);
    assert_eq!(r["exact"], true);
    assert_eq!(r["schema_version"], "1");
}

#[test]
fn f3_graph_of_groups() {
    let args = ["gog", "--splittings", "f3a.json", "f3b.json", "--radius", "8"];
    let out = splitkit(&args);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["edges"].as_array().unwrap().len(), 2);
    assert_eq!(r["vertices"].as_array().unwrap().len(), 3);
    assert_eq!(r["stability"]["stable"], true);

    let out = splitkit(&[&args[..], &["--dot"]].concat());
    let dot = String::from_utf8(out.stdout).unwrap();
    assert!(dot.starts_with("digraph gog"));
    assert_eq!(dot.matches(" -> ").count(), 2);
}

#[test]
fn ends_of_f2() {
    let out = splitkit(&["ends", "--group", "f2.json", "--subgroup", "trivial", "--radius", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["value"], "many");
    assert!(r["certified_radius"].is_u64());
}

#[test]
fn output_is_deterministic() {
    let args = ["sinum", "--s", "slope01.json", "--t", "slope10.json"];
    let a = splitkit(&args);
    let b = splitkit(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(report(&a)["count"], 1);
}

#[test]
fn unresolved_exits_with_two() {
    let out = splitkit(&["inum", "--s", "slope23.json", "--t", "slope34.json", "--radius", "4"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(report(&out)["exact"], false);

    let out = splitkit(&["inum", "--s", "slope23.json", "--t", "slope34.json", "--radius", "12"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["count"], 1);
}

#[test]
fn errors_exit_with_one() {
    let out = splitkit(&["dtree", "--poset", "crossed.json"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("condition 1"));

    let out = splitkit(&["nf", "--splitting", "missing.json", "--word", "x"]);
    assert_eq!(out.status.code(), Some(1));

    let out = splitkit(&["inum", "--s", "z.json", "--t", "z.json", "--colour", "red"]);
    assert_eq!(out.status.code(), Some(1));

    let bad = std::env::temp_dir().join(format!("splitkit-bad-{}.json", std::process::id()));
    std::fs::write(&bad, r#"{"generators": ["x"], "strategy": "free", "extra": 1}"#).unwrap();
    let out = splitkit(&["ends", "--group", bad.to_str().unwrap()]);
    std::fs::remove_file(&bad).unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("extra"));
}

#[test]
fn normal_forms_and_sides() {
    let out = splitkit(&["nf", "--splitting", "genus2_curve.json", "--word", "a c b d"]);
    let r = report(&out);
    assert_eq!(r["length"], 4);
    assert_eq!(r["normal_form"]["syllables"][1]["side"], "B");

    let out = splitkit(&["side", "--splitting", "slope01.json", "--word", "y", "--word", "x", "--variant", "x-star"]);
    let r = report(&out);
    assert_eq!(r["words"][0]["member"], false);
    assert_eq!(r["words"][1]["member"], true);
}

#[test]
fn trees_and_balls() {
    let out = splitkit(&["dtree", "--poset", "path.json"]);
    let r = report(&out);
    assert_eq!((r["edges"].as_u64(), r["vertices"].as_u64()), (Some(3), Some(4)));

    let out = splitkit(&["tree", "--splitting", "z.json", "--depth", "2"]);
    let r = report(&out);
    assert_eq!((r["edges"].as_u64(), r["vertices"].as_u64()), (Some(5), Some(6)));

    let out = splitkit(&["ball", "--group", "dihedral.json", "--radius", "3"]);
    let r = report(&out);
    assert_eq!(r["vertices"], 7);
    assert_eq!(r["edges"], 6);

    let out = splitkit(&["psi", "--target", "slope10.json", "--actor", "slope01.json", "--depth", "6"]);
    let r = report(&out);
    assert_eq!(r["edges"], 1);
    assert_eq!(r["stabilized"], true);
}

#[test]
fn crossing_and_oracle() {
    let out = splitkit(&["cross", "--s", "slope01.json", "--t", "slope10.json", "--radius", "10"]);
    assert_eq!(report(&out)["verdict"], "CertifiedTrue");

    let out = splitkit(&["cross", "--s", "f3a.json", "--t", "f3b.json", "--g", "x y"]);
    assert_eq!(report(&out)["verdict"], "CertifiedFalse");

    let out = splitkit(&["oracle", "slopes", "--a", "1/1", "--b", "1/-1", "--radius", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["determinant"], 2);
    assert_eq!(r["agree"], true);
}
