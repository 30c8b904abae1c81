use std::process::Command;

fn sqrun(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_sqrun")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).expect("utf-8"))
}

fn without_timing(s: &str) -> serde_json::Value {
    let mut v: serde_json::Value = serde_json::from_str(s).expect("json");
    v.as_object_mut().expect("object").remove("timing");
    v
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(sqrun(&["search", "--n-min", "0"]).0, 2);
    assert_eq!(sqrun(&["families", "--n", "9"]).0, 2);
    assert_eq!(sqrun(&["no-such-command"]).0, 2);
    assert_eq!(sqrun(&["--jobs", "0", "descent"]).0, 2);
}

#[test]
fn search_is_independent_of_jobs() {
    let args = ["search", "--a-bound", "2000", "--c-bound", "6000", "--n-min", "7"];
    let (c1, one) = sqrun(&[&["--jobs", "1"][..], &args[..]].concat());
    let (c4, four) = sqrun(&[&["--jobs", "4"][..], &args[..]].concat());
    assert_eq!((c1, c4), (0, 0));
    assert_eq!(one, four);
    assert!(one.contains("5329"));
}

#[test]
fn full_proof_is_byte_stable() {
    let (c1, a) = sqrun(&["full-proof", "--skip-search"]);
    let (c2, b) = sqrun(&["--jobs", "2", "full-proof", "--skip-search"]);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(without_timing(&a), without_timing(&b));
    let v = without_timing(&a);
    assert_eq!(v["verdict"], "verified-with-assumptions");
    assert_eq!(v["assumptions"][0]["id"], "rank-j-plus-minus");
}

#[test]
fn families_n7_reports_twelve_points() {
    let (code, out) = sqrun(&["families", "--n", "7"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["torsion_order"], 12);
    assert_eq!(v["all_degenerate"], true);
}
