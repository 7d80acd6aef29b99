//! End-to-end tests of the binary: printed listings, exit-code contract,
//! and byte-for-byte determinism.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dekking"))
        .args(args)
        .env_remove("DEKKING_SEGMENT_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 output")
}

#[test]
fn seq_prints_the_known_listings() {
    let out = run(&["seq", "--tm", "2", "--len", "28"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "0,1,1,0,1,0,0,1,1,0,0,1,0,1,1,0,1,0,0,1,0,1,1,0,0,1,1,0\n"
    );

    let out = run(&["seq", "--dekking", "2", "3", "--len", "12"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "\"(0,0)\",\"(1,1)\",\"(1,2)\",\"(0,0)\",\"(1,1)\",\"(0,2)\",\
         \"(0,0)\",\"(1,1)\",\"(1,2)\",\"(0,0)\",\"(0,1)\",\"(1,2)\"\n"
    );

    let out = run(&["seq", "--periodic", "3", "--len", "7", "--format", "json"]);
    assert_eq!(stdout(&out), "[0,1,2,0,1,2,0]\n");
}

#[test]
fn seq_rejects_bad_parameters() {
    let out = run(&["seq", "--tm", "1", "--len", "4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!String::from_utf8_lossy(&out.stderr).is_empty());
}

#[test]
fn render_produces_svg() {
    let out = run(&["render", "--dekking", "2", "3", "1", "--steps", "64"]);
    assert!(out.status.success());
    let svg = stdout(&out);
    assert!(svg.starts_with("<?xml"));
    assert!(svg.contains("<polyline"));
    assert!(svg.contains("fill=\"red\""));

    let out = run(&[
        "render", "--tm", "2", "--tau0", "1@1", "--tau1", "0@1/6", "--steps", "16",
    ]);
    assert!(out.status.success());

    let out = run(&["render", "--tm", "2", "--tau0", "1@1", "--tau1", "0@1/6", "--steps", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_exit_codes() {
    // certifies with the Koch flag
    let out = run(&["verify", "--tau0", "1@1", "--tau1", "0@1/6", "--depth", "200"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("koch case: yes"));
    assert!(text.contains("D_(2,3,1)"));

    // the linear curve is diagnosed as the q = 1 case
    let out = run(&["verify", "--tau0", "1@1/6", "--tau1", "1@-1/6"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("q = 1"));

    // equal block sums have their own diagnostic
    let out = run(&["verify", "--tau0", "1@1/6", "--tau1", "1@1/6"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("block step sums"));

    // the pentagonal curve reaches its odd-order target
    let out = run(&["verify", "--tau0", "1@2/5", "--tau1", "0@1/5", "--depth", "200"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("D_(2,5,3)"));

    // hyphen-leading instructions parse as values, not flags
    let out = run(&["verify", "--tau0", "1@1/3", "--tau1", "-1@1/3", "--depth", "100"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn verify_json_shape() {
    let out = run(&[
        "verify", "--tau0", "1@1", "--tau1", "0@1/6", "--depth", "50", "--format", "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(v["q"], 3);
    assert_eq!(v["koch"], true);
    assert_eq!(v["all_passed"], true);
    assert_eq!(v["witnesses"].as_array().unwrap().len(), 4);
}

#[test]
fn converge_rows_and_rejections() {
    let out = run(&["converge", "--dekking", "2", "3", "1", "--n", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4); // header + 3 rows
    assert!(lines[0].starts_with("level,step_value"));
    assert!(lines[1].ends_with("true"));

    // no scaling theory without coprimality
    let out = run(&["converge", "--dekking", "2", "12", "1", "--n", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not coprime"));

    // segment cap override is honored
    let out = Command::new(env!("CARGO_BIN_EXE_dekking"))
        .args(["converge", "--dekking", "2", "3", "1", "--n", "6"])
        .env("DEKKING_SEGMENT_CAP", "100")
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("limit"));
}

#[test]
fn identical_invocations_are_byte_identical() {
    for args in [
        vec!["seq", "--tm", "3", "--len", "100"],
        vec!["render", "--dekking", "2", "3", "1", "--steps", "256"],
        vec!["converge", "--dekking", "2", "3", "1", "--n", "3", "--against-koch"],
        vec!["verify", "--tau0", "1@1", "--tau1", "0@1/6", "--depth", "100", "--format", "json"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.stdout, b.stdout, "nondeterministic output for {args:?}");
        assert_eq!(a.status.code(), b.status.code());
    }
}
