use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn rskflags(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rskflags"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_lines(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).expect("json line"))
        .collect()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("rskflags-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn rsk_forward_and_inverse() {
    let out = rskflags(&["rsk", "forward", "--array", "1,2,2,3,3 / 1,3,1,2,2"]);
    assert!(out.status.success());
    let v = &json_lines(&out)[0];
    assert_eq!(v["P"], "1,2;1,2;3");
    assert_eq!(v["Q"], "1,2;2,3;3");

    let out = rskflags(&["rsk", "inverse", "--P", "1,2;1,2;3", "--Q", "1,2;2,3;3"]);
    let v = &json_lines(&out)[0];
    assert_eq!(v["array"], "1,2,2,3,3 / 1,3,1,2,2");
    assert_eq!(v["matrix"], "1,0,0;1,0,1;0,2,0");
}

#[test]
fn classic_convention() {
    let out = rskflags(&[
        "rsk",
        "forward",
        "--convention",
        "lex",
        "--array",
        "1,2,2,3,3 / 3,1,2,1,2",
    ]);
    let v = &json_lines(&out)[0];
    assert_eq!(v["P"], "1,1,2;2;3");
    assert_eq!(v["Q"], "1,2,3;2;3");
}

#[test]
fn convert_matrix_both_conventions() {
    let paper = rskflags(&["rsk", "convert", "--matrix", "1,0,2;3,1,0"]);
    assert_eq!(
        json_lines(&paper)[0]["array"],
        "1,1,1,2,2,2,2 / 3,3,1,2,1,1,1"
    );
    let lex = rskflags(&[
        "rsk",
        "convert",
        "--matrix",
        "1,0,2;3,1,0",
        "--convention",
        "lex",
    ]);
    assert_eq!(
        json_lines(&lex)[0]["array"],
        "1,1,1,2,2,2,2 / 1,3,3,1,1,1,2"
    );
}

#[test]
fn standardization_commands() {
    let t = rskflags(&["std", "tableau", "1,2;1,2;3"]);
    assert_eq!(json_lines(&t)[0]["tableau"], "1,3;2,4;5");
    let t = rskflags(&["std", "tableau", "1,1,2;2;3", "--convention", "classical"]);
    assert_eq!(json_lines(&t)[0]["tableau"], "1,2,4;3;5");
    let a = rskflags(&[
        "std",
        "array",
        "1,2,2,3,3 / 3,1,2,1,2",
        "--convention",
        "lex",
    ]);
    assert_eq!(json_lines(&a)[0]["array"], "1,2,3,4,5 / 5,1,3,2,4");
    let inv = rskflags(&[
        "std",
        "inverse",
        "1,2,3,4,5 / 2,5,1,4,3",
        "--mu",
        "2,1,2",
        "--nu",
        "1,2,2",
    ]);
    assert!(inv.status.success());
    assert_eq!(json_lines(&inv)[0]["array"], "1,2,2,3,3 / 1,3,1,3,2");
}

#[test]
fn malformed_input_is_an_error() {
    let out = rskflags(&["std", "tableau", "2,1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
    let out = rskflags(&["rsk", "forward", "--array", "2,1 / 1,1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn flag_roundtrip_through_json() {
    let out = rskflags(&[
        "flag",
        "sample",
        "--shape",
        "2,1",
        "--tableau",
        "1,2;3",
        "--seed",
        "5",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v = &json_lines(&out)[0];
    assert_eq!(v["tableau"], "1,2;3");
    let path = scratch("flag.json", &v["flag"].to_string());
    let path = path.to_str().unwrap();

    let t = rskflags(&["flag", "tableau", "--shape", "2,1", path]);
    assert_eq!(json_lines(&t)[0]["tableau"], "1,2;3");
    let m = rskflags(&["flag", "relpos", path, path]);
    assert_eq!(json_lines(&m)[0]["matrix"], "1,0,0;0,1,0;0,0,1");
}

#[test]
fn flag_sample_is_deterministic() {
    let args = [
        "flag", "sample", "--shape", "3,1", "--mu", "1,1,1,1", "--seed", "17",
    ];
    assert_eq!(rskflags(&args).stdout, rskflags(&args).stdout);
    let by_component = rskflags(&[
        "flag",
        "sample",
        "--shape",
        "3,2",
        "--mu",
        "2,2,1",
        "--by-component",
    ]);
    assert!(by_component.status.success());
}

#[test]
fn verify_theorem_reports_json() {
    let out = rskflags(&[
        "verify", "theorem", "--shape", "2,1", "--mu", "2,1", "--nu", "1,2", "--T", "1,2;1", "--S",
        "1,2;2", "--trials", "30", "--prime", "10007", "--seed", "42",
    ]);
    assert!(out.status.success());
    let r = &json_lines(&out)[0];
    assert_eq!(r["verdict"], "pass");
    assert_eq!(r["trials"], 30);
    assert_eq!(r["expected_matrix"], serde_json::json!([[1, 0], [1, 1]]));
    assert_eq!(r["mode_matrix"], r["expected_matrix"]);
}

#[test]
fn verify_rejects_inconsistent_case() {
    let out = rskflags(&[
        "verify", "theorem", "--mu", "1,1,1", "--T", "1,2;1", "--S", "1,2;2",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn steinberg_summary_table() {
    let out = rskflags(&[
        "--summary",
        "verify",
        "steinberg",
        "--shape",
        "2,1",
        "--trials",
        "20",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("4 cases, 0 failed"), "{text}");
}

#[test]
fn unreachable_agreement_fails_exit_code() {
    // agreement can never exceed 1, so every case misses the threshold
    let out = rskflags(&[
        "verify",
        "steinberg",
        "--shape",
        "2,1",
        "--trials",
        "10",
        "--min-agreement",
        "1.5",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let reports = json_lines(&out);
    assert_eq!(reports.len(), 4);
    assert!(reports
        .iter()
        .all(|r| r["verdict"] == "pass" && r["meets_agreement"] == false));
}

#[test]
fn sweeps() {
    for args in [
        &["verify", "lemma2", "--dmax", "4"][..],
        &["verify", "lemma1", "--dmax", "4"],
        &["verify", "bijection", "--dmax", "4"],
        &["verify", "oracle", "--dmax", "4"],
    ] {
        let out = rskflags(args);
        assert!(out.status.success(), "{args:?}");
        for s in json_lines(&out) {
            assert_eq!(s["failed"], 0);
            assert!(s["checked"].as_u64().unwrap() > 0);
        }
    }
}

#[test]
fn config_file_with_flag_override() {
    let cfg = scratch("run.toml", "[run]\ntrials = 7\nprime = 101\nseed = 3\n");
    let cfg = cfg.to_str().unwrap();
    let base = ["verify", "theorem", "--T", "1,2;3", "--S", "1,3;2"];
    let out = rskflags(&[&["--config", cfg][..], &base].concat());
    let r = &json_lines(&out)[0];
    assert_eq!(
        (r["trials"].as_u64(), r["p"].as_u64(), r["seed"].as_u64()),
        (Some(7), Some(101), Some(3))
    );

    let out = rskflags(&[&["--config", cfg][..], &base, &["--trials", "5"]].concat());
    let r = &json_lines(&out)[0];
    assert_eq!(
        (r["trials"].as_u64(), r["p"].as_u64()),
        (Some(5), Some(101))
    );

    let bad = scratch("bad.toml", "[run]\ntrails = 7\n");
    let out = rskflags(&[
        "--config",
        bad.to_str().unwrap(),
        "verify",
        "steinberg",
        "--shape",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn thread_count_does_not_change_reports() {
    let args = ["verify", "steinberg", "--shape", "2,2", "--trials", "15"];
    let one = Command::new(env!("CARGO_BIN_EXE_rskflags"))
        .args(args)
        .env("RSKFLAGS_THREADS", "1")
        .output()
        .unwrap();
    let four = Command::new(env!("CARGO_BIN_EXE_rskflags"))
        .args(args)
        .env("RSKFLAGS_THREADS", "4")
        .output()
        .unwrap();
    assert!(one.status.success());
    assert_eq!(one.stdout, four.stdout);
}
