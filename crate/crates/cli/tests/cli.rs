use std::process::{Command, Output};

use serde_json::Value;

const EX2_K: &str = "re:a(abab)*c(acac)*";
const EX2_L: &str = "re:bab(abab)*cac(acac)*";

fn sepreg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sepreg"))
        .args(args)
        .env_remove("SEPREG_DEFAULT_CAPS")
        .output()
        .expect("binary runs")
}

fn sepreg_env(args: &[&str], caps: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sepreg"))
        .args(args)
        .env("SEPREG_DEFAULT_CAPS", caps)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout))
    })
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn decide_pt_json_not_separable() {
    let out = sepreg(&["decide", "--family", "pt", "--K", EX2_K, "--L", EX2_L, "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["family"], "pt");
    assert_eq!(v["separable"], false);
    assert_eq!(v["certificate"]["kind"], "synch-path");
    for key in ["elapsed_ms", "vertices", "caps_hit"] {
        assert!(v["stats"].get(key).is_some(), "{key}");
    }
}

#[test]
fn decide_suffix_single_with_witness() {
    let out = sepreg(&[
        "decide",
        "--family",
        "suffix-single",
        "--K",
        "re:(a+b)*ab",
        "--L",
        "re:(a+b)*ba",
        "--witness",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("verdict: separable"), "{text}");
    assert!(text.contains("witness: Σ*ab"), "{text}");

    let out = sepreg(&[
        "decide",
        "--family",
        "suffix-single",
        "--K",
        "re:(a+b)*ab",
        "--L",
        "re:(a+b)*ba",
        "--witness",
        "--json",
    ]);
    let v = json(&out);
    assert_eq!(v["witness"]["word"], "ab");
    assert_eq!(v["witness"]["kind"], "single");
}

#[test]
fn witness_omitted_unless_requested() {
    let out = sepreg(&["decide", "--family", "subseq-union", "--K", "re:ab*", "--L", "re:b*", "--json"]);
    let v = json(&out);
    assert_eq!(v["separable"], true);
    assert!(v["witness"].is_null());
}

#[test]
fn syntax_error_exits_3() {
    let out = sepreg(&["decide", "--family", "pt", "--K", "re:(", "--L", "re:a"]);
    assert_eq!(out.status.code(), Some(3));
    let out = sepreg(&["decide", "--family", "pt", "--K", "re:(", "--L", "re:a", "--json"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["error"]["code"], "parse");
}

#[test]
fn usage_errors_exit_2() {
    let cases: [&[&str]; 4] = [
        &["decide", "--family", "nope", "--K", "re:a", "--L", "re:b", "--json"],
        &["decide", "--family", "pt", "--K", "a", "--L", "re:b", "--json"],
        &["decide", "--family", "pt", "--K", "re:a", "--json"],
        &["zigzag", "--K", "re:a", "--L", "re:b", "--max-len", "0", "--json"],
    ];
    for args in cases {
        let out = sepreg(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert_eq!(json(&out)["error"]["code"], "usage", "{args:?}");
    }
}

#[test]
fn automaton_files() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("k.nfa");
    std::fs::write(&good, "# sepreg-nfa v1\nalphabet ab\nstates 2\ninitial 0\naccepting 1\n0 a 1\n").unwrap();
    let bad = dir.path().join("bad.nfa");
    std::fs::write(&bad, "alphabet a\nstates 3\ninitial 7\n").unwrap();

    let k = format!("file:{}", good.display());
    let out = sepreg(&["decide", "--family", "pt", "--K", &k, "--L", "re:b", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["separable"], true);

    let k = format!("file:{}", bad.display());
    let out = sepreg(&["decide", "--family", "pt", "--K", &k, "--L", "re:b", "--json"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(json(&out)["error"]["message"].as_str().unwrap().contains("line 3"));

    let missing = format!("file:{}", dir.path().join("none").display());
    let out = sepreg(&["decide", "--family", "pt", "--K", &missing, "--L", "re:b"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn inconclusive_exits_4() {
    let args = [
        "decide",
        "--family",
        "subseq-single",
        "--K",
        "re:abc",
        "--L",
        "re:a+b+c+ab+bc+ac",
        "--depth-cap",
        "1",
        "--json",
    ];
    let out = sepreg(&args);
    assert_eq!(out.status.code(), Some(4));
    let v = json(&out);
    assert!(v["separable"].is_null());
    assert!(!v["stats"]["caps_hit"].as_array().unwrap().is_empty());
}

#[test]
fn zero_timeout_is_inconclusive() {
    let out = sepreg(&[
        "decide",
        "--family",
        "subseq-single",
        "--K",
        "re:abcabc",
        "--L",
        "re:a",
        "--timeout-ms",
        "0",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(4));
    assert!(json(&out)["separable"].is_null());
}

#[test]
fn caps_from_environment() {
    let args = ["decide", "--family", "subseq-single", "--K", "re:abc", "--L", "re:a+b+c+ab+bc+ac", "--json"];
    assert_eq!(sepreg(&args).status.code(), Some(0));
    assert_eq!(sepreg_env(&args, "depth_cap=1").status.code(), Some(4));
    let out = sepreg_env(&args, "depth_cap=zero");
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"]["code"], "usage");
}

#[test]
fn json_is_deterministic() {
    let args = ["decide", "--family", "suffix-bc", "--K", "re:ab", "--L", "re:bb", "--witness", "--json"];
    let strip = |out: &Output| {
        let mut v = json(out);
        v["stats"]["elapsed_ms"] = Value::Null;
        v
    };
    let first = strip(&sepreg(&args));
    assert_eq!(first["witness"]["k"], 2);
    assert_eq!(first, strip(&sepreg(&args)));
}

#[test]
fn every_family_accepted() {
    for family in [
        "pt",
        "subseq-single",
        "subseq-union",
        "suffix-single",
        "suffix-union",
        "suffix-bc",
        "prefix-single",
        "prefix-union",
        "prefix-bc",
    ] {
        let out = sepreg(&["decide", "--family", family, "--K", "re:ab", "--L", "re:ba", "--witness", "--json"]);
        assert_eq!(out.status.code(), Some(0), "{family}");
        assert_eq!(json(&out)["family"], family);
    }
}

#[test]
fn alphabet_override() {
    // over {a} every suffix closure meets a*; adding b frees Σ*b
    let out = sepreg(&["decide", "--family", "suffix-single", "--K", "re:#", "--L", "re:a*", "--json"]);
    assert_eq!(json(&out)["separable"], false);
    let out = sepreg(&[
        "decide", "--family", "suffix-single", "--K", "re:#", "--L", "re:a*", "--alphabet", "ab", "--json",
    ]);
    assert_eq!(json(&out)["separable"], true);
    let out = sepreg(&["decide", "--family", "pt", "--K", "re:a", "--L", "re:b", "--alphabet", "A", "--json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn zigzag_example_two() {
    let out = sepreg(&["zigzag", "--K", EX2_K, "--L", EX2_L, "--max-len", "6", "--max-word-len", "30"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("zigzag of length 6"));
    let out = sepreg(&[
        "zigzag", "--K", EX2_K, "--L", EX2_L, "--max-len", "6", "--max-word-len", "30", "--json",
    ]);
    let v = json(&out);
    assert_eq!(v["length"], 6);
    assert_eq!(v["words"][1]["word"], "babcac");
    assert_eq!(v["words"][1]["side"], "L");
}

#[test]
fn layers_figure() {
    let out = sepreg(&["layers", "--K", "re:a+aaa", "--L", "re:aa+aaaa", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let atoms: Vec<&str> = v["layers"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x["atoms"][0].as_str().unwrap())
        .collect();
    assert_eq!(atoms, ["aaaa", "aaa", "aa", "a"]);
    assert_eq!(v["verified"], true);

    let out = sepreg(&["layers", "--K", "re:a*", "--L", "re:b", "--json"]);
    assert_eq!(out.status.code(), Some(2));
    let out = sepreg(&["layers", "--K", "re:a", "--L", "re:a", "--json"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"]["code"], "overlapping-inputs");
}

#[test]
fn oracle_outcomes() {
    let out = sepreg(&["oracle", "--K", EX2_K, "--L", EX2_L, "--max-level", "3", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["outcome"], "necessary-condition-holds");
    assert_eq!(v["level"], 3);
    let out = sepreg_env(&["oracle", "--K", "re:(a+b+c)*", "--L", "re:d", "--json"], "profile_cap=10");
    assert_eq!(out.status.code(), Some(4));
    assert_eq!(json(&out)["outcome"], "inconclusive");
}

#[test]
fn synch_writes_dot() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.dot");
    let p = path.to_str().unwrap();
    let out = sepreg(&["synch", "--K", EX2_K, "--L", EX2_L, "--dot", p, "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["separable"], false);
    let dot = std::fs::read_to_string(&path).unwrap();
    assert!(dot.starts_with("digraph synch {"));
    assert!(dot.trim_end().ends_with('}'));
    assert!(dot.contains("Σ0={a,b}"));
}

#[test]
fn help_exits_zero() {
    let out = sepreg(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("decide"));
}
