use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/tests/fixtures")
        .join(name)
        .display()
        .to_string()
}

fn permon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_permon"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.push("--json");
    let out = permon(&full);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn periodic_language_report() {
    let out = permon(&["analyze", "--regex", "a((a|b)(a|b))*|b(a|b)*", "--gamma", "a,b"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("monoid order: 5"));
    assert!(text.contains("period {a,b}: 2 (max 2)"));
    assert!(text.contains("K: 3"));
    assert!(text.contains("accumulation: (0.5, 1)"));
    assert!(text.contains("zero-one: w=a one (witness {e})"));
    assert!(text.contains("zero-one: w=ε neither"));
}

#[test]
fn parity_language_with_two_letter_sets() {
    let a1 = fixture("a1.json");
    let out = permon(&["analyze", "--dfa", &a1, "--gamma", "a", "--gamma", "b"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("period {a}: 2 (max 2)"));
    assert!(text.contains("period {b}: 2 (max 2)"));
    assert!(text.contains("K: 1"));
}

#[test]
fn trivial_period_warns() {
    let out = permon(&["analyze", "--regex", "(a|b)*"]);
    assert_eq!(out.status.code(), Some(0));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("period is trivial"), "{err}");
    assert!(stdout(&out).contains("period {a,b}: 1 (max 1)"));
}

#[test]
fn exact_density_listing() {
    let out = permon(&["prob", "--dfa", &fixture("a3.json"), "--length", "2"]);
    assert_eq!(stdout(&out), "0 0/1\n1 1/1\n2 1/2\n");
}

#[test]
fn zero_one_line() {
    let out = permon(&["zero-one", "--dfa", &fixture("a3.json")]);
    assert_eq!(stdout(&out), "basic: oscillating; r=0: no; r=1: yes (witness {e})\n");
}

#[test]
fn zero_one_outside_scope_is_an_input_error() {
    let out = permon(&["zero-one", "--dfa", &fixture("a1.json"), "--gamma", "a"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn input_errors_exit_with_two() {
    let out = permon(&["monoid", "--regex", "a("]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("syntax error at offset 1"));
    assert_eq!(permon(&["analyze", "--regex", "a", "--dfa", "x.json"]).status.code(), Some(2));
    assert_eq!(permon(&["analyze"]).status.code(), Some(2));
    assert_eq!(permon(&["analyze", "--dfa", "missing.json"]).status.code(), Some(2));
    assert_eq!(permon(&["period", "--regex", "ab", "--gamma", "c"]).status.code(), Some(2));
    assert_eq!(permon(&["period", "--regex", "ab", "--periods", "0"]).status.code(), Some(2));
    assert_eq!(
        permon(&["period", "--regex", "(ab)*", "--periods", "2,2"]).status.code(),
        Some(2)
    );
}

#[test]
fn dot_file_is_written() {
    let path = std::env::temp_dir().join(format!("permon-{}.dot", std::process::id()));
    let out = permon(&["monoid", "--regex", "(ab)*", "--dot", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let dot = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches(" -> ").count(), 12);
}

#[test]
fn json_and_text_agree() {
    let a3 = fixture("a3.json");
    let report = json(&["analyze", "--dfa", &a3]);
    assert_eq!(report["monoid"]["order"], 5);
    assert_eq!(report["decomposition"]["K"], 3);
    let text = stdout(&permon(&["analyze", "--dfa", &a3]));
    let acc: Vec<String> = report["probability"]["accumulation"]
        .as_array()
        .unwrap()
        .iter()
        .map(|a| a["mu"].as_f64().unwrap().to_string())
        .collect();
    assert!(text.contains(&format!("accumulation: ({})", acc.join(", "))));

    let series = json(&["prob", "--dfa", &a3, "--length", "2"]);
    assert_eq!(series[2]["num"], "1");
    assert_eq!(series[2]["den"], "2");

    let zo = json(&["zero-one", "--dfa", &a3]);
    assert_eq!(zo["basic"], "oscillating");
    assert_eq!(zo["residues"][1]["witness"][0], "e");
}

#[test]
fn focused_reports() {
    let a2 = fixture("a2.json");
    let period = json(&["period", "--dfa", &a2, "--gamma", "a", "--gamma", "b"]);
    assert_eq!(period["max_periods"], serde_json::json!([2, 1]));
    let dec = json(&["decompose", "--dfa", &a2, "--gamma", "a"]);
    assert_eq!(dec["K"], 3);
    assert_eq!(dec["verified"], true);
    let monoid = json(&["monoid", "--dfa", &a2]);
    assert_eq!(monoid["order"], 6);
}

#[test]
fn oracle_subcommand_counts_and_cycles() {
    let report = json(&["oracle", "--dfa", &fixture("a1.json"), "--length", "4"]);
    assert_eq!(report["mu"][4][1], "1/2");
    assert_eq!(report["mu"][3][1], "0");
    assert_eq!(report["cycle_gcd"][0][1], 2);
    assert_eq!(report["max_period"][0][1], 2);
}
