#![allow(dead_code)]

use std::path::PathBuf;

use permon_core::dfa::{load_dfa, regex_to_dfa, Dfa};
use permon_core::regex::parse_regex;

pub const L3: &str = "a((a|b)(a|b))*|b(a|b)*";

pub const CORPUS_REGEXES: &[&str] = &[
    L3,
    "((a|b)(a|b))*",
    "a(a|b)*",
    "a((a|b)(a|b))*|b(a|b)((a|b)(a|b))*",
    "(a|b)*a(a|b)*",
    "a*",
    "(a|b)*",
    "(aa|b)*",
    "(a|b)*ab",
    "((a|b)(a|b)(a|b))*",
    "(ab)*",
    "(aa)*|b(a|b)(a|b)*",
    "b*(ab*ab*)*",
];

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("fixtures")
        .join(name)
}

pub fn fixture(name: &str) -> Dfa {
    let text = std::fs::read_to_string(fixture_path(name)).unwrap();
    load_dfa(&text).unwrap()
}

pub fn ab() -> Vec<String> {
    vec!["a".into(), "b".into()]
}

pub fn regex(re: &str) -> Dfa {
    regex_to_dfa(&parse_regex(re).unwrap(), &ab()).unwrap()
}

/// Every corpus language with a display name.
pub fn corpus() -> Vec<(String, Dfa)> {
    let mut out: Vec<(String, Dfa)> = ["a1.json", "a2.json", "a3.json"]
        .iter()
        .map(|f| (f.to_string(), fixture(f)))
        .collect();
    out.extend(CORPUS_REGEXES.iter().map(|re| (re.to_string(), regex(re))));
    out
}
