use criterion::{black_box, criterion_group, criterion_main, Criterion};

use permon_core::decomposition::{canonical_decomposition, verify_canonical};
use permon_core::dfa::{minimize, regex_to_dfa};
use permon_core::period::{build_signature, full_gamma, max_period};
use permon_core::probability::{accumulation_points, mu_exact, DEFAULT_CAP, DEFAULT_TOL};
use permon_core::regex::parse_regex;
use permon_core::report::{analyze, AnalysisOptions};
use permon_core::syntactic::transition_monoid;
use permon_core::Dfa;

const L3: &str = "a((a|b)(a|b))*|b(a|b)*";
const LARGER: &str = "(a|b)*a(a|b)(a|b)(a|b)";

fn dfa(re: &str) -> Dfa {
    let ab = vec!["a".to_string(), "b".to_string()];
    regex_to_dfa(&parse_regex(re).unwrap(), &ab).unwrap()
}

fn construction(c: &mut Criterion) {
    c.bench_function("regex to minimal dfa", |b| {
        b.iter(|| minimize(&dfa(black_box(LARGER))))
    });
    let d = minimize(&dfa(LARGER));
    c.bench_function("transition monoid", |b| {
        b.iter(|| transition_monoid(black_box(&d), 5000).unwrap())
    });
}

fn decomposition(c: &mut Criterion) {
    let m = transition_monoid(&minimize(&dfa(LARGER)), 5000).unwrap();
    c.bench_function("max period", |b| {
        b.iter(|| max_period(black_box(&m), &full_gamma(2)).unwrap())
    });
    let sig = build_signature(&m, &[full_gamma(2)], None).unwrap();
    c.bench_function("canonical decomposition", |b| {
        b.iter(|| {
            let dec = canonical_decomposition(black_box(&m), &sig).unwrap();
            verify_canonical(&dec)
        })
    });
}

fn probability(c: &mut Criterion) {
    let d = dfa(L3);
    c.bench_function("exact density at 256", |b| b.iter(|| mu_exact(black_box(&d), 256)));
    c.bench_function("accumulation points", |b| {
        b.iter(|| accumulation_points(black_box(&d), 2, DEFAULT_TOL, DEFAULT_CAP).unwrap())
    });
}

fn pipeline(c: &mut Criterion) {
    let d = dfa(L3);
    let opts = AnalysisOptions::default();
    c.bench_function("analyze", |b| b.iter(|| analyze(black_box(&d), &opts).unwrap()));
}

criterion_group!(benches, construction, decomposition, probability, pipeline);
criterion_main!(benches);
