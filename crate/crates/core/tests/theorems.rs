mod common;

use std::collections::BTreeSet;

use common::corpus;
use permon_core::decomposition::{
    canonical_decomposition, check_stabilizers, diagram_check, lw_member, lw_recognizer,
    residual_monoid, syntactic_monoid_of_lw, verify_canonical, wreath_divisor,
};
use permon_core::dfa::{all_words, minimize};
use permon_core::monoid::{function_embedding_check, make_named, NamedKind};
use permon_core::period::{build_signature, full_gamma, max_period, sink_periods, LetterSet};
use permon_core::syntactic::{cayley_graph, transition_monoid, SyntacticMonoid};
use permon_core::Dfa;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn monoid(d: &Dfa) -> SyntacticMonoid {
    transition_monoid(&minimize(d), 5000).unwrap()
}

fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|&d| n.is_multiple_of(d)).collect()
}

/// Letter-set families tried for each language.
fn gamma_families() -> Vec<Vec<LetterSet>> {
    let a = BTreeSet::from([0]);
    let b = BTreeSet::from([1]);
    vec![
        vec![full_gamma(2)],
        vec![a.clone()],
        vec![b.clone()],
        vec![a.clone(), b.clone()],
        vec![full_gamma(2), a],
    ]
}

/// All period vectors dividing the maximum ones.
fn period_vectors(max: &[u32]) -> Vec<Vec<u32>> {
    max.iter().fold(vec![Vec::new()], |acc, &m| {
        acc.iter()
            .flat_map(|prefix| {
                divisors(m).into_iter().map(move |d| {
                    let mut v = prefix.clone();
                    v.push(d);
                    v
                })
            })
            .collect()
    })
}

#[test]
fn canonical_homomorphism_for_every_period_choice() {
    let mut checked = 0;
    for (name, d) in corpus() {
        let m = monoid(&d);
        for gammas in gamma_families() {
            let max: Vec<u32> = gammas.iter().map(|g| max_period(&m, g).unwrap()).collect();
            for periods in period_vectors(&max) {
                let sig = build_signature(&m, &gammas, Some(&periods)).unwrap();
                let dec = canonical_decomposition(&m, &sig).unwrap();
                let report = verify_canonical(&dec);
                assert!(report.passed(), "{name} {gammas:?} {periods:?}: {report:?}");
                assert!(check_stabilizers(&dec), "{name} {gammas:?} {periods:?}");
                let k = sig.classes().iter().map(Vec::len).max().unwrap();
                assert_eq!(dec.k(), k);
                checked += 1;
            }
        }
    }
    assert!(checked > 60);
}

#[test]
fn residual_classes_partition_the_monoid() {
    for (name, d) in corpus() {
        let m = monoid(&d);
        for gammas in gamma_families() {
            let sig = build_signature(&m, &gammas, None).unwrap();
            let mut seen = vec![0; m.order()];
            for class in sig.classes() {
                for &x in class {
                    seen[x] += 1;
                }
            }
            assert!(seen.iter().all(|&c| c == 1), "{name} {gammas:?}");
        }
    }
}

#[test]
fn stabilizing_words_have_zero_residual() {
    let mut rng = StdRng::seed_from_u64(7);
    for (name, d) in corpus() {
        let m = monoid(&d);
        let sig = build_signature(&m, &[full_gamma(2)], None).unwrap();
        for _ in 0..1000 {
            let len = rng.gen_range(0..12);
            let w: Vec<usize> = (0..len).map(|_| rng.gen_range(0..2)).collect();
            let x = m.eta_word(&w);
            if m.monoid().elements().any(|t| m.monoid().mul(t, x) == t) {
                assert_eq!(sig.residual_of(&w), 0, "{name} {w:?}");
            }
        }
    }
}

#[test]
fn sink_periods_divide_the_maximum_period() {
    for (name, d) in corpus() {
        let m = monoid(&d);
        let p = max_period(&m, &full_gamma(2)).unwrap();
        let sinks = sink_periods(&cayley_graph(&m));
        assert!(!sinks.is_empty());
        for (_, q) in &sinks {
            assert_eq!(p % q, 0, "{name}");
            assert_eq!(*q, sinks[0].1, "{name}: sinks disagree");
        }
    }
}

#[test]
fn residual_monoids_are_monoids() {
    for (name, d) in corpus() {
        let m = monoid(&d);
        let sig = build_signature(&m, &[full_gamma(2)], None).unwrap();
        let dec = canonical_decomposition(&m, &sig).unwrap();
        for r in 0..sig.periods()[0] as usize {
            let t = residual_monoid(&dec, r).unwrap();
            assert!(t.elements[0].is_identity(), "{name} r={r}");
            for x in &t.elements {
                for y in &t.elements {
                    assert!(t.index_of(&x.then(y)).is_some(), "{name} r={r}");
                }
            }
        }
    }
}

#[test]
fn block_recognizers_agree_with_the_automaton() {
    let mut rng = StdRng::seed_from_u64(2024);
    for (name, d) in corpus() {
        let m = monoid(&d);
        let sig = build_signature(&m, &[full_gamma(2)], None).unwrap();
        let dec = canonical_decomposition(&m, &sig).unwrap();
        let p = sig.periods()[0] as usize;
        let recs: Vec<_> = (0..p)
            .flat_map(|len| all_words(2, len))
            .map(|w| lw_recognizer(&dec, &w).unwrap())
            .collect();
        for _ in 0..500 {
            let rec = &recs[rng.gen_range(0..recs.len())];
            let blocks = rng.gen_range(0..=5);
            let u: Vec<Vec<usize>> = (0..blocks)
                .map(|_| (0..p).map(|_| rng.gen_range(0..2)).collect())
                .collect();
            let whole: Vec<usize> = rec.w.iter().chain(u.iter().flatten()).copied().collect();
            assert_eq!(lw_member(rec, &u).unwrap(), d.accepts(&whole), "{name} {whole:?}");
        }
    }
}

#[test]
fn residual_monoid_maps_onto_block_monoid() {
    for (name, d) in corpus() {
        let minimal = minimize(&d);
        let m = transition_monoid(&minimal, 5000).unwrap();
        let sig = build_signature(&m, &[full_gamma(2)], None).unwrap();
        let dec = canonical_decomposition(&m, &sig).unwrap();
        let p = sig.periods()[0] as usize;
        for len in 0..p {
            for w in all_words(2, len) {
                let rec = lw_recognizer(&dec, &w).unwrap();
                // built from the unminimized automaton on purpose
                let lw = syntactic_monoid_of_lw(&d, &w, p, 5000).unwrap();
                let report = diagram_check(&rec, &lw);
                assert!(report.well_defined, "{name} {w:?}");
                assert!(report.surjective, "{name} {w:?}");
                assert!(report.homomorphism, "{name} {w:?}");
            }
        }
    }
}

#[test]
fn wreath_divisor_is_equivariant() {
    for (name, d) in corpus() {
        let m = monoid(&d);
        for gammas in gamma_families() {
            let sig = build_signature(&m, &gammas, None).unwrap();
            let dec = canonical_decomposition(&m, &sig).unwrap();
            let w = wreath_divisor(&dec).unwrap();
            assert!(w.equivariant && w.group_divides, "{name} {gammas:?}");
            assert_eq!(w.phi_domain.len(), m.order(), "{name}");
        }
    }
}

#[test]
fn function_embedding_of_dihedral_product() {
    let c3 = make_named(NamedKind::Cyclic, 3).unwrap();
    let c2 = make_named(NamedKind::Cyclic, 2).unwrap();
    let inversion = vec![vec![0, 1, 2], vec![0, 2, 1]];
    assert!(function_embedding_check(&c3, &c2, &inversion).unwrap());
    let trivial = vec![vec![0, 1, 2], vec![0, 1, 2]];
    assert!(function_embedding_check(&c3, &c2, &trivial).unwrap());
}
