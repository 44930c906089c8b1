mod common;

use std::collections::BTreeSet;

use common::{fixture, regex, L3};
use num_rational::BigRational;
use permon_core::decomposition::{
    canonical_decomposition, lw_member, lw_recognizer, residual_monoid, syntactic_monoid_of_lw,
    wreath_divisor,
};
use permon_core::dfa::minimize;
use permon_core::monoid::{
    direct_product, make_named, semidirect_product, NamedKind,
};
use permon_core::oracle::{brute_isomorphic, cycle_gcd, lw_enumerate, OracleBudget};
use permon_core::period::{build_signature, full_gamma, max_period};
use permon_core::probability::{
    accumulation_points, dfa_sinks, markov_chain, mu_exact, zero_one_residual, ResidualVerdict,
    DEFAULT_CAP, DEFAULT_TOL,
};
use permon_core::syntactic::{cayley_graph, transition_monoid, SyntacticMonoid};
use permon_core::Dfa;

fn monoid(d: &Dfa) -> SyntacticMonoid {
    transition_monoid(&minimize(d), 5000).unwrap()
}

fn set(xs: &[usize]) -> BTreeSet<usize> {
    xs.iter().copied().collect()
}

fn half() -> BigRational {
    BigRational::new(1.into(), 2.into())
}

/// `C_3 ⋊ C_2` with `C_2` acting by inversion.
fn dihedral() -> permon_core::FiniteMonoid {
    let c3 = make_named(NamedKind::Cyclic, 3).unwrap();
    let c2 = make_named(NamedKind::Cyclic, 2).unwrap();
    let action = vec![vec![0, 1, 2], vec![0, 2, 1]];
    semidirect_product(&c3, &c2, &action).unwrap()
}

#[test]
fn parity_language() {
    let d = fixture("a1.json");
    let m = monoid(&d);
    assert_eq!(m.order(), 4);
    let c2 = make_named(NamedKind::Cyclic, 2).unwrap();
    let klein = direct_product(&c2, &c2).unwrap();
    assert!(brute_isomorphic(m.monoid(), &klein, &OracleBudget::default()).unwrap());
    for g in [set(&[0]), set(&[1]), set(&[0, 1])] {
        assert_eq!(max_period(&m, &g).unwrap(), 2);
    }
    let sig = build_signature(&m, &[set(&[0]), set(&[1])], None).unwrap();
    let dec = canonical_decomposition(&m, &sig).unwrap();
    assert_eq!(dec.k(), 1);
    // bijective onto T_1^{C2×C2} ⋊ (C2×C2), which has 4 elements
    let residues: BTreeSet<usize> = dec.images().iter().map(|c| c.r).collect();
    assert_eq!(residues.len(), 4);
    assert_eq!(dec.images().len(), 4);
}

#[test]
fn symmetric_group_language() {
    let d = fixture("a2.json");
    let m = monoid(&d);
    assert_eq!(m.order(), 6);
    let b = OracleBudget::default();
    assert!(brute_isomorphic(m.monoid(), &dihedral(), &b).unwrap());
    let s3 = make_named(NamedKind::Symmetric, 3).unwrap();
    assert!(brute_isomorphic(m.monoid(), &s3, &b).unwrap());
    let c6 = make_named(NamedKind::Cyclic, 6).unwrap();
    assert!(!brute_isomorphic(m.monoid(), &c6, &b).unwrap());

    assert_eq!(max_period(&m, &set(&[0])).unwrap(), 2);
    assert_eq!(max_period(&m, &set(&[1])).unwrap(), 1);
    assert_eq!(max_period(&m, &set(&[0, 1])).unwrap(), 1);
    let g = cayley_graph(&m);
    assert_eq!(cycle_gcd(&g, &set(&[1]), &b).unwrap(), 1);
    assert_eq!(cycle_gcd(&g, &set(&[0, 1]), &b).unwrap(), 1);

    let sig = build_signature(&m, &[set(&[0])], None).unwrap();
    let dec = canonical_decomposition(&m, &sig).unwrap();
    assert_eq!(dec.k(), 3);
    assert_eq!(wreath_divisor(&dec).unwrap().phi_domain.len(), 6);
}

#[test]
fn periodic_language_structure() {
    let d = fixture("a3.json");
    assert_eq!(d.num_states(), 4);
    let m = monoid(&d);
    assert_eq!(m.order(), 5);
    assert_eq!(max_period(&m, &full_gamma(2)).unwrap(), 2);
    let sig = build_signature(&m, &[full_gamma(2)], None).unwrap();
    let dec = canonical_decomposition(&m, &sig).unwrap();
    assert_eq!(dec.k(), 3);

    let t1 = residual_monoid(&dec, 1).unwrap();
    assert_eq!(t1.order(), 1);
    let t0 = residual_monoid(&dec, 0).unwrap();
    let lu2 = make_named(NamedKind::LeftZero, 2).unwrap();
    assert!(brute_isomorphic(&t0.monoid, &lu2, &OracleBudget::default()).unwrap());
}

#[test]
fn periodic_language_markov_chain() {
    let d = fixture("a3.json");
    let mut sinks = dfa_sinks(&d);
    sinks.sort();
    assert_eq!(
        sinks,
        vec![
            (vec!["q2".to_string(), "q3".to_string()], 2),
            (vec!["q4".to_string()], 1)
        ]
    );
    let chain = markov_chain(&d);
    let z = BigRational::from_integer(0.into());
    let o = BigRational::from_integer(1.into());
    let expected = vec![
        vec![z.clone(), half(), z.clone(), half()],
        vec![z.clone(), z.clone(), o.clone(), z.clone()],
        vec![z.clone(), o.clone(), z.clone(), z.clone()],
        vec![z.clone(), z.clone(), z.clone(), o.clone()],
    ];
    assert_eq!(chain.matrix, expected);
    assert_eq!(mu_exact(&d, 2), half());
    let acc = accumulation_points(&d, 2, DEFAULT_TOL, DEFAULT_CAP).unwrap();
    assert!((acc.values()[0] - 0.5).abs() < 1e-6);
    assert!((acc.values()[1] - 1.0).abs() < 1e-6);
}

#[test]
fn periodic_language_zero_one() {
    let d = fixture("a3.json");
    let m = monoid(&d);
    let sig = build_signature(&m, &[full_gamma(2)], None).unwrap();
    let dec = canonical_decomposition(&m, &sig).unwrap();
    for w in [vec![0], vec![1]] {
        let v = zero_one_residual(&dec, &d, &w, DEFAULT_TOL, DEFAULT_CAP).unwrap();
        assert_eq!(v.verdict, ResidualVerdict::One);
        assert_eq!(v.witness_names, ["e"]);
    }
    let v = zero_one_residual(&dec, &d, &[], DEFAULT_TOL, DEFAULT_CAP).unwrap();
    assert_eq!(v.verdict, ResidualVerdict::Neither);
}

#[test]
fn periodic_language_block_languages() {
    let d = fixture("a3.json");
    let m = monoid(&d);
    let sig = build_signature(&m, &[full_gamma(2)], None).unwrap();
    let dec = canonical_decomposition(&m, &sig).unwrap();
    let b = OracleBudget::default();
    assert_eq!(
        lw_enumerate(&d, &[], 2, 1, &b).unwrap(),
        BTreeSet::from([vec![1, 0], vec![1, 1]])
    );
    let rec = lw_recognizer(&dec, &[]).unwrap();
    assert!(lw_member(&rec, &[vec![1, 0]]).unwrap());
    assert!(!lw_member(&rec, &[vec![0, 0]]).unwrap());
    assert_eq!(rec.accepting.len(), 1);

    let rec_a = lw_recognizer(&dec, &[0]).unwrap();
    assert_eq!(rec_a.accepting.len(), rec_a.residual.order());
    assert_eq!(syntactic_monoid_of_lw(&d, &[0], 2, 100).unwrap().order(), 1);
}

#[test]
fn even_length_language() {
    let d = regex("((a|b)(a|b))*");
    let m = monoid(&d);
    let c2 = make_named(NamedKind::Cyclic, 2).unwrap();
    assert!(brute_isomorphic(m.monoid(), &c2, &OracleBudget::default()).unwrap());
    assert_eq!(max_period(&m, &full_gamma(2)).unwrap(), 2);
}

#[test]
fn starts_with_a_has_density_half() {
    let d = regex("a(a|b)*");
    for len in 1..=20 {
        assert_eq!(mu_exact(&d, len), half(), "length {len}");
    }
}

#[test]
fn single_accumulation_value_with_period_two() {
    let d = regex("a((a|b)(a|b))*|b(a|b)((a|b)(a|b))*");
    assert_eq!(max_period(&monoid(&d), &full_gamma(2)).unwrap(), 2);
    let acc = accumulation_points(&d, 2, DEFAULT_TOL, DEFAULT_CAP).unwrap();
    for v in acc.values() {
        assert!((v - 0.5).abs() < 1e-6);
    }
}

#[test]
fn regex_and_figure_agree() {
    let from_regex = monoid(&regex(L3));
    let from_figure = monoid(&fixture("a3.json"));
    assert_eq!(from_regex.to_export(), from_figure.to_export());
}
