//! Densities `μ_L(ℓ) = |L ∩ Σ^ℓ| / |Σ|^ℓ`, their accumulation points, and
//! zero-one verdicts read off monoid structure.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::decomposition::{lw_recognizer, residual_monoid, CanonicalDecomposition};
use crate::dfa::{all_words, minimize, Dfa, StateId};
use crate::error::{Error, Result};
use crate::monoid::{find_zero, principal_ideal, Element};
use crate::period::{full_gamma, max_period, sink_periods};
use crate::syntactic::{dfa_graph, transition_monoid, SyntacticMonoid, DEFAULT_MONOID_CAP};

pub const DEFAULT_TOL: f64 = 1e-9;
pub const DEFAULT_CAP: usize = 4096;
/// Distance under which two limits are treated as equal.
pub const LIMIT_TOL: f64 = 1e-6;

/// Number of words of length `len` leading from the initial state to each
/// state.
pub fn word_counts(dfa: &Dfa, len: usize) -> Vec<BigUint> {
    let mut counts = vec![BigUint::zero(); dfa.num_states()];
    counts[dfa.initial()] = BigUint::one();
    for _ in 0..len {
        counts = step_counts(dfa, &counts);
    }
    counts
}

fn step_counts(dfa: &Dfa, counts: &[BigUint]) -> Vec<BigUint> {
    let mut next = vec![BigUint::zero(); counts.len()];
    for (q, c) in counts.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for a in 0..dfa.num_letters() {
            next[dfa.step(q, a)] += c;
        }
    }
    next
}

fn density(dfa: &Dfa, counts: &[BigUint], len: usize) -> BigRational {
    let accepted: BigUint = dfa.accepting_states().map(|q| &counts[q]).sum();
    let total = BigUint::from(dfa.num_letters()).pow(len as u32);
    BigRational::new(accepted.into(), total.into())
}

/// `μ_L(len)` exactly.
pub fn mu_exact(dfa: &Dfa, len: usize) -> BigRational {
    density(dfa, &word_counts(dfa, len), len)
}

/// `μ_L(0), …, μ_L(upto)`.
pub fn mu_series(dfa: &Dfa, upto: usize) -> Vec<BigRational> {
    let mut counts = word_counts(dfa, 0);
    let mut out = Vec::with_capacity(upto + 1);
    for len in 0..=upto {
        if len > 0 {
            counts = step_counts(dfa, &counts);
        }
        out.push(density(dfa, &counts, len));
    }
    out
}

/// Uniform random walk on the states of a DFA.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkovChain {
    pub states: Vec<String>,
    pub initial: StateId,
    pub accepting: Vec<StateId>,
    pub matrix: Vec<Vec<BigRational>>,
}

pub fn markov_chain(dfa: &Dfa) -> MarkovChain {
    let n = dfa.num_states();
    let k = dfa.num_letters();
    let share = BigRational::new(1.into(), (k as i64).into());
    let mut matrix = vec![vec![BigRational::zero(); n]; n];
    for (q, row) in matrix.iter_mut().enumerate() {
        for a in 0..k {
            row[dfa.step(q, a)] += &share;
        }
    }
    MarkovChain {
        states: dfa.state_names().to_vec(),
        initial: dfa.initial(),
        accepting: dfa.accepting_states().collect(),
        matrix,
    }
}

impl MarkovChain {
    pub fn rows_are_stochastic(&self) -> bool {
        self.matrix
            .iter()
            .all(|row| row.iter().fold(BigRational::zero(), |acc, x| acc + x).is_one())
    }

    /// `Σ_{q ∈ F} Π^len(q₀, q)`.
    pub fn mu(&self, len: usize) -> BigRational {
        let n = self.states.len();
        let mut dist = vec![BigRational::zero(); n];
        dist[self.initial] = BigRational::one();
        for _ in 0..len {
            let mut next = vec![BigRational::zero(); n];
            for (i, p) in dist.iter().enumerate() {
                if p.is_zero() {
                    continue;
                }
                for (j, x) in self.matrix[i].iter().enumerate() {
                    if !x.is_zero() {
                        next[j] += p * x;
                    }
                }
            }
            dist = next;
        }
        self.accepting
            .iter()
            .fold(BigRational::zero(), |acc, &q| acc + &dist[q])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Accumulation {
    pub r: usize,
    pub mu: f64,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AccumulationPoints {
    pub points: Vec<Accumulation>,
    /// Two residues share a limit.
    pub duplicates: bool,
}

impl AccumulationPoints {
    pub fn values(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.mu).collect()
    }

    pub fn all_converged(&self) -> bool {
        self.points.iter().all(|p| p.converged)
    }

    /// The common limit when every residue has the same one.
    pub fn single(&self) -> Option<f64> {
        let first = self.points.first()?.mu;
        self.points
            .iter()
            .all(|p| (p.mu - first).abs() < LIMIT_TOL)
            .then_some(first)
    }
}

/// Floating-point distribution walk used for limits.
struct Walk<'a> {
    dfa: &'a Dfa,
    dist: Vec<f64>,
    len: usize,
}

impl<'a> Walk<'a> {
    fn new(dfa: &'a Dfa, start: StateId) -> Self {
        let mut dist = vec![0.0; dfa.num_states()];
        dist[start] = 1.0;
        Walk { dfa, dist, len: 0 }
    }

    fn advance(&mut self, steps: usize) {
        let share = 1.0 / self.dfa.num_letters() as f64;
        for _ in 0..steps {
            let mut next = vec![0.0; self.dist.len()];
            for (q, &p) in self.dist.iter().enumerate() {
                if p == 0.0 {
                    continue;
                }
                for a in 0..self.dfa.num_letters() {
                    next[self.dfa.step(q, a)] += p * share;
                }
            }
            self.dist = next;
        }
        self.len += steps;
    }

    fn mu(&self) -> f64 {
        self.dfa.accepting_states().map(|q| self.dist[q]).sum()
    }
}

/// Limit of `μ` along lengths `offset + k·stride` read from `start`.
///
/// Convergence is only tested once the length reaches the number of states,
/// after which transient start-up effects are gone.
fn limit_along(dfa: &Dfa, start: StateId, offset: usize, stride: usize, tol: f64, cap: usize) -> Accumulation {
    let burn_in = dfa.num_states();
    let mut walk = Walk::new(dfa, start);
    walk.advance(offset);
    let mut prev = walk.mu();
    loop {
        if walk.len + stride > cap {
            return Accumulation {
                r: offset,
                mu: prev,
                converged: false,
            };
        }
        walk.advance(stride);
        let cur = walk.mu();
        if walk.len >= burn_in + stride && (cur - prev).abs() < tol {
            return Accumulation {
                r: offset,
                mu: cur,
                converged: true,
            };
        }
        prev = cur;
    }
}

/// Maximum period of `L(dfa)` with respect to the full alphabet.
pub fn full_max_period(dfa: &Dfa) -> Result<u32> {
    let m = transition_monoid(&minimize(dfa), DEFAULT_MONOID_CAP)?;
    max_period(&m, &full_gamma(m.num_letters()))
}

/// `μ_0, …, μ_{P−1}` with `μ_r = lim_k μ_L(r + kP)`; `period` must be the
/// maximum period with respect to the full alphabet.
pub fn accumulation_points(dfa: &Dfa, period: u32, tol: f64, cap: usize) -> Result<AccumulationPoints> {
    let max = full_max_period(dfa)?;
    if period != max {
        return Err(Error::NotMaximumPeriod { given: period, max });
    }
    Ok(accumulation_unchecked(dfa, period as usize, tol, cap))
}

fn accumulation_unchecked(dfa: &Dfa, period: usize, tol: f64, cap: usize) -> AccumulationPoints {
    let points: Vec<Accumulation> = (0..period)
        .map(|r| limit_along(dfa, dfa.initial(), r, period, tol, cap))
        .collect();
    let duplicates = points.iter().enumerate().any(|(i, p)| {
        points[i + 1..]
            .iter()
            .any(|q| (p.mu - q.mu).abs() < LIMIT_TOL)
    });
    AccumulationPoints { points, duplicates }
}

/// Sink components of the DFA with their periods.
pub fn dfa_sinks(dfa: &Dfa) -> Vec<(Vec<String>, u32)> {
    sink_periods(&dfa_graph(dfa))
        .into_iter()
        .map(|(states, p)| {
            (
                states.iter().map(|&q| dfa.state_names()[q].clone()).collect(),
                p,
            )
        })
        .collect()
}

fn near_zero_or_one(x: f64) -> Option<bool> {
    if x.abs() < LIMIT_TOL {
        Some(false)
    } else if (x - 1.0).abs() < LIMIT_TOL {
        Some(true)
    } else {
        None
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BasicVerdict {
    Zero,
    One,
    Neither,
    Oscillating,
}

impl BasicVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            BasicVerdict::Zero => "zero",
            BasicVerdict::One => "one",
            BasicVerdict::Neither => "neither",
            BasicVerdict::Oscillating => "oscillating",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ZeroOneBasic {
    pub verdict: BasicVerdict,
    pub zero: Option<Element>,
    pub accumulation: AccumulationPoints,
}

/// Zero-one verdict from the zero element of the syntactic monoid, checked
/// against the numeric limits.
pub fn zero_one_basic(m: &SyntacticMonoid, dfa: &Dfa, tol: f64, cap: usize) -> Result<ZeroOneBasic> {
    let p = max_period(m, &full_gamma(m.num_letters()))?;
    let accumulation = accumulation_unchecked(dfa, p as usize, tol, cap);
    let zero = find_zero(m.monoid());
    let numeric = accumulation.single().and_then(near_zero_or_one);
    let verdict = match zero {
        Some(z) => {
            let one = m.is_accepting(z);
            if numeric != Some(one) {
                return Err(Error::Verification(format!(
                    "zero element present but limits are {:?}",
                    accumulation.values()
                )));
            }
            if one {
                BasicVerdict::One
            } else {
                BasicVerdict::Zero
            }
        }
        None => {
            if numeric.is_some() {
                return Err(Error::Verification(format!(
                    "no zero element but the limit is {:?}",
                    accumulation.values()
                )));
            }
            if accumulation.single().is_some() {
                BasicVerdict::Neither
            } else {
                BasicVerdict::Oscillating
            }
        }
    };
    Ok(ZeroOneBasic {
        verdict,
        zero,
        accumulation,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ResidualVerdict {
    Zero,
    One,
    Neither,
}

impl ResidualVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            ResidualVerdict::Zero => "zero",
            ResidualVerdict::One => "one",
            ResidualVerdict::Neither => "neither",
        }
    }
}

/// Outcome of the ideal test for one prefix `w`.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroOneResidual {
    pub w: Vec<usize>,
    pub r: usize,
    pub verdict: ResidualVerdict,
    /// A principal ideal of `T_r` inside `S` or disjoint from it.
    pub witness: Option<BTreeSet<usize>>,
    pub witness_names: Vec<String>,
    pub mu_lw: f64,
    pub converged: bool,
}

impl ZeroOneResidual {
    pub fn is_zero_or_one(&self) -> bool {
        self.verdict != ResidualVerdict::Neither
    }
}

fn require_maximum(dec: &CanonicalDecomposition) -> Result<usize> {
    let sig = dec.signature();
    if !sig.is_full_alphabet_single() {
        return Err(Error::Scope(
            "zero-one analysis needs exactly one letter set equal to the alphabet".into(),
        ));
    }
    let (given, max) = (sig.periods()[0], sig.max_periods()[0]);
    if given != max {
        return Err(Error::NotMaximumPeriod { given, max });
    }
    Ok(given as usize)
}

/// Limit of `μ_{L_w}` over block words.
pub fn mu_lw(dfa: &Dfa, w: &[usize], period: usize, tol: f64, cap: usize) -> Accumulation {
    let start = dfa.run_from(dfa.initial(), w);
    let mut acc = limit_along(dfa, start, 0, period, tol, cap);
    acc.r = w.len();
    acc
}

/// Decides whether `μ_{L_w} ∈ {0, 1}` by scanning principal ideals of
/// `T_{ρ(w)}`, and checks the answer against the numeric limit.
pub fn zero_one_residual(
    dec: &CanonicalDecomposition,
    dfa: &Dfa,
    w: &[usize],
    tol: f64,
    cap: usize,
) -> Result<ZeroOneResidual> {
    let period = require_maximum(dec)?;
    let rec = lw_recognizer(dec, w)?;
    let t = &rec.residual.monoid;
    let mut best: Option<(BTreeSet<usize>, ResidualVerdict)> = None;
    for tau in t.elements() {
        let ideal = principal_ideal(t, tau);
        let side = if ideal.is_subset(&rec.accepting) {
            ResidualVerdict::One
        } else if ideal.is_disjoint(&rec.accepting) {
            ResidualVerdict::Zero
        } else {
            continue;
        };
        if best.as_ref().is_none_or(|(b, _)| ideal.len() < b.len()) {
            best = Some((ideal, side));
        }
    }
    let numeric = mu_lw(dfa, w, period, tol, cap);
    let verdict = best.as_ref().map_or(ResidualVerdict::Neither, |(_, v)| *v);
    let expected = match near_zero_or_one(numeric.mu) {
        Some(true) => ResidualVerdict::One,
        Some(false) => ResidualVerdict::Zero,
        None => ResidualVerdict::Neither,
    };
    if verdict != expected {
        return Err(Error::Verification(format!(
            "ideal test gives {} but the limit for prefix {:?} is {}",
            verdict.as_str(),
            dfa.format_word(w),
            numeric.mu
        )));
    }
    let witness_names = best
        .as_ref()
        .map(|(ideal, _)| ideal.iter().map(|&x| t.name(x)).collect())
        .unwrap_or_default();
    Ok(ZeroOneResidual {
        w: w.to_vec(),
        r: rec.r,
        verdict,
        witness: best.map(|(ideal, _)| ideal),
        witness_names,
        mu_lw: numeric.mu,
        converged: numeric.converged,
    })
}

/// Verdicts for every prefix of length below the period, grouped by length.
pub fn zero_one_all(
    dec: &CanonicalDecomposition,
    dfa: &Dfa,
    tol: f64,
    cap: usize,
) -> Result<Vec<Vec<ZeroOneResidual>>> {
    let period = require_maximum(dec)?;
    (0..period)
        .map(|r| {
            all_words(dfa.num_letters(), r)
                .iter()
                .map(|w| zero_one_residual(dec, dfa, w, tol, cap))
                .collect()
        })
        .collect()
}

/// `μ_r ∈ {0, 1}` exactly when every prefix of length `r` gets the same
/// zero-or-one verdict.
pub fn residue_verdict(group: &[ZeroOneResidual]) -> ResidualVerdict {
    match group.first() {
        Some(first) if group.iter().all(|v| v.verdict == first.verdict) => first.verdict,
        _ => ResidualVerdict::Neither,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MuConsistency {
    pub r: usize,
    pub mu_r: f64,
    pub weighted: f64,
    pub consistent: bool,
}

/// Compares `μ_r` with the average of `μ_{L_w}` over `w ∈ Σ^r`.
pub fn mu_consistency(
    dec: &CanonicalDecomposition,
    dfa: &Dfa,
    r: usize,
    tol: f64,
    cap: usize,
) -> Result<MuConsistency> {
    let period = require_maximum(dec)?;
    if r >= period {
        return Err(Error::Scope(format!("residue {r} is not below the period {period}")));
    }
    let mu_r = limit_along(dfa, dfa.initial(), r, period, tol, cap).mu;
    let words = all_words(dfa.num_letters(), r);
    let weighted = words
        .iter()
        .map(|w| mu_lw(dfa, w, period, tol, cap).mu)
        .sum::<f64>()
        / words.len() as f64;
    Ok(MuConsistency {
        r,
        mu_r,
        weighted,
        consistent: (mu_r - weighted).abs() < LIMIT_TOL,
    })
}

/// Orders of `T_0, …, T_{P−1}`.
pub fn residual_orders(dec: &CanonicalDecomposition) -> Result<Vec<usize>> {
    let period = require_maximum(dec)?;
    (0..period)
        .map(|r| residual_monoid(dec, r).map(|t| t.order()))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesEntry {
    pub len: usize,
    pub num: String,
    pub den: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SinkEntry {
    pub states: Vec<String>,
    pub period: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualEntry {
    pub w: String,
    pub verdict: ResidualVerdict,
    pub witness: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroOneEntry {
    pub basic: BasicVerdict,
    pub residual: Vec<ResidualEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbabilityReport {
    pub mu_series: Vec<SeriesEntry>,
    pub period: u32,
    pub accumulation: Vec<Accumulation>,
    pub duplicate_points: bool,
    pub sinks: Vec<SinkEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub zero_one: Option<ZeroOneEntry>,
}

pub fn series_entries(series: &[BigRational]) -> Vec<SeriesEntry> {
    series
        .iter()
        .enumerate()
        .map(|(len, x)| SeriesEntry {
            len,
            num: x.numer().to_string(),
            den: x.denom().to_string(),
        })
        .collect()
}

/// Everything in one report. The zero-one part needs a decomposition over
/// the full alphabet with the maximum period.
pub fn probability_report(
    m: &SyntacticMonoid,
    dfa: &Dfa,
    dec: Option<&CanonicalDecomposition>,
    series_len: usize,
    tol: f64,
    cap: usize,
) -> Result<ProbabilityReport> {
    let basic = zero_one_basic(m, dfa, tol, cap)?;
    let period = basic.accumulation.points.len() as u32;
    let zero_one = match dec {
        Some(dec) => {
            let groups = zero_one_all(dec, dfa, tol, cap)?;
            let residual = groups
                .iter()
                .flatten()
                .map(|v| ResidualEntry {
                    w: dfa.format_word(&v.w),
                    verdict: v.verdict,
                    witness: v.witness.as_ref().map(|_| v.witness_names.clone()),
                })
                .collect();
            Some(ZeroOneEntry {
                basic: basic.verdict,
                residual,
            })
        }
        None => None,
    };
    Ok(ProbabilityReport {
        mu_series: series_entries(&mu_series(dfa, series_len)),
        period,
        accumulation: basic.accumulation.points.clone(),
        duplicate_points: basic.accumulation.duplicates,
        sinks: dfa_sinks(dfa)
            .into_iter()
            .map(|(states, period)| SinkEntry { states, period })
            .collect(),
        zero_one,
    })
}

/// `x` as a float, for display.
pub fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::canonical_decomposition;
    use crate::dfa::regex_to_dfa;
    use crate::period::build_signature;
    use crate::regex::parse_regex;

    const L3: &str = "a((a|b)(a|b))*|b(a|b)*";

    fn dfa(re: &str) -> Dfa {
        regex_to_dfa(&parse_regex(re).unwrap(), &["a".into(), "b".into()]).unwrap()
    }

    fn ratio(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn exact_densities() {
        let d = dfa(L3);
        assert_eq!(mu_exact(&d, 2), ratio(1, 2));
        assert_eq!(mu_exact(&d, 0), ratio(0, 1));
        assert_eq!(mu_exact(&dfa("a*"), 0), ratio(1, 1));
        assert_eq!(mu_exact(&dfa("a(a|b)*"), 5), ratio(1, 2));
    }

    #[test]
    fn markov_matrix_matches_counts() {
        let d = dfa(L3);
        let chain = markov_chain(&d);
        assert!(chain.rows_are_stochastic());
        for len in 0..12 {
            assert_eq!(chain.mu(len), mu_exact(&d, len));
        }
        let row = &chain.matrix[chain.initial];
        let halves = row.iter().filter(|x| **x == ratio(1, 2)).count();
        assert_eq!(halves, 2);
    }

    #[test]
    fn single_state_chain() {
        let chain = markov_chain(&dfa("(a|b)*"));
        assert_eq!(chain.matrix, vec![vec![ratio(1, 1)]]);
    }

    #[test]
    fn accumulation_of_periodic_example() {
        let d = dfa(L3);
        let acc = accumulation_points(&d, 2, DEFAULT_TOL, DEFAULT_CAP).unwrap();
        assert!(acc.all_converged());
        assert!((acc.values()[0] - 0.5).abs() < 1e-6);
        assert!((acc.values()[1] - 1.0).abs() < 1e-6);
        assert!(!acc.duplicates);
        assert_eq!(
            accumulation_points(&d, 1, DEFAULT_TOL, DEFAULT_CAP).unwrap_err(),
            Error::NotMaximumPeriod { given: 1, max: 2 }
        );
    }

    #[test]
    fn accumulation_with_repeated_limit() {
        let d = dfa("a((a|b)(a|b))*|b(a|b)((a|b)(a|b))*");
        let acc = accumulation_points(&d, 2, DEFAULT_TOL, DEFAULT_CAP).unwrap();
        assert!(acc.values().iter().all(|v| (v - 0.5).abs() < 1e-6));
        assert!(acc.duplicates);
    }

    #[test]
    fn burn_in_skips_flat_prefix() {
        // μ is 0 up to length 4, then 1.
        let d = dfa("(a|b)(a|b)(a|b)(a|b)(a|b)(a|b)*");
        let acc = accumulation_points(&d, 1, DEFAULT_TOL, DEFAULT_CAP).unwrap();
        assert!((acc.values()[0] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn sinks_of_periodic_example() {
        let mut periods: Vec<u32> = dfa_sinks(&dfa(L3)).iter().map(|s| s.1).collect();
        periods.sort();
        assert_eq!(periods, [1, 2]);
    }

    #[test]
    fn basic_verdicts() {
        for (re, expected) in [
            ("(a|b)*a(a|b)*", BasicVerdict::One),
            ("a(a|b)*", BasicVerdict::Neither),
            (L3, BasicVerdict::Oscillating),
            ("a*", BasicVerdict::Zero),
        ] {
            let d = dfa(re);
            let m = transition_monoid(&d, 5000).unwrap();
            let v = zero_one_basic(&m, &d, DEFAULT_TOL, DEFAULT_CAP).unwrap();
            assert_eq!(v.verdict, expected, "{re}");
        }
    }

    #[test]
    fn residual_verdicts_of_periodic_example() {
        let d = dfa(L3);
        let m = transition_monoid(&d, 5000).unwrap();
        let sig = build_signature(&m, &[full_gamma(2)], None).unwrap();
        let dec = canonical_decomposition(&m, &sig).unwrap();
        let a = zero_one_residual(&dec, &d, &[0], DEFAULT_TOL, DEFAULT_CAP).unwrap();
        assert_eq!(a.verdict, ResidualVerdict::One);
        assert_eq!(a.witness_names, ["e"]);
        let eps = zero_one_residual(&dec, &d, &[], DEFAULT_TOL, DEFAULT_CAP).unwrap();
        assert_eq!(eps.verdict, ResidualVerdict::Neither);
        assert!(eps.witness.is_none());

        let groups = zero_one_all(&dec, &d, DEFAULT_TOL, DEFAULT_CAP).unwrap();
        assert_eq!(residue_verdict(&groups[0]), ResidualVerdict::Neither);
        assert_eq!(residue_verdict(&groups[1]), ResidualVerdict::One);

        for r in 0..2 {
            assert!(mu_consistency(&dec, &d, r, DEFAULT_TOL, DEFAULT_CAP).unwrap().consistent);
        }
    }

    #[test]
    fn report_json_shape() {
        let d = dfa(L3);
        let m = transition_monoid(&d, 5000).unwrap();
        let sig = build_signature(&m, &[full_gamma(2)], None).unwrap();
        let dec = canonical_decomposition(&m, &sig).unwrap();
        let report = probability_report(&m, &d, Some(&dec), 2, DEFAULT_TOL, DEFAULT_CAP).unwrap();
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["mu_series"][2], serde_json::json!({"len": 2, "num": "1", "den": "2"}));
        assert_eq!(json["period"], 2);
        assert_eq!(json["zero_one"]["basic"], "oscillating");
        assert_eq!(json["zero_one"]["residual"][1]["w"], "a");
        assert_eq!(json["zero_one"]["residual"][1]["verdict"], "one");
    }
}
