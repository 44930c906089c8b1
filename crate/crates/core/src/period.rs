//! Periods of a language with respect to letter subsets.
//!
//! A language has period `P` with respect to `Γ` when every closed walk in
//! the Cayley graph of its syntactic monoid reads a word with a multiple of
//! `P` letters from `Γ`. The set of such `P` is the divisor set of the gcd
//! of all closed-walk `Γ`-weights, which is what [`max_period`] returns.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use crate::dfa::tokenize;
use crate::error::{Error, Result};
use crate::monoid::Element;
use crate::syntactic::{cayley_graph, CayleyGraph, SyntacticMonoid};

/// A non-empty set of letter indices.
pub type LetterSet = BTreeSet<usize>;

/// Parses `"a,b"` (or `"ab"`) against an alphabet.
pub fn parse_gamma(alphabet: &[String], text: &str) -> Result<LetterSet> {
    let mut set = LetterSet::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        for a in tokenize(alphabet, part).map_err(|e| Error::InvalidGamma(e.to_string()))? {
            set.insert(a);
        }
    }
    if set.is_empty() {
        return Err(Error::InvalidGamma(format!("'{text}' names no letters")));
    }
    Ok(set)
}

pub fn full_gamma(num_letters: usize) -> LetterSet {
    (0..num_letters).collect()
}

fn gamma_label(alphabet: &[String], gamma: &LetterSet) -> String {
    let parts: Vec<&str> = gamma.iter().map(|&a| alphabet[a].as_str()).collect();
    format!("{{{}}}", parts.join(","))
}

/// Residual `(r_1, …, r_n)` with `0 ≤ r_i < P_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ResidualVector(pub Vec<u32>);

impl ResidualVector {
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&r| r == 0)
    }

    /// `"r"` for a single component, `"(r1,r2,…)"` otherwise.
    pub fn key(&self) -> String {
        if self.0.len() == 1 {
            self.0[0].to_string()
        } else {
            self.to_string()
        }
    }
}

impl fmt::Display for ResidualVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `r_i = |w|_{Γ_i} mod P_i`.
pub fn residual_of_word(word: &[usize], gammas: &[LetterSet], periods: &[u32]) -> ResidualVector {
    ResidualVector(
        gammas
            .iter()
            .zip(periods)
            .map(|(g, &p)| (word.iter().filter(|a| g.contains(a)).count() as u64 % p as u64) as u32)
            .collect(),
    )
}

/// Same as [`residual_of_word`] for a textual word.
pub fn residual_of_text(
    alphabet: &[String],
    text: &str,
    gammas: &[LetterSet],
    periods: &[u32],
) -> Result<ResidualVector> {
    Ok(residual_of_word(&tokenize(alphabet, text)?, gammas, periods))
}

/// gcd over all strongly connected components of the weighted cycle
/// lengths, computed from spanning-tree potentials. Zero when no closed walk
/// has positive weight.
pub fn weighted_period<F>(graph: &CayleyGraph, weight: F) -> u64
where
    F: Fn(usize) -> i64,
{
    let (components, comp_of) = components(graph);
    let mut gcd = 0u64;
    for (c, members) in components.iter().enumerate() {
        gcd = gcd.gcd(&component_gcd(graph, members, &comp_of, c, &weight));
    }
    gcd
}

fn components(graph: &CayleyGraph) -> (Vec<Vec<usize>>, Vec<usize>) {
    let mut g = DiGraph::<(), ()>::with_capacity(graph.vertices, graph.edges.len());
    let nodes: Vec<_> = (0..graph.vertices).map(|_| g.add_node(())).collect();
    for e in &graph.edges {
        g.add_edge(nodes[e.from], nodes[e.to], ());
    }
    let mut comps: Vec<Vec<usize>> = tarjan_scc(&g)
        .into_iter()
        .map(|c| {
            let mut v: Vec<usize> = c.into_iter().map(|n| n.index()).collect();
            v.sort_unstable();
            v
        })
        .collect();
    comps.sort_by_key(|c| c[0]);
    let mut comp_of = vec![0; graph.vertices];
    for (i, c) in comps.iter().enumerate() {
        for &v in c {
            comp_of[v] = i;
        }
    }
    (comps, comp_of)
}

fn component_gcd<F>(
    graph: &CayleyGraph,
    members: &[usize],
    comp_of: &[usize],
    c: usize,
    weight: &F,
) -> u64
where
    F: Fn(usize) -> i64,
{
    let mut adjacency: Vec<Vec<(usize, i64)>> = vec![Vec::new(); graph.vertices];
    let mut internal = Vec::new();
    for e in &graph.edges {
        if comp_of[e.from] == c && comp_of[e.to] == c {
            let w = weight(e.letter);
            adjacency[e.from].push((e.to, w));
            internal.push((e.from, e.to, w));
        }
    }
    if internal.is_empty() {
        return 0;
    }
    let mut potential: Vec<Option<i64>> = vec![None; graph.vertices];
    potential[members[0]] = Some(0);
    let mut queue = std::collections::VecDeque::from([members[0]]);
    while let Some(u) = queue.pop_front() {
        let pu = potential[u].unwrap();
        for &(v, w) in &adjacency[u] {
            if potential[v].is_none() {
                potential[v] = Some(pu + w);
                queue.push_back(v);
            }
        }
    }
    internal.iter().fold(0u64, |g, &(u, v, w)| {
        let d = potential[u].unwrap() + w - potential[v].unwrap();
        g.gcd(&d.unsigned_abs())
    })
}

/// Largest `P` such that every closed walk of the Cayley graph carries a
/// multiple of `P` letters from `gamma`.
pub fn max_period(m: &SyntacticMonoid, gamma: &LetterSet) -> Result<u32> {
    validate_gamma(m.num_letters(), gamma)?;
    let graph = cayley_graph(m);
    let p = weighted_period(&graph, |a| i64::from(gamma.contains(&a)));
    if p == 0 {
        return Err(Error::InternalNoPositiveCycle);
    }
    Ok(p as u32)
}

fn validate_gamma(num_letters: usize, gamma: &LetterSet) -> Result<()> {
    if gamma.is_empty() {
        return Err(Error::InvalidGamma("empty letter set".into()));
    }
    if gamma.iter().any(|&a| a >= num_letters) {
        return Err(Error::InvalidGamma("letter outside the alphabet".into()));
    }
    Ok(())
}

/// Sink components (no edge leaves them) with their periods, ordered by
/// smallest vertex. A sink without internal edges gets period 0.
pub fn sink_periods(graph: &CayleyGraph) -> Vec<(Vec<usize>, u32)> {
    let (comps, comp_of) = components(graph);
    comps
        .iter()
        .enumerate()
        .filter(|(c, _)| {
            graph
                .edges
                .iter()
                .all(|e| comp_of[e.from] != *c || comp_of[e.to] == *c)
        })
        .map(|(c, members)| {
            let p = component_gcd(graph, members, &comp_of, c, &|_| 1);
            (members.clone(), p as u32)
        })
        .collect()
}

/// Periods `P_1..P_n` for letter sets `Γ_1..Γ_n`, the residual map on the
/// monoid and the residual classes.
///
/// Residual vectors are encoded as indices into `C_{P_1} × ⋯ × C_{P_n}` in
/// lexicographic order (first component most significant).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodSignature {
    alphabet: Vec<String>,
    gammas: Vec<LetterSet>,
    periods: Vec<u32>,
    max_periods: Vec<u32>,
    rho_bar: Vec<usize>,
    classes: Vec<Vec<Element>>,
}

impl PeriodSignature {
    pub fn gammas(&self) -> &[LetterSet] {
        &self.gammas
    }

    pub fn gamma_labels(&self) -> Vec<String> {
        self.gammas.iter().map(|g| gamma_label(&self.alphabet, g)).collect()
    }

    pub fn gamma_symbols(&self) -> Vec<Vec<String>> {
        self.gammas
            .iter()
            .map(|g| g.iter().map(|&a| self.alphabet[a].clone()).collect())
            .collect()
    }

    pub fn periods(&self) -> &[u32] {
        &self.periods
    }

    /// Maximum periods of each letter set.
    pub fn max_periods(&self) -> &[u32] {
        &self.max_periods
    }

    pub fn dims(&self) -> usize {
        self.periods.len()
    }

    /// `|G| = P_1 ⋯ P_n`.
    pub fn group_order(&self) -> usize {
        self.periods.iter().map(|&p| p as usize).product()
    }

    pub fn is_trivial(&self) -> bool {
        self.periods.iter().all(|&p| p == 1)
    }

    /// Whether this is a single period over the full alphabet.
    pub fn is_full_alphabet_single(&self) -> bool {
        self.gammas.len() == 1 && self.gammas[0].len() == self.alphabet.len()
    }

    pub fn vector(&self, index: usize) -> ResidualVector {
        let mut rest = index;
        let mut out = vec![0; self.periods.len()];
        for i in (0..self.periods.len()).rev() {
            let p = self.periods[i] as usize;
            out[i] = (rest % p) as u32;
            rest /= p;
        }
        ResidualVector(out)
    }

    pub fn index(&self, r: &ResidualVector) -> usize {
        r.0.iter()
            .zip(&self.periods)
            .fold(0, |acc, (&ri, &p)| acc * p as usize + ri as usize)
    }

    /// Componentwise sum of two residual indices.
    pub fn add(&self, x: usize, y: usize) -> usize {
        let (a, b) = (self.vector(x), self.vector(y));
        let sum = ResidualVector(
            a.0.iter()
                .zip(&b.0)
                .zip(&self.periods)
                .map(|((&u, &v), &p)| (u + v) % p)
                .collect(),
        );
        self.index(&sum)
    }

    pub fn residual_of(&self, word: &[usize]) -> usize {
        self.index(&residual_of_word(word, &self.gammas, &self.periods))
    }

    /// Residual index of a monoid element.
    pub fn rho_bar(&self, x: Element) -> usize {
        self.rho_bar[x]
    }

    pub fn rho_bar_table(&self) -> &[usize] {
        &self.rho_bar
    }

    /// Elements of `N_r`, ascending.
    pub fn class(&self, r: usize) -> &[Element] {
        &self.classes[r]
    }

    pub fn classes(&self) -> &[Vec<Element>] {
        &self.classes
    }
}

/// Builds the signature. Without explicit periods each `P_i` is the maximum
/// period of `Γ_i`; explicit periods must divide it.
pub fn build_signature(
    m: &SyntacticMonoid,
    gammas: &[LetterSet],
    periods: Option<&[u32]>,
) -> Result<PeriodSignature> {
    if gammas.is_empty() {
        return Err(Error::InvalidGamma("no letter sets given".into()));
    }
    let mut max_periods = Vec::with_capacity(gammas.len());
    for g in gammas {
        max_periods.push(max_period(m, g)?);
    }
    let periods: Vec<u32> = match periods {
        None => max_periods.clone(),
        Some(ps) => {
            if ps.len() != gammas.len() {
                return Err(Error::InvalidGamma(format!(
                    "{} periods for {} letter sets",
                    ps.len(),
                    gammas.len()
                )));
            }
            for ((g, &p), &max) in gammas.iter().zip(ps).zip(&max_periods) {
                if p == 0 || max % p != 0 {
                    return Err(Error::InvalidPeriod {
                        gamma: gamma_label(m.alphabet(), g),
                        period: p,
                        max,
                    });
                }
            }
            ps.to_vec()
        }
    };
    if periods.iter().all(|&p| p == 1) {
        log::warn!("all periods are 1; the decomposition is degenerate");
    }

    let mut sig = PeriodSignature {
        alphabet: m.alphabet().to_vec(),
        gammas: gammas.to_vec(),
        periods,
        max_periods,
        rho_bar: Vec::new(),
        classes: Vec::new(),
    };
    let letter_residuals: Vec<usize> = (0..m.num_letters()).map(|a| sig.residual_of(&[a])).collect();

    // Propagate residuals along generator edges from the identity; any
    // second value for an element means the classes would overlap.
    let monoid = m.monoid();
    let mut rho: Vec<Option<usize>> = vec![None; m.order()];
    rho[0] = Some(0);
    let mut queue = std::collections::VecDeque::from([0]);
    while let Some(x) = queue.pop_front() {
        let rx = rho[x].unwrap();
        for (a, &g) in m.eta_letters().iter().enumerate() {
            let y = monoid.mul(x, g);
            let ry = sig.add(rx, letter_residuals[a]);
            match rho[y] {
                None => {
                    rho[y] = Some(ry);
                    queue.push_back(y);
                }
                Some(prev) if prev != ry => {
                    let (u, v) = (sig.vector(prev), sig.vector(ry));
                    let i = (0..sig.dims()).find(|&i| u.0[i] != v.0[i]).unwrap_or(0);
                    return Err(Error::InvalidPeriod {
                        gamma: gamma_label(m.alphabet(), &sig.gammas[i]),
                        period: sig.periods[i],
                        max: sig.max_periods[i],
                    });
                }
                Some(_) => {}
            }
        }
    }
    sig.rho_bar = rho.into_iter().map(|r| r.expect("generators cover the monoid")).collect();
    let mut classes = vec![Vec::new(); sig.group_order()];
    for x in monoid.elements() {
        classes[sig.rho_bar[x]].push(x);
    }
    sig.classes = classes;
    Ok(sig)
}
