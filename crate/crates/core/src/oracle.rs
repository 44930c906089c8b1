//! Naive reference implementations. Nothing here reuses the main
//! algorithms, so agreement with them is independent evidence.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::BigRational;

use crate::dfa::Dfa;
use crate::error::{Error, Result};
use crate::monoid::{Element, FiniteMonoid};
use crate::period::LetterSet;
use crate::regex::RegexAst;
use crate::syntactic::CayleyGraph;

/// Upper bound on words visited by enumerations.
pub const MAX_ENUMERATED_WORDS: u64 = 10_000_000;
const MAX_SEARCH_STEPS: u64 = 50_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_word_length: usize,
    /// `None` bounds cycles by the number of vertices.
    pub max_cycle_length: Option<usize>,
    pub max_monoid_order: usize,
    pub iso_order_cap: usize,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_word_length: 12,
            max_cycle_length: None,
            max_monoid_order: 30,
            iso_order_cap: 16,
        }
    }
}

fn word_space(k: usize, len: usize) -> Result<u64> {
    let mut total: u64 = 1;
    for _ in 0..len {
        total = total.saturating_mul(k as u64);
        if total > MAX_ENUMERATED_WORDS {
            return Err(Error::BudgetExceeded(format!(
                "{k}^{len} words exceed {MAX_ENUMERATED_WORDS}"
            )));
        }
    }
    Ok(total)
}

/// Calls `f` on every word of length `len` over `k` letters.
fn for_each_word(k: usize, len: usize, mut f: impl FnMut(&[usize])) {
    let mut word = vec![0; len];
    loop {
        f(&word);
        let mut i = len;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            word[i] += 1;
            if word[i] < k {
                break;
            }
            word[i] = 0;
        }
    }
}

fn runs_to_accept(dfa: &Dfa, start: usize, word: &[usize]) -> bool {
    let mut q = start;
    for &a in word {
        q = dfa.delta()[q][a];
    }
    dfa.is_accepting(q)
}

/// `|L ∩ Σ^len| / |Σ|^len` by running every word.
pub fn mu_enumerate(dfa: &Dfa, len: usize, budget: &OracleBudget) -> Result<BigRational> {
    if len > budget.max_word_length {
        return Err(Error::BudgetExceeded(format!(
            "length {len} exceeds {}",
            budget.max_word_length
        )));
    }
    let total = word_space(dfa.num_letters(), len)?;
    let mut accepted: u64 = 0;
    for_each_word(dfa.num_letters(), len, |w| {
        if runs_to_accept(dfa, dfa.initial(), w) {
            accepted += 1;
        }
    });
    Ok(BigRational::new(
        BigUint::from(accepted).into(),
        BigUint::from(total).into(),
    ))
}

/// gcd of the `gamma`-weights of all simple cycles, found by depth-first
/// search from each vertex through larger vertices only.
pub fn cycle_gcd(graph: &CayleyGraph, gamma: &LetterSet, budget: &OracleBudget) -> Result<u64> {
    if graph.vertices > budget.max_monoid_order {
        return Err(Error::BudgetExceeded(format!(
            "{} vertices exceed {}",
            graph.vertices, budget.max_monoid_order
        )));
    }
    let max_len = budget.max_cycle_length.unwrap_or(graph.vertices);
    let mut out: Vec<Vec<(usize, u64)>> = vec![Vec::new(); graph.vertices];
    for e in &graph.edges {
        out[e.from].push((e.to, u64::from(gamma.contains(&e.letter))));
    }
    let mut search = CycleSearch {
        out: &out,
        on_path: vec![false; graph.vertices],
        g: 0,
        steps: 0,
        max_len,
    };
    for start in 0..graph.vertices {
        search.on_path[start] = true;
        search.dfs(start, start, 0, 0)?;
        search.on_path[start] = false;
    }
    Ok(search.g)
}

struct CycleSearch<'a> {
    out: &'a [Vec<(usize, u64)>],
    on_path: Vec<bool>,
    g: u64,
    steps: u64,
    max_len: usize,
}

impl CycleSearch<'_> {
    fn dfs(&mut self, start: usize, v: usize, depth: usize, weight: u64) -> Result<()> {
        self.steps += 1;
        if self.steps > MAX_SEARCH_STEPS {
            return Err(Error::BudgetExceeded("cycle enumeration step limit".into()));
        }
        for &(to, w) in &self.out[v] {
            if to == start {
                self.g = self.g.gcd(&(weight + w));
            } else if to > start && !self.on_path[to] && depth + 1 < self.max_len {
                self.on_path[to] = true;
                self.dfs(start, to, depth + 1, weight + w)?;
                self.on_path[to] = false;
            }
        }
        Ok(())
    }
}

/// Greedy generating set: each element not yet generated is added.
fn generating_set(m: &FiniteMonoid) -> Vec<Element> {
    let mut gens = Vec::new();
    let mut reached = BTreeSet::from([m.identity()]);
    for x in m.elements() {
        if reached.contains(&x) {
            continue;
        }
        gens.push(x);
        let mut frontier: Vec<Element> = reached.iter().copied().collect();
        while let Some(y) = frontier.pop() {
            for &g in &gens {
                let z = m.mul(y, g);
                if reached.insert(z) {
                    frontier.push(z);
                }
            }
        }
    }
    gens
}

/// Whether a table-preserving bijection `m1 → m2` exists.
pub fn brute_isomorphic(m1: &FiniteMonoid, m2: &FiniteMonoid, budget: &OracleBudget) -> Result<bool> {
    let cap = budget.iso_order_cap;
    if m1.order() > cap || m2.order() > cap {
        return Err(Error::BudgetExceeded(format!("orders above {cap}")));
    }
    if m1.order() != m2.order() {
        return Ok(false);
    }
    let gens = generating_set(m1);
    let mut images = Vec::with_capacity(gens.len());
    Ok(assign(m1, m2, &gens, &mut images))
}

fn assign(m1: &FiniteMonoid, m2: &FiniteMonoid, gens: &[Element], images: &mut Vec<Element>) -> bool {
    if images.len() == gens.len() {
        return extends_to_isomorphism(m1, m2, gens, images);
    }
    for y in m2.elements() {
        if y == m2.identity() || images.contains(&y) {
            continue;
        }
        images.push(y);
        if assign(m1, m2, gens, images) {
            return true;
        }
        images.pop();
    }
    false
}

fn extends_to_isomorphism(m1: &FiniteMonoid, m2: &FiniteMonoid, gens: &[Element], images: &[Element]) -> bool {
    let mut map: Vec<Option<Element>> = vec![None; m1.order()];
    map[m1.identity()] = Some(m2.identity());
    let mut frontier = vec![m1.identity()];
    while let Some(x) = frontier.pop() {
        let fx = map[x].unwrap();
        for (&g, &h) in gens.iter().zip(images) {
            let (y, fy) = (m1.mul(x, g), m2.mul(fx, h));
            match map[y] {
                None => {
                    map[y] = Some(fy);
                    frontier.push(y);
                }
                Some(prev) if prev != fy => return false,
                Some(_) => {}
            }
        }
    }
    let map: Vec<Element> = map.into_iter().map(|x| x.unwrap()).collect();
    let distinct: BTreeSet<Element> = map.iter().copied().collect();
    distinct.len() == m2.order()
        && m1.elements().all(|x| {
            m1.elements()
                .all(|y| map[m1.mul(x, y)] == m2.mul(map[x], map[y]))
        })
}

/// All `u` made of at most `max_blocks` blocks of length `period` with
/// `w·u` accepted, each `u` flattened to letters.
pub fn lw_enumerate(
    dfa: &Dfa,
    w: &[usize],
    period: usize,
    max_blocks: usize,
    budget: &OracleBudget,
) -> Result<BTreeSet<Vec<usize>>> {
    let longest = period * max_blocks;
    if longest > budget.max_word_length {
        return Err(Error::BudgetExceeded(format!(
            "block words of length {longest} exceed {}",
            budget.max_word_length
        )));
    }
    word_space(dfa.num_letters(), longest)?;
    let mut out = BTreeSet::new();
    for blocks in 0..=max_blocks {
        for_each_word(dfa.num_letters(), blocks * period, |u| {
            let whole: Vec<usize> = w.iter().chain(u).copied().collect();
            if runs_to_accept(dfa, dfa.initial(), &whole) {
                out.insert(u.to_vec());
            }
        });
    }
    Ok(out)
}

/// Direct recursive matching of a regular expression against a word.
pub fn regex_matches(ast: &RegexAst, word: &str) -> bool {
    let chars: Vec<char> = word.chars().collect();
    ends(ast, &chars, 0).contains(&chars.len())
}

/// Positions where a match of `ast` starting at `from` can end.
fn ends(ast: &RegexAst, w: &[char], from: usize) -> BTreeSet<usize> {
    match ast {
        RegexAst::Epsilon => BTreeSet::from([from]),
        RegexAst::Letter(c) => {
            if w.get(from) == Some(c) {
                BTreeSet::from([from + 1])
            } else {
                BTreeSet::new()
            }
        }
        RegexAst::Alt(x, y) => {
            let mut s = ends(x, w, from);
            s.extend(ends(y, w, from));
            s
        }
        RegexAst::Cat(x, y) => ends(x, w, from)
            .into_iter()
            .flat_map(|mid| ends(y, w, mid))
            .collect(),
        RegexAst::Star(x) => star_ends(x, w, from),
        RegexAst::Plus(x) => ends(x, w, from)
            .into_iter()
            .flat_map(|mid| star_ends(x, w, mid))
            .collect(),
        RegexAst::Opt(x) => {
            let mut s = ends(x, w, from);
            s.insert(from);
            s
        }
    }
}

fn star_ends(x: &RegexAst, w: &[char], from: usize) -> BTreeSet<usize> {
    let mut seen = BTreeSet::from([from]);
    let mut frontier = vec![from];
    while let Some(p) = frontier.pop() {
        for q in ends(x, w, p) {
            if seen.insert(q) {
                frontier.push(q);
            }
        }
    }
    seen
}
