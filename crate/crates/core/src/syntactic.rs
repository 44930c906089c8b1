//! Syntactic monoids as transition monoids of minimal DFAs, and their
//! Cayley graphs.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::dfa::Dfa;
use crate::error::{Error, Result};
use crate::monoid::{Element, FiniteMonoid};

pub const DEFAULT_MONOID_CAP: usize = 5000;

/// A syntactic monoid together with the syntactic morphism on letters and
/// the image of the language.
#[derive(Debug, Clone)]
pub struct SyntacticMonoid {
    monoid: FiniteMonoid,
    /// `eta[a]` is the image of letter `a` (alphabet order).
    eta: Vec<Element>,
    alphabet: Vec<String>,
    accepting_image: BTreeSet<Element>,
    /// Shortest word (in BFS order) reaching each element.
    words: Vec<Vec<usize>>,
    /// Each element as a map on the states of the source DFA.
    actions: Vec<Vec<usize>>,
}

impl SyntacticMonoid {
    pub fn monoid(&self) -> &FiniteMonoid {
        &self.monoid
    }

    pub fn order(&self) -> usize {
        self.monoid.order()
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn num_letters(&self) -> usize {
        self.alphabet.len()
    }

    pub fn eta(&self, letter: usize) -> Element {
        self.eta[letter]
    }

    pub fn eta_letters(&self) -> &[Element] {
        &self.eta
    }

    /// Image of a word under the syntactic morphism.
    pub fn eta_word(&self, word: &[usize]) -> Element {
        word.iter()
            .fold(self.monoid.identity(), |acc, &a| self.monoid.mul(acc, self.eta[a]))
    }

    pub fn accepting_image(&self) -> &BTreeSet<Element> {
        &self.accepting_image
    }

    pub fn is_accepting(&self, x: Element) -> bool {
        self.accepting_image.contains(&x)
    }

    pub fn accepts(&self, word: &[usize]) -> bool {
        self.is_accepting(self.eta_word(word))
    }

    /// A shortest representative word for `x`.
    pub fn word_of(&self, x: Element) -> &[usize] {
        &self.words[x]
    }

    pub fn element_name(&self, x: Element) -> String {
        self.monoid.name(x)
    }

    /// `x` as a map on the states of the DFA it was computed from.
    pub fn action(&self, x: Element) -> &[usize] {
        &self.actions[x]
    }

    pub fn to_export(&self) -> MonoidExport {
        MonoidExport {
            order: self.order(),
            identity: self.monoid.identity(),
            table: self.monoid.table().to_vec(),
            generators: self
                .alphabet
                .iter()
                .cloned()
                .zip(self.eta.iter().copied())
                .collect(),
            accepting_image: self.accepting_image.iter().copied().collect(),
            names: self.monoid.names().map(|n| n.to_vec()),
        }
    }
}

/// Transition monoid of `dfa` (which should be minimal for the result to be
/// the syntactic monoid).
///
/// Element `0` is the identity; the rest are numbered in BFS order of right
/// multiplication by letter images, letters in alphabet order.
pub fn transition_monoid(dfa: &Dfa, cap: usize) -> Result<SyntacticMonoid> {
    let n = dfa.num_states();
    let k = dfa.num_letters();
    let letters: Vec<Vec<usize>> = (0..k)
        .map(|a| (0..n).map(|q| dfa.step(q, a)).collect())
        .collect();

    let identity: Vec<usize> = (0..n).collect();
    let mut actions = vec![identity.clone()];
    let mut words: Vec<Vec<usize>> = vec![Vec::new()];
    let mut parent: Vec<(Element, usize)> = vec![(0, usize::MAX)];
    let mut index: HashMap<Vec<usize>, Element> = HashMap::from([(identity, 0)]);
    let mut right: Vec<Vec<Element>> = Vec::new();
    let mut head = 0;
    while head < actions.len() {
        let mut row = Vec::with_capacity(k);
        for (a, letter) in letters.iter().enumerate().take(k) {
            let next: Vec<usize> = actions[head].iter().map(|&q| letter[q]).collect();
            let id = match index.get(&next) {
                Some(&id) => id,
                None => {
                    let id = actions.len();
                    if id >= cap {
                        return Err(Error::MonoidTooLarge { cap });
                    }
                    index.insert(next.clone(), id);
                    actions.push(next);
                    let mut w = words[head].clone();
                    w.push(a);
                    words.push(w);
                    parent.push((head, a));
                    id
                }
            };
            row.push(id);
        }
        right.push(row);
        head += 1;
    }

    let order = actions.len();
    // x·y = (x·parent(y))·a where y = parent(y)·a, filled in BFS order of y.
    let mut table = vec![vec![0; order]; order];
    for (x, row) in table.iter_mut().enumerate() {
        row[0] = x;
        for y in 1..order {
            let (p, a) = parent[y];
            row[y] = right[row[p]][a];
        }
    }
    let eta: Vec<Element> = (0..k).map(|a| right[0][a]).collect();
    let names = words
        .iter()
        .map(|w| {
            if w.is_empty() {
                "e".to_string()
            } else {
                dfa.format_word(w)
            }
        })
        .collect();
    let alphabet = dfa.alphabet().to_vec();
    let monoid = FiniteMonoid::from_closure_table(table)?
        .with_names(names)
        .with_generators(alphabet.iter().cloned().zip(eta.iter().copied()).collect())?;
    let accepting_image = (0..order)
        .filter(|&x| dfa.is_accepting(actions[x][dfa.initial()]))
        .collect();
    Ok(SyntacticMonoid {
        monoid,
        eta,
        alphabet,
        accepting_image,
        words,
        actions,
    })
}

/// Labelled edge `from --symbol--> to`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub from: usize,
    pub letter: usize,
    pub to: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyGraph {
    pub vertices: usize,
    pub labels: Vec<String>,
    pub alphabet: Vec<String>,
    pub edges: Vec<Edge>,
}

pub fn cayley_graph(m: &SyntacticMonoid) -> CayleyGraph {
    let mut edges = Vec::with_capacity(m.order() * m.num_letters());
    for s in m.monoid().elements() {
        for (a, &g) in m.eta_letters().iter().enumerate() {
            edges.push(Edge {
                from: s,
                letter: a,
                to: m.monoid().mul(s, g),
            });
        }
    }
    CayleyGraph {
        vertices: m.order(),
        labels: m.monoid().elements().map(|x| m.element_name(x)).collect(),
        alphabet: m.alphabet().to_vec(),
        edges,
    }
}

/// The transition graph of a DFA viewed the same way.
pub fn dfa_graph(dfa: &Dfa) -> CayleyGraph {
    let mut edges = Vec::new();
    for q in 0..dfa.num_states() {
        for a in 0..dfa.num_letters() {
            edges.push(Edge {
                from: q,
                letter: a,
                to: dfa.step(q, a),
            });
        }
    }
    CayleyGraph {
        vertices: dfa.num_states(),
        labels: dfa.state_names().to_vec(),
        alphabet: dfa.alphabet().to_vec(),
        edges,
    }
}

impl CayleyGraph {
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph cayley {\n");
        for v in 0..self.vertices {
            let _ = writeln!(out, "  {v} [label=\"{}\"];", escape(&self.labels[v]));
        }
        for e in &self.edges {
            let _ = writeln!(
                out,
                "  {} -> {} [label=\"{}\"];",
                e.from,
                e.to,
                escape(&self.alphabet[e.letter])
            );
        }
        out.push_str("}\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Multiplication-table export.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoidExport {
    pub order: usize,
    pub identity: usize,
    pub table: Vec<Vec<usize>>,
    pub generators: BTreeMap<String, usize>,
    pub accepting_image: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}
