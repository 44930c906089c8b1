//! Complete deterministic automata: construction from regular expressions,
//! minimization, and the JSON document format.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::regex::RegexAst;

/// Index of a state inside a [`Dfa`].
pub type StateId = usize;

/// A complete DFA over an ordered alphabet.
///
/// Symbols are strings so that block alphabets (words of a fixed length used
/// as single letters) share the same representation as ordinary letters.
/// Words are passed around as slices of letter indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Vec<String>,
    state_names: Vec<String>,
    initial: StateId,
    accepting: Vec<bool>,
    /// `delta[q][a]`
    delta: Vec<Vec<StateId>>,
}

impl Dfa {
    /// Builds a DFA from raw parts, checking that `delta` is total and in range.
    pub fn new(
        alphabet: Vec<String>,
        state_names: Vec<String>,
        initial: StateId,
        accepting: Vec<bool>,
        delta: Vec<Vec<StateId>>,
    ) -> Result<Self> {
        if alphabet.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        let n = state_names.len();
        if n == 0 {
            return Err(Error::Format("a DFA needs at least one state".into()));
        }
        if initial >= n {
            return Err(Error::UnknownState(initial.to_string()));
        }
        if accepting.len() != n || delta.len() != n {
            return Err(Error::Format("state count mismatch".into()));
        }
        for (q, row) in delta.iter().enumerate() {
            if row.len() != alphabet.len() {
                let symbol = alphabet.get(row.len()).cloned().unwrap_or_default();
                return Err(Error::PartialTransitionFunction {
                    state: state_names[q].clone(),
                    symbol,
                });
            }
            if let Some(&bad) = row.iter().find(|&&t| t >= n) {
                return Err(Error::UnknownState(bad.to_string()));
            }
        }
        Ok(Dfa {
            alphabet,
            state_names,
            initial,
            accepting,
            delta,
        })
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn num_letters(&self) -> usize {
        self.alphabet.len()
    }

    pub fn num_states(&self) -> usize {
        self.delta.len()
    }

    pub fn state_names(&self) -> &[String] {
        &self.state_names
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn is_accepting(&self, q: StateId) -> bool {
        self.accepting[q]
    }

    pub fn accepting_states(&self) -> impl Iterator<Item = StateId> + '_ {
        (0..self.num_states()).filter(|&q| self.accepting[q])
    }

    pub fn step(&self, q: StateId, letter: usize) -> StateId {
        self.delta[q][letter]
    }

    pub fn delta(&self) -> &[Vec<StateId>] {
        &self.delta
    }

    pub fn run_from(&self, mut q: StateId, word: &[usize]) -> StateId {
        for &a in word {
            q = self.delta[q][a];
        }
        q
    }

    pub fn accepts(&self, word: &[usize]) -> bool {
        self.accepting[self.run_from(self.initial, word)]
    }

    pub fn letter_index(&self, symbol: &str) -> Result<usize> {
        self.alphabet
            .iter()
            .position(|s| s == symbol)
            .ok_or_else(|| Error::UnknownSymbol(symbol.to_string()))
    }

    pub fn parse_word(&self, text: &str) -> Result<Vec<usize>> {
        tokenize(&self.alphabet, text)
    }

    pub fn format_word(&self, word: &[usize]) -> String {
        word.iter().map(|&a| self.alphabet[a].as_str()).collect()
    }

    /// States reachable from the initial state, in canonical BFS order.
    fn bfs_order(&self) -> Vec<StateId> {
        let mut seen = vec![false; self.num_states()];
        let mut order = vec![self.initial];
        seen[self.initial] = true;
        let mut head = 0;
        while head < order.len() {
            let q = order[head];
            head += 1;
            for &t in &self.delta[q] {
                if !seen[t] {
                    seen[t] = true;
                    order.push(t);
                }
            }
        }
        order
    }

    /// Drops unreachable states and renumbers the rest in BFS order.
    /// State names are kept.
    pub fn trim(&self) -> Dfa {
        self.renumber(&self.bfs_order(), false)
    }

    pub fn unreachable_count(&self) -> usize {
        self.num_states() - self.bfs_order().len()
    }

    fn renumber(&self, order: &[StateId], numeric_names: bool) -> Dfa {
        let mut new_id = vec![usize::MAX; self.num_states()];
        for (i, &q) in order.iter().enumerate() {
            new_id[q] = i;
        }
        let delta = order
            .iter()
            .map(|&q| self.delta[q].iter().map(|&t| new_id[t]).collect())
            .collect();
        let state_names = if numeric_names {
            (0..order.len()).map(|i| i.to_string()).collect()
        } else {
            order.iter().map(|&q| self.state_names[q].clone()).collect()
        };
        Dfa {
            alphabet: self.alphabet.clone(),
            state_names,
            initial: new_id[self.initial],
            accepting: order.iter().map(|&q| self.accepting[q]).collect(),
            delta,
        }
    }

    /// DFA over the block alphabet `Σ^block_len` (blocks in lexicographic
    /// order of letter indices), started at `start`.
    pub fn block_dfa(&self, start: StateId, block_len: usize) -> Result<Dfa> {
        let blocks = all_words(self.num_letters(), block_len);
        let alphabet = if block_len == 0 {
            // A zero-length block is a single letter that does nothing.
            vec![String::new()]
        } else {
            blocks.iter().map(|b| self.format_word(b)).collect()
        };
        let delta = (0..self.num_states())
            .map(|q| blocks.iter().map(|b| self.run_from(q, b)).collect())
            .collect();
        Dfa::new(
            alphabet,
            self.state_names.clone(),
            start,
            self.accepting.clone(),
            delta,
        )
    }
}

/// Splits `text` into letter indices. Symbols are tried as prefixes, longest
/// first, so single-character alphabets tokenize character by character.
pub fn tokenize(alphabet: &[String], text: &str) -> Result<Vec<usize>> {
    let mut order: Vec<usize> = (0..alphabet.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(alphabet[i].len()));
    let mut rest = text;
    let mut word = Vec::new();
    while !rest.is_empty() {
        let hit = order
            .iter()
            .copied()
            .find(|&i| !alphabet[i].is_empty() && rest.starts_with(&alphabet[i]));
        match hit {
            Some(i) => {
                word.push(i);
                rest = &rest[alphabet[i].len()..];
            }
            None => {
                let c = rest.chars().next().unwrap();
                return Err(Error::UnknownSymbol(c.to_string()));
            }
        }
    }
    Ok(word)
}

/// All words of length `len` over `k` letters in lexicographic order.
pub fn all_words(k: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..k).map(move |a| {
                    let mut v = w.clone();
                    v.push(a);
                    v
                })
            })
            .collect();
    }
    out
}

/// Language-equivalent minimal complete DFA with states numbered in BFS
/// order from the initial state (letters in alphabet order).
pub fn minimize(dfa: &Dfa) -> Dfa {
    let dfa = dfa.trim();
    let n = dfa.num_states();
    let mut class: Vec<usize> = (0..n).map(|q| usize::from(dfa.accepting[q])).collect();
    let mut num_classes = class.iter().collect::<BTreeSet<_>>().len();
    loop {
        let mut ids: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
        let next: Vec<usize> = (0..n)
            .map(|q| {
                let sig = (class[q], dfa.delta[q].iter().map(|&t| class[t]).collect());
                let len = ids.len();
                *ids.entry(sig).or_insert(len)
            })
            .collect();
        let count = ids.len();
        class = next;
        if count == num_classes {
            break;
        }
        num_classes = count;
    }
    let mut rep = vec![usize::MAX; num_classes];
    for q in 0..n {
        if rep[class[q]] == usize::MAX {
            rep[class[q]] = q;
        }
    }
    let quotient = Dfa {
        alphabet: dfa.alphabet.clone(),
        state_names: (0..num_classes).map(|i| i.to_string()).collect(),
        initial: class[dfa.initial],
        accepting: rep.iter().map(|&q| dfa.accepting[q]).collect(),
        delta: rep
            .iter()
            .map(|&q| dfa.delta[q].iter().map(|&t| class[t]).collect())
            .collect(),
    };
    quotient.renumber(&quotient.bfs_order(), true)
}

/// Alphabet from the letters of a regular expression, sorted.
pub fn inferred_alphabet(ast: &RegexAst) -> Vec<String> {
    ast.letters().into_iter().map(|c| c.to_string()).collect()
}

/// Thompson construction, subset construction with completion, then
/// minimization.
pub fn regex_to_dfa(ast: &RegexAst, alphabet: &[String]) -> Result<Dfa> {
    if alphabet.is_empty() {
        return Err(Error::EmptyAlphabet);
    }
    let mut sorted: Vec<String> = alphabet.to_vec();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != alphabet.len() {
        return Err(Error::Format("duplicate symbol in alphabet".into()));
    }
    for c in ast.letters() {
        if !sorted.iter().any(|s| *s == c.to_string()) {
            return Err(Error::AlphabetMismatch(c.to_string()));
        }
    }
    let mut nfa = Nfa::default();
    let (start, end) = nfa.build(ast, &sorted);
    Ok(minimize(&nfa.determinize(start, end, sorted)))
}

#[derive(Default)]
struct Nfa {
    eps: Vec<Vec<usize>>,
    moves: Vec<Vec<(usize, usize)>>,
}

impl Nfa {
    fn add_state(&mut self) -> usize {
        self.eps.push(Vec::new());
        self.moves.push(Vec::new());
        self.eps.len() - 1
    }

    /// Returns the (entry, exit) pair of the fragment for `ast`.
    fn build(&mut self, ast: &RegexAst, alphabet: &[String]) -> (usize, usize) {
        match ast {
            RegexAst::Letter(c) => {
                let (s, e) = (self.add_state(), self.add_state());
                let a = alphabet.iter().position(|x| *x == c.to_string()).unwrap();
                self.moves[s].push((a, e));
                (s, e)
            }
            RegexAst::Epsilon => {
                let (s, e) = (self.add_state(), self.add_state());
                self.eps[s].push(e);
                (s, e)
            }
            RegexAst::Alt(l, r) => {
                let (s, e) = (self.add_state(), self.add_state());
                let (ls, le) = self.build(l, alphabet);
                let (rs, re) = self.build(r, alphabet);
                self.eps[s].extend([ls, rs]);
                self.eps[le].push(e);
                self.eps[re].push(e);
                (s, e)
            }
            RegexAst::Cat(l, r) => {
                let (ls, le) = self.build(l, alphabet);
                let (rs, re) = self.build(r, alphabet);
                self.eps[le].push(rs);
                (ls, re)
            }
            RegexAst::Star(c) | RegexAst::Plus(c) | RegexAst::Opt(c) => {
                let (s, e) = (self.add_state(), self.add_state());
                let (cs, ce) = self.build(c, alphabet);
                self.eps[s].push(cs);
                self.eps[ce].push(e);
                if !matches!(ast, RegexAst::Plus(_)) {
                    self.eps[s].push(e);
                }
                if !matches!(ast, RegexAst::Opt(_)) {
                    self.eps[ce].push(cs);
                }
                (s, e)
            }
        }
    }

    fn closure(&self, set: &mut BTreeSet<usize>) {
        let mut stack: Vec<usize> = set.iter().copied().collect();
        while let Some(q) = stack.pop() {
            for &t in &self.eps[q] {
                if set.insert(t) {
                    stack.push(t);
                }
            }
        }
    }

    fn determinize(&self, start: usize, end: usize, alphabet: Vec<String>) -> Dfa {
        let k = alphabet.len();
        let mut first = BTreeSet::from([start]);
        self.closure(&mut first);
        let mut ids: BTreeMap<BTreeSet<usize>, usize> = BTreeMap::new();
        let mut sets = vec![first.clone()];
        ids.insert(first, 0);
        let mut delta: Vec<Vec<usize>> = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            let mut row = Vec::with_capacity(k);
            for a in 0..k {
                let mut next: BTreeSet<usize> = sets[i]
                    .iter()
                    .flat_map(|&q| self.moves[q].iter())
                    .filter(|(b, _)| *b == a)
                    .map(|&(_, t)| t)
                    .collect();
                self.closure(&mut next);
                let id = match ids.get(&next) {
                    Some(&id) => id,
                    None => {
                        let id = sets.len();
                        ids.insert(next.clone(), id);
                        sets.push(next);
                        queue.push_back(id);
                        id
                    }
                };
                row.push(id);
            }
            if delta.len() <= i {
                delta.resize(i + 1, Vec::new());
            }
            delta[i] = row;
        }
        let n = sets.len();
        Dfa {
            alphabet,
            state_names: (0..n).map(|i| i.to_string()).collect(),
            initial: 0,
            accepting: sets.iter().map(|s| s.contains(&end)).collect(),
            delta,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DfaDocument {
    pub alphabet: Vec<String>,
    pub states: Vec<String>,
    pub initial: String,
    pub accepting: Vec<String>,
    pub transitions: Vec<TransitionDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransitionDoc {
    pub from: String,
    pub on: String,
    pub to: String,
}

/// Parses and validates a DFA document. The alphabet is sorted; unreachable
/// states are removed with a warning.
pub fn load_dfa(document: &str) -> Result<Dfa> {
    let doc: DfaDocument =
        serde_json::from_str(document).map_err(|e| Error::Format(e.to_string()))?;
    dfa_from_document(&doc)
}

pub fn dfa_from_document(doc: &DfaDocument) -> Result<Dfa> {
    let mut alphabet = doc.alphabet.clone();
    alphabet.sort();
    alphabet.dedup();
    if alphabet.len() != doc.alphabet.len() {
        return Err(Error::Format("duplicate symbol in alphabet".into()));
    }
    if alphabet.is_empty() {
        return Err(Error::EmptyAlphabet);
    }
    if alphabet.iter().any(|s| s.is_empty()) {
        return Err(Error::Format("empty symbol in alphabet".into()));
    }
    let mut index: HashMap<&str, usize> = HashMap::new();
    for (i, name) in doc.states.iter().enumerate() {
        if index.insert(name.as_str(), i).is_some() {
            return Err(Error::Format(format!("duplicate state '{name}'")));
        }
    }
    if doc.states.is_empty() {
        return Err(Error::Format("a DFA needs at least one state".into()));
    }
    let lookup = |name: &str| {
        index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownState(name.to_string()))
    };
    let initial = lookup(&doc.initial)?;
    let mut accepting = vec![false; doc.states.len()];
    for name in &doc.accepting {
        accepting[lookup(name)?] = true;
    }
    let mut delta: Vec<Vec<Option<usize>>> = vec![vec![None; alphabet.len()]; doc.states.len()];
    for t in &doc.transitions {
        let from = lookup(&t.from)?;
        let to = lookup(&t.to)?;
        let a = alphabet
            .iter()
            .position(|s| *s == t.on)
            .ok_or_else(|| Error::UnknownSymbol(t.on.clone()))?;
        if delta[from][a].replace(to).is_some() {
            return Err(Error::Format(format!(
                "duplicate transition from '{}' on '{}'",
                t.from, t.on
            )));
        }
    }
    let mut total = Vec::with_capacity(delta.len());
    for (q, row) in delta.into_iter().enumerate() {
        let mut out = Vec::with_capacity(row.len());
        for (a, t) in row.into_iter().enumerate() {
            match t {
                Some(t) => out.push(t),
                None => {
                    return Err(Error::PartialTransitionFunction {
                        state: doc.states[q].clone(),
                        symbol: alphabet[a].clone(),
                    })
                }
            }
        }
        total.push(out);
    }
    let dfa = Dfa::new(alphabet, doc.states.clone(), initial, accepting, total)?;
    let dropped = dfa.unreachable_count();
    if dropped > 0 {
        log::warn!("removed {dropped} unreachable state(s)");
        return Ok(dfa.trim());
    }
    Ok(dfa)
}

impl Dfa {
    pub fn to_document(&self) -> DfaDocument {
        let mut transitions = Vec::new();
        for q in 0..self.num_states() {
            for a in 0..self.num_letters() {
                transitions.push(TransitionDoc {
                    from: self.state_names[q].clone(),
                    on: self.alphabet[a].clone(),
                    to: self.state_names[self.delta[q][a]].clone(),
                });
            }
        }
        DfaDocument {
            alphabet: self.alphabet.clone(),
            states: self.state_names.clone(),
            initial: self.state_names[self.initial].clone(),
            accepting: self
                .accepting_states()
                .map(|q| self.state_names[q].clone())
                .collect(),
            transitions,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regex::parse_regex;

    fn ab() -> Vec<String> {
        vec!["a".into(), "b".into()]
    }

    fn build(re: &str) -> Dfa {
        regex_to_dfa(&parse_regex(re).unwrap(), &ab()).unwrap()
    }

    #[test]
    fn even_length_language_has_two_state_cycle() {
        let d = build("((a|b)(a|b))*");
        assert_eq!(d.num_states(), 2);
        assert!(d.is_accepting(d.initial()));
        for a in 0..2 {
            assert_eq!(d.step(0, a), 1);
            assert_eq!(d.step(1, a), 0);
        }
    }

    #[test]
    fn single_letter_needs_a_sink() {
        let d = build("a");
        assert_eq!(d.num_states(), 3);
        assert_eq!(d.accepting_states().count(), 1);
    }

    #[test]
    fn periodic_example_is_four_states() {
        let d = build("a((a|b)(a|b))*|b(a|b)*");
        assert_eq!(d.num_states(), 4);
        assert!(!d.accepts(&[]));
        assert!(d.accepts(&[0]));
        assert!(!d.accepts(&[0, 1]));
        assert!(d.accepts(&[1, 0]));
    }

    #[test]
    fn minimize_merges_equivalent_states() {
        let d = Dfa::new(
            vec!["a".into()],
            vec!["x".into(), "y".into()],
            0,
            vec![true, true],
            vec![vec![1], vec![0]],
        )
        .unwrap();
        let m = minimize(&d);
        assert_eq!(m.num_states(), 1);
        assert!(m.accepts(&[0, 0, 0]));
    }

    #[test]
    fn alphabet_mismatch() {
        let err = regex_to_dfa(&parse_regex("ac").unwrap(), &ab()).unwrap_err();
        assert_eq!(err, Error::AlphabetMismatch("c".into()));
        let err = regex_to_dfa(&parse_regex("a").unwrap(), &[]).unwrap_err();
        assert_eq!(err, Error::EmptyAlphabet);
    }

    #[test]
    fn explicit_alphabet_matters() {
        // aΣ* over {a,b}: the letter b has to be declared.
        let d = regex_to_dfa(&parse_regex("a(a|b)*").unwrap(), &ab()).unwrap();
        assert!(d.accepts(&d.parse_word("abba").unwrap()));
        assert!(!d.accepts(&d.parse_word("ba").unwrap()));
    }

    #[test]
    fn block_dfa_reads_two_letters_at_once() {
        let d = build("a((a|b)(a|b))*|b(a|b)*");
        let after_a = d.step(d.initial(), 0);
        let blocks = d.block_dfa(after_a, 2).unwrap();
        assert_eq!(blocks.alphabet(), &["aa", "ab", "ba", "bb"]);
        assert!(blocks.accepts(&[]));
        assert!(blocks.accepts(&[1, 2, 3]));
    }

    #[test]
    fn parse_word_tokenizes() {
        let d = build("a");
        assert_eq!(d.parse_word("aba").unwrap(), vec![0, 1, 0]);
        assert!(matches!(d.parse_word("ac"), Err(Error::UnknownSymbol(_))));
        assert_eq!(d.format_word(&[1, 0]), "ba");
    }
}
