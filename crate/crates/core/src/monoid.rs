//! Finite monoids given by multiplication tables.
//!
//! Elements are dense indices `0..order` and the identity is always element
//! `0`. Rows of the table are the left factor: `table[x][y] = x·y`.
//!
//! Transformations compose left to right: for transformations `s` and `t`,
//! `s·t` applies `s` first and then `t`. This matches the way words act on
//! automaton states, so the transition monoid of a DFA is a submonoid of the
//! full transformation monoid with the same product.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};

/// Orders up to this bound get an exhaustive associativity check when a
/// table is produced by closure; user-supplied tables are always checked.
pub const ASSOCIATIVITY_CHECK_LIMIT: usize = 512;

pub type Element = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteMonoid {
    table: Vec<Vec<Element>>,
    generators: Vec<(String, Element)>,
    names: Option<Vec<String>>,
}

impl FiniteMonoid {
    /// Validates a table with identity at `0`, including associativity.
    pub fn from_table(table: Vec<Vec<Element>>) -> Result<Self> {
        let m = Self::from_table_unchecked(table)?;
        m.check_associative()?;
        Ok(m)
    }

    /// Validates shape and identity but skips the cubic associativity check
    /// above [`ASSOCIATIVITY_CHECK_LIMIT`]. For tables built by closure.
    pub(crate) fn from_closure_table(table: Vec<Vec<Element>>) -> Result<Self> {
        let m = Self::from_table_unchecked(table)?;
        if m.order() <= ASSOCIATIVITY_CHECK_LIMIT {
            m.check_associative()?;
        }
        Ok(m)
    }

    fn from_table_unchecked(table: Vec<Vec<Element>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidTable("empty table".into()));
        }
        for row in &table {
            if row.len() != n {
                return Err(Error::InvalidTable("table is not square".into()));
            }
            if row.iter().any(|&v| v >= n) {
                return Err(Error::InvalidTable("entry out of range".into()));
            }
        }
        for (x, row) in table.iter().enumerate() {
            if table[0][x] != x || row[0] != x {
                return Err(Error::InvalidTable(format!(
                    "element 0 is not an identity for {x}"
                )));
            }
        }
        Ok(FiniteMonoid {
            table,
            generators: Vec::new(),
            names: None,
        })
    }

    fn check_associative(&self) -> Result<()> {
        let n = self.order();
        for x in 0..n {
            for y in 0..n {
                let xy = self.table[x][y];
                for z in 0..n {
                    if self.table[xy][z] != self.table[x][self.table[y][z]] {
                        return Err(Error::InvalidTable(format!(
                            "not associative at ({x}, {y}, {z})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Attaches letter-labelled generators; their closure must be everything.
    pub fn with_generators(mut self, generators: Vec<(String, Element)>) -> Result<Self> {
        if generators.iter().any(|&(_, g)| g >= self.order()) {
            return Err(Error::InvalidTable("generator out of range".into()));
        }
        self.generators = generators;
        if !self.generators.is_empty() {
            let gens: Vec<Element> = self.generators.iter().map(|&(_, g)| g).collect();
            if self.closure(&gens).len() != self.order() {
                return Err(Error::InvalidTable("generators do not generate the monoid".into()));
            }
        }
        Ok(self)
    }

    pub fn with_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.order());
        self.names = Some(names);
        self
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> Element {
        0
    }

    #[inline]
    pub fn mul(&self, x: Element, y: Element) -> Element {
        self.table[x][y]
    }

    pub fn table(&self) -> &[Vec<Element>] {
        &self.table
    }

    pub fn generators(&self) -> &[(String, Element)] {
        &self.generators
    }

    pub fn generator(&self, symbol: &str) -> Option<Element> {
        self.generators
            .iter()
            .find(|(s, _)| s == symbol)
            .map(|&(_, g)| g)
    }

    pub fn name(&self, x: Element) -> String {
        match &self.names {
            Some(names) => names[x].clone(),
            None => x.to_string(),
        }
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn elements(&self) -> std::ops::Range<Element> {
        0..self.order()
    }

    /// Product of a sequence of elements, identity for the empty sequence.
    pub fn product<I: IntoIterator<Item = Element>>(&self, items: I) -> Element {
        items.into_iter().fold(0, |acc, x| self.mul(acc, x))
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.order();
        (0..n).all(|x| (0..n).all(|y| self.table[x][y] == self.table[y][x]))
    }

    /// Submonoid generated by `gens` (always contains the identity).
    pub fn closure(&self, gens: &[Element]) -> BTreeSet<Element> {
        let mut seen = BTreeSet::from([0]);
        let mut stack = vec![0];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if seen.insert(y) {
                    stack.push(y);
                }
            }
        }
        seen
    }
}

/// The unique zero element, if any.
pub fn find_zero(m: &FiniteMonoid) -> Option<Element> {
    m.elements()
        .find(|&z| m.elements().all(|s| m.mul(z, s) == z && m.mul(s, z) == z))
}

/// The two-sided principal ideal `M·x·M`.
pub fn principal_ideal(m: &FiniteMonoid, x: Element) -> BTreeSet<Element> {
    let left: BTreeSet<Element> = m.elements().map(|s| m.mul(s, x)).collect();
    left.iter()
        .flat_map(|&sx| m.elements().map(move |t| m.mul(sx, t)))
        .collect()
}

pub fn is_ideal(m: &FiniteMonoid, candidate: &BTreeSet<Element>) -> bool {
    !candidate.is_empty()
        && candidate.iter().all(|&i| {
            m.elements()
                .all(|s| candidate.contains(&m.mul(s, i)) && candidate.contains(&m.mul(i, s)))
        })
}

/// Rees factor monoid `(M \ I) ∪ {ι}`.
///
/// The identity stays at `0`, the remaining elements outside `I` follow in
/// ascending order, and the new zero `ι` is the last element (or the only
/// one when `I = M`).
pub fn rees_factor(m: &FiniteMonoid, ideal: &BTreeSet<Element>) -> Result<FiniteMonoid> {
    if !is_ideal(m, ideal) {
        return Err(Error::NotAnIdeal);
    }
    let kept: Vec<Element> = m.elements().filter(|x| !ideal.contains(x)).collect();
    let zero = kept.len();
    let mut index = vec![zero; m.order()];
    for (i, &x) in kept.iter().enumerate() {
        index[x] = i;
    }
    let n = kept.len() + 1;
    let mut table = vec![vec![zero; n]; n];
    for (i, &x) in kept.iter().enumerate() {
        for (j, &y) in kept.iter().enumerate() {
            table[i][j] = index[m.mul(x, y)];
        }
    }
    let mut names: Vec<String> = kept.iter().map(|&x| m.name(x)).collect();
    names.push("ι".into());
    Ok(FiniteMonoid::from_table(table)?.with_names(names))
}

/// `map(e) = e` and `map(x·y) = map(x)·map(y)` for all `x, y`.
pub fn hom_image_check(src: &FiniteMonoid, dst: &FiniteMonoid, map: &[Element]) -> bool {
    if map.len() != src.order() || map.iter().any(|&v| v >= dst.order()) {
        return false;
    }
    if map[src.identity()] != dst.identity() {
        return false;
    }
    src.elements().all(|x| {
        src.elements()
            .all(|y| map[src.mul(x, y)] == dst.mul(map[x], map[y]))
    })
}

/// Semidirect product `M ⋊ N` for a left action given as `action[n][m] = n*m`.
///
/// The pair `(m, n)` is element `m·|N| + n`, so `(e, e)` is `0`, and
/// `(m1, n1)·(m2, n2) = (m1·(n1*m2), n1·n2)`.
pub fn semidirect_product(
    m: &FiniteMonoid,
    n: &FiniteMonoid,
    action: &[Vec<Element>],
) -> Result<FiniteMonoid> {
    check_action(m, n, action)?;
    let (om, on) = (m.order(), n.order());
    let size = om * on;
    let mut table = vec![vec![0; size]; size];
    for m1 in 0..om {
        for n1 in 0..on {
            for m2 in 0..om {
                for n2 in 0..on {
                    let mm = m.mul(m1, action[n1][m2]);
                    let nn = n.mul(n1, n2);
                    table[m1 * on + n1][m2 * on + n2] = mm * on + nn;
                }
            }
        }
    }
    let names = (0..size)
        .map(|i| format!("({},{})", m.name(i / on), n.name(i % on)))
        .collect();
    Ok(FiniteMonoid::from_closure_table(table)?.with_names(names))
}

fn check_action(m: &FiniteMonoid, n: &FiniteMonoid, action: &[Vec<Element>]) -> Result<()> {
    if action.len() != n.order()
        || action
            .iter()
            .any(|row| row.len() != m.order() || row.iter().any(|&v| v >= m.order()))
    {
        return Err(Error::NotAnAction("table has the wrong shape".into()));
    }
    for x in m.elements() {
        if action[n.identity()][x] != x {
            return Err(Error::NotAnAction(format!("identity moves {x}")));
        }
    }
    for n1 in n.elements() {
        for n2 in n.elements() {
            for x in m.elements() {
                if action[n1][action[n2][x]] != action[n.mul(n1, n2)][x] {
                    return Err(Error::NotAnAction(format!(
                        "{n1}*({n2}*{x}) differs from ({n1}·{n2})*{x}"
                    )));
                }
            }
        }
    }
    for a in n.elements() {
        for x in m.elements() {
            for y in m.elements() {
                if action[a][m.mul(x, y)] != m.mul(action[a][x], action[a][y]) {
                    return Err(Error::NotDistributive(format!(
                        "{a}*({x}·{y}) differs from ({a}*{x})·({a}*{y})"
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Trivial action `n*m = m`.
pub fn trivial_action(m: &FiniteMonoid, n: &FiniteMonoid) -> Vec<Vec<Element>> {
    vec![m.elements().collect(); n.order()]
}

/// Element of `M^N ⋊ N`, with `N` acting on itself from the right.
/// `func[y]` is the value of the function at `y ∈ N`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FunctionPair {
    pub func: Vec<Element>,
    pub shift: Element,
}

/// `(f1, n1)·(f2, n2) = (y ↦ f1(y)·f2(y·n1), n1·n2)`.
pub fn function_pair_mul(
    m: &FiniteMonoid,
    n: &FiniteMonoid,
    a: &FunctionPair,
    b: &FunctionPair,
) -> FunctionPair {
    let func = n
        .elements()
        .map(|y| m.mul(a.func[y], b.func[n.mul(y, a.shift)]))
        .collect();
    FunctionPair {
        func,
        shift: n.mul(a.shift, b.shift),
    }
}

/// The embedding `(m, n) ↦ (n' ↦ n'*m, n)` of `M ⋊ N` into `M^N ⋊ N`.
/// Returns whether it is an injective homomorphism for the given unitary
/// action.
pub fn function_embedding_check(
    m: &FiniteMonoid,
    n: &FiniteMonoid,
    action: &[Vec<Element>],
) -> Result<bool> {
    let product = semidirect_product(m, n, action)?;
    let on = n.order();
    let embed = |idx: Element| FunctionPair {
        func: n.elements().map(|y| action[y][idx / on]).collect(),
        shift: idx % on,
    };
    let images: Vec<FunctionPair> = product.elements().map(embed).collect();
    let distinct: std::collections::HashSet<&FunctionPair> = images.iter().collect();
    if distinct.len() != images.len() {
        return Ok(false);
    }
    let unit = FunctionPair {
        func: vec![m.identity(); on],
        shift: n.identity(),
    };
    if images[0] != unit {
        return Ok(false);
    }
    for x in product.elements() {
        for y in product.elements() {
            if function_pair_mul(m, n, &images[x], &images[y]) != images[product.mul(x, y)] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Total function on `{0..K-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transformation(Vec<u32>);

impl Transformation {
    pub fn new(image: Vec<u32>) -> Result<Self> {
        let k = image.len() as u32;
        if image.iter().any(|&v| v >= k) {
            return Err(Error::InvalidTable("transformation value out of range".into()));
        }
        Ok(Transformation(image))
    }

    pub fn identity(degree: usize) -> Self {
        Transformation((0..degree as u32).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn apply(&self, k: usize) -> usize {
        self.0[k] as usize
    }

    pub fn image(&self) -> &[u32] {
        &self.0
    }

    /// `self` first, then `next`.
    pub fn then(&self, next: &Transformation) -> Transformation {
        Transformation(self.0.iter().map(|&k| next.0[k as usize]).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| i as u32 == v)
    }

    #[cfg(test)]
    pub(crate) fn swap_values(&mut self, i: usize, j: usize) {
        self.0.swap(i, j);
    }
}

impl fmt::Display for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

/// Closes a set of transformations under composition and returns the monoid
/// with the identity first, followed by the remaining elements in the given
/// order of discovery.
pub fn transformation_monoid(
    degree: usize,
    elements: &[Transformation],
) -> Result<(FiniteMonoid, Vec<Transformation>)> {
    let mut all = vec![Transformation::identity(degree)];
    let mut index: HashMap<Transformation, Element> = HashMap::from([(all[0].clone(), 0)]);
    for t in elements {
        if !index.contains_key(t) {
            index.insert(t.clone(), all.len());
            all.push(t.clone());
        }
    }
    let mut i = 0;
    while i < all.len() {
        for j in 0..all.len() {
            for p in [all[i].then(&all[j]), all[j].then(&all[i])] {
                if !index.contains_key(&p) {
                    index.insert(p.clone(), all.len());
                    all.push(p);
                }
            }
        }
        i += 1;
    }
    let table = all
        .iter()
        .map(|x| all.iter().map(|y| index[&x.then(y)]).collect())
        .collect();
    let names = all
        .iter()
        .map(|t| if t.is_identity() { "e".to_string() } else { t.to_string() })
        .collect();
    Ok((FiniteMonoid::from_closure_table(table)?.with_names(names), all))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedKind {
    /// `C_K`
    Cyclic,
    /// `U_K`: non-identity elements are right zeros.
    RightZero,
    /// `Ū_K`: non-identity elements are left zeros.
    LeftZero,
    /// `S_K`
    Symmetric,
    /// `T_K`
    FullTransformation,
}

/// Constructs `C_K`, `U_K`, `Ū_K`, `S_K` or `T_K`.
///
/// `C_K` uses residues `0..K`. `U_K`/`Ū_K` put the identity at `0` and
/// `ι_i` at `i`. `S_K` lists permutations lexicographically (the identity
/// comes first). `T_K` lists the identity first and then the other maps
/// lexicographically. Permutations and maps compose left to right.
pub fn make_named(kind: NamedKind, k: usize) -> Result<FiniteMonoid> {
    if k == 0 {
        return Err(Error::TooLarge("K must be positive".into()));
    }
    match kind {
        NamedKind::Cyclic => {
            let table = (0..k).map(|i| (0..k).map(|j| (i + j) % k).collect()).collect();
            FiniteMonoid::from_closure_table(table)
        }
        NamedKind::RightZero | NamedKind::LeftZero => {
            let n = k + 1;
            let table = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| match (i, j) {
                            (0, j) => j,
                            (i, 0) => i,
                            (i, j) => {
                                if kind == NamedKind::RightZero {
                                    j
                                } else {
                                    i
                                }
                            }
                        })
                        .collect()
                })
                .collect();
            let names = std::iter::once("e".to_string())
                .chain((1..n).map(|i| format!("ι{i}")))
                .collect();
            Ok(FiniteMonoid::from_closure_table(table)?.with_names(names))
        }
        NamedKind::Symmetric | NamedKind::FullTransformation => {
            if k > 6 {
                return Err(Error::TooLarge(format!("K = {k} exceeds 6")));
            }
            let mut maps: Vec<Vec<u32>> = crate::dfa::all_words(k, k)
                .into_iter()
                .map(|w| w.into_iter().map(|v| v as u32).collect())
                .collect();
            if kind == NamedKind::Symmetric {
                maps.retain(|m| m.iter().collect::<BTreeSet<_>>().len() == k);
            }
            let id: Vec<u32> = (0..k as u32).collect();
            let pos = maps.iter().position(|m| *m == id).unwrap();
            let idm = maps.remove(pos);
            maps.insert(0, idm);
            let ts: Vec<Transformation> = maps.into_iter().map(Transformation).collect();
            let index: HashMap<&Transformation, Element> =
                ts.iter().enumerate().map(|(i, t)| (t, i)).collect();
            let table = ts
                .iter()
                .map(|x| ts.iter().map(|y| index[&x.then(y)]).collect())
                .collect();
            let names = ts.iter().map(|t| t.to_string()).collect();
            Ok(FiniteMonoid::from_closure_table(table)?.with_names(names))
        }
    }
}

/// Direct product `M × N` with pair `(m, n)` at index `m·|N| + n`.
pub fn direct_product(m: &FiniteMonoid, n: &FiniteMonoid) -> Result<FiniteMonoid> {
    semidirect_product(m, n, &trivial_action(m, n))
}
