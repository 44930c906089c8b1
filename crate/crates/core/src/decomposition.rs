//! The canonical embedding of a syntactic monoid into `T_K^G ⋊ G`, the
//! residual monoids it induces, recognizers for block languages, and the
//! wreath-product divisor built from it.
//!
//! `G = C_{P_1} × ⋯ × C_{P_n}` acts on `T_K^G` by shifting arguments:
//! `(n ⊛ f)(y) = f(y + n)`. Products in `T_K^G ⋊ G` are
//! `(f, n)·(g, m) = (y ↦ f(y) then g(y + n), n + m)`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::dfa::{all_words, minimize, Dfa};
use crate::error::{Error, Result};
use crate::monoid::{hom_image_check, Element, FiniteMonoid, Transformation};
use crate::period::PeriodSignature;
use crate::syntactic::{transition_monoid, SyntacticMonoid};

/// Image of one monoid element: a transformation per residual and the
/// element's own residual.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CanImage {
    pub f: Vec<Transformation>,
    pub r: usize,
}

#[derive(Debug, Clone)]
pub struct CanonicalDecomposition {
    monoid: SyntacticMonoid,
    signature: PeriodSignature,
    k: usize,
    /// `position[x] = θ_r⁻¹(x)` with `r = ρ̄(x)`.
    position: Vec<usize>,
    can: Vec<CanImage>,
    /// `add[x][y]` in `G`.
    add: Vec<Vec<usize>>,
}

/// Outcome of [`verify_canonical`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    /// `Can(s)·Can(s') = Can(s·s')` on every coordinate `k < |N_r|`.
    pub homomorphism: bool,
    pub injective: bool,
    pub residual_condition: bool,
    /// The same equality on the full degree-`K` tables, padding included.
    pub padded_exact: bool,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.homomorphism && self.injective && self.residual_condition
    }
}

/// Builds `Can`, with each `θ_r` ordering `N_r` by ascending element index,
/// and verifies it before returning.
pub fn canonical_decomposition(
    m: &SyntacticMonoid,
    sig: &PeriodSignature,
) -> Result<CanonicalDecomposition> {
    let dec = build_unverified(m, sig);
    let report = verify_canonical(&dec);
    if !report.passed() {
        return Err(Error::Verification(format!(
            "canonical homomorphism check failed: {report:?}"
        )));
    }
    Ok(dec)
}

fn build_unverified(m: &SyntacticMonoid, sig: &PeriodSignature) -> CanonicalDecomposition {
    let g = sig.group_order();
    let monoid = m.monoid();
    let k = sig.classes().iter().map(Vec::len).max().unwrap_or(1);
    let mut position = vec![0; m.order()];
    for class in sig.classes() {
        for (i, &x) in class.iter().enumerate() {
            position[x] = i;
        }
    }
    let add: Vec<Vec<usize>> = (0..g).map(|x| (0..g).map(|y| sig.add(x, y)).collect()).collect();
    let can = monoid
        .elements()
        .map(|t| {
            let rt = sig.rho_bar(t);
            let f = (0..g)
                .map(|r| {
                    let class = sig.class(r);
                    let image = (0..k)
                        .map(|i| {
                            if i < class.len() {
                                position[monoid.mul(class[i], t)] as u32
                            } else {
                                i as u32
                            }
                        })
                        .collect();
                    Transformation::new(image).expect("positions stay below K")
                })
                .collect();
            CanImage { f, r: rt }
        })
        .collect();
    CanonicalDecomposition {
        monoid: m.clone(),
        signature: sig.clone(),
        k,
        position,
        can,
        add,
    }
}

impl CanonicalDecomposition {
    pub fn monoid(&self) -> &SyntacticMonoid {
        &self.monoid
    }

    pub fn signature(&self) -> &PeriodSignature {
        &self.signature
    }

    /// `K = max_r |N_r|`.
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn group_order(&self) -> usize {
        self.add.len()
    }

    /// `θ_r` as the ordered list of `N_r`.
    pub fn theta(&self, r: usize) -> &[Element] {
        self.signature.class(r)
    }

    pub fn theta_inverse(&self, x: Element) -> usize {
        self.position[x]
    }

    pub fn can(&self, t: Element) -> &CanImage {
        &self.can[t]
    }

    pub fn images(&self) -> &[CanImage] {
        &self.can
    }

    /// Product in `T_K^G ⋊ G`.
    pub fn mul(&self, a: &CanImage, b: &CanImage) -> CanImage {
        CanImage {
            f: (0..self.group_order())
                .map(|y| a.f[y].then(&b.f[self.add[y][a.r]]))
                .collect(),
            r: self.add[a.r][b.r],
        }
    }

    /// Agreement on the slots that carry an element of `N_r`.
    pub fn live_eq(&self, a: &CanImage, b: &CanImage) -> bool {
        a.r == b.r
            && (0..self.group_order()).all(|y| {
                (0..self.signature.class(y).len()).all(|k| a.f[y].apply(k) == b.f[y].apply(k))
            })
    }

    /// Preimage of an element of the image of `Can`.
    pub fn can_inverse(&self) -> HashMap<&CanImage, Element> {
        self.can.iter().enumerate().map(|(t, c)| (c, t)).collect()
    }

    #[cfg(test)]
    pub(crate) fn corrupt(&mut self, t: Element, r: usize, i: usize, j: usize) {
        self.can[t].f[r].swap_values(i, j);
    }

    fn require_single_full(&self) -> Result<u32> {
        if !self.signature.is_full_alphabet_single() {
            return Err(Error::Scope(
                "residual monoids need exactly one letter set equal to the alphabet".into(),
            ));
        }
        Ok(self.signature.periods()[0])
    }

    pub fn to_export(&self, verified: bool) -> DecompositionExport {
        let sig = &self.signature;
        let theta = (0..self.group_order())
            .map(|r| (sig.vector(r).key(), sig.class(r).to_vec()))
            .collect();
        let can = self
            .can
            .iter()
            .enumerate()
            .map(|(t, c)| {
                let f = c
                    .f
                    .iter()
                    .enumerate()
                    .map(|(r, tau)| (sig.vector(r).key(), tau.image().to_vec()))
                    .collect();
                (
                    t.to_string(),
                    CanExport {
                        f,
                        r: sig.vector(c.r).0,
                    },
                )
            })
            .collect();
        DecompositionExport {
            k: self.k,
            g: sig.periods().to_vec(),
            theta,
            can,
            verified,
        }
    }
}

/// Checks that `Can` is a homomorphism and injective, and that every letter
/// lands on its own residual.
pub fn verify_canonical(dec: &CanonicalDecomposition) -> VerificationReport {
    let monoid = dec.monoid.monoid();
    let identity = dec.can[0].r == 0 && dec.can[0].f.iter().all(Transformation::is_identity);
    let mut homomorphism = identity;
    let mut padded_exact = identity;
    for s in monoid.elements() {
        for t in monoid.elements() {
            let product = dec.mul(&dec.can[s], &dec.can[t]);
            let expected = &dec.can[monoid.mul(s, t)];
            homomorphism &= dec.live_eq(&product, expected);
            padded_exact &= product == *expected;
        }
    }
    let injective = dec.can_inverse().len() == dec.can.len();
    let residual_condition = (0..dec.monoid.num_letters()).all(|a| {
        dec.can[dec.monoid.eta(a)].r == dec.signature.residual_of(&[a])
    });
    VerificationReport {
        homomorphism,
        injective,
        residual_condition,
        padded_exact,
    }
}

/// For all `t, m` with `t·m = t`, the residual of `m` is zero.
pub fn check_stabilizers(dec: &CanonicalDecomposition) -> bool {
    let monoid = dec.monoid.monoid();
    monoid.elements().all(|t| {
        monoid
            .elements()
            .filter(|&m| monoid.mul(t, m) == t)
            .all(|m| dec.can[m].r == 0)
    })
}

/// `T_r = { f(r) : (f, 0) ∈ Can(M) }` with composition (left to right).
#[derive(Debug, Clone)]
pub struct ResidualMonoid {
    pub r: usize,
    pub elements: Vec<Transformation>,
    pub monoid: FiniteMonoid,
    index: HashMap<Transformation, usize>,
}

impl ResidualMonoid {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index_of(&self, tau: &Transformation) -> Option<usize> {
        self.index.get(tau).copied()
    }
}

pub fn residual_monoid(dec: &CanonicalDecomposition, r: usize) -> Result<ResidualMonoid> {
    let p = dec.require_single_full()?;
    if r >= p as usize {
        return Err(Error::Scope(format!("residual {r} is not below the period {p}")));
    }
    let mut elements: Vec<Transformation> = Vec::new();
    let mut index: HashMap<Transformation, usize> = HashMap::new();
    for &t in dec.signature.class(0) {
        let tau = &dec.can[t].f[r];
        if !index.contains_key(tau) {
            index.insert(tau.clone(), elements.len());
            elements.push(tau.clone());
        }
    }
    if !elements.first().is_some_and(Transformation::is_identity) {
        return Err(Error::Verification(format!(
            "residual monoid {r} does not start with the identity"
        )));
    }
    let mut table = vec![vec![0; elements.len()]; elements.len()];
    for (i, x) in elements.iter().enumerate() {
        for (j, y) in elements.iter().enumerate() {
            table[i][j] = *index.get(&x.then(y)).ok_or_else(|| {
                Error::Verification(format!("residual monoid {r} is not closed"))
            })?;
        }
    }
    let names = elements
        .iter()
        .map(|t| if t.is_identity() { "e".to_string() } else { t.to_string() })
        .collect();
    let monoid = FiniteMonoid::from_table(table)?.with_names(names);
    Ok(ResidualMonoid {
        r,
        elements,
        monoid,
        index,
    })
}

/// Recognizer for `L_w = { u ∈ (Σ^P)* : wu ∈ L }` through `T_{ρ(w)}`.
#[derive(Debug, Clone)]
pub struct LwRecognizer {
    pub w: Vec<usize>,
    pub r: usize,
    pub period: usize,
    pub residual: ResidualMonoid,
    /// Blocks of `Σ^P` in lexicographic order.
    pub blocks: Vec<Vec<usize>>,
    /// `η_w` on each block, as an index into `residual`.
    pub block_images: Vec<usize>,
    /// `S ⊆ T_r`.
    pub accepting: BTreeSet<usize>,
    alphabet: Vec<String>,
}

pub fn lw_recognizer(dec: &CanonicalDecomposition, w: &[usize]) -> Result<LwRecognizer> {
    let p = dec.require_single_full()? as usize;
    if w.len() >= p {
        return Err(Error::Scope(format!(
            "prefix of length {} is not shorter than the period {p}",
            w.len()
        )));
    }
    let m = &dec.monoid;
    let r = dec.signature.residual_of(w);
    let residual = residual_monoid(dec, r)?;
    let blocks = all_words(m.num_letters(), p);
    let mut block_images = Vec::with_capacity(blocks.len());
    for b in &blocks {
        let tau = &dec.can[m.eta_word(b)].f[r];
        block_images.push(residual.index_of(tau).ok_or_else(|| {
            Error::Verification("block image outside the residual monoid".into())
        })?);
    }
    let eta_w = m.eta_word(w);
    let theta_r = dec.signature.class(r);
    let start = dec.position[eta_w];
    let accepting = residual
        .elements
        .iter()
        .enumerate()
        .filter(|(_, tau)| m.is_accepting(theta_r[tau.apply(start)]))
        .map(|(i, _)| i)
        .collect();
    Ok(LwRecognizer {
        w: w.to_vec(),
        r,
        period: p,
        residual,
        blocks,
        block_images,
        accepting,
        alphabet: m.alphabet().to_vec(),
    })
}

impl LwRecognizer {
    pub fn block_symbol(&self, b: usize) -> String {
        self.blocks[b].iter().map(|&a| self.alphabet[a].as_str()).collect()
    }

    /// `η_w(u)` for a word over block indices.
    pub fn eta_blocks(&self, u: &[usize]) -> usize {
        self.residual
            .monoid
            .product(u.iter().map(|&b| self.block_images[b]))
    }

    fn block_index(&self, block: &[usize]) -> Result<usize> {
        if block.len() != self.period {
            return Err(Error::BlockLength {
                expected: self.period,
                got: block.len(),
            });
        }
        let k = self.alphabet.len();
        Ok(block.iter().fold(0, |acc, &a| acc * k + a))
    }

    pub fn parse_block(&self, text: &str) -> Result<Vec<usize>> {
        crate::dfa::tokenize(&self.alphabet, text)
    }
}

/// Membership of a block word `u` (each block a word of length `P`).
pub fn lw_member(rec: &LwRecognizer, u: &[Vec<usize>]) -> Result<bool> {
    let mut blocks = Vec::with_capacity(u.len());
    for b in u {
        blocks.push(rec.block_index(b)?);
    }
    Ok(rec.accepting.contains(&rec.eta_blocks(&blocks)))
}

/// Syntactic monoid of `L_w` over the block alphabet, computed from the
/// `P`-step automaton started after reading `w`.
pub fn syntactic_monoid_of_lw(dfa: &Dfa, w: &[usize], period: usize, cap: usize) -> Result<SyntacticMonoid> {
    if w.len() >= period {
        return Err(Error::Scope(format!(
            "prefix of length {} is not shorter than the period {period}",
            w.len()
        )));
    }
    let start = dfa.run_from(dfa.initial(), w);
    let blocks = dfa.block_dfa(start, period)?;
    transition_monoid(&minimize(&blocks), cap)
}

/// The map `η_w(u) ↦ η_{L_w}(u)` from `T_r` to the syntactic monoid of `L_w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagramReport {
    pub well_defined: bool,
    pub surjective: bool,
    pub homomorphism: bool,
    /// `psi[τ]`, when reached.
    pub psi: Vec<Option<Element>>,
}

impl DiagramReport {
    pub fn passed(&self) -> bool {
        self.well_defined && self.surjective && self.homomorphism
    }
}

pub fn diagram_check(rec: &LwRecognizer, lw_monoid: &SyntacticMonoid) -> DiagramReport {
    let t = &rec.residual.monoid;
    let target = lw_monoid.monoid();
    let mut psi: Vec<Option<Element>> = vec![None; t.order()];
    let mut well_defined = lw_monoid.num_letters() == rec.blocks.len();
    if well_defined {
        psi[0] = Some(0);
        let mut queue = std::collections::VecDeque::from([(0usize, 0usize)]);
        while let Some((tau, m)) = queue.pop_front() {
            for (b, &img) in rec.block_images.iter().enumerate() {
                let next = (t.mul(tau, img), target.mul(m, lw_monoid.eta(b)));
                match psi[next.0] {
                    None => {
                        psi[next.0] = Some(next.1);
                        queue.push_back(next);
                    }
                    Some(prev) if prev != next.1 => well_defined = false,
                    Some(_) => {}
                }
            }
        }
    }
    let reached: BTreeSet<Element> = psi.iter().flatten().copied().collect();
    let total = psi.iter().all(Option::is_some);
    let surjective = total && reached.len() == target.order();
    let homomorphism = well_defined && total && {
        let map: Vec<Element> = psi.iter().map(|p| p.unwrap()).collect();
        hom_image_check(t, target, &map)
    };
    DiagramReport {
        well_defined: well_defined && total,
        surjective,
        homomorphism,
        psi,
    }
}

/// Divisor of `(T_K, T_K) ≀ (G, G)` onto `(M, M)`.
#[derive(Debug, Clone)]
pub struct WreathEmbedding {
    /// `(f_t(0), ρ̄(t))` for each element `t`.
    pub phi_domain: Vec<(Transformation, usize)>,
    pub phi: HashMap<(Transformation, usize), Element>,
    pub equivariant: bool,
    /// `ρ̄` reaches every residual, so `G` divides `M`.
    pub group_divides: bool,
    pub phi_injective_inverse: bool,
}

impl WreathEmbedding {
    pub fn passed(&self) -> bool {
        self.equivariant && self.group_divides && self.phi_injective_inverse
    }
}

/// `φ(τ, c) = θ_c(τ(θ_0⁻¹(e)))`, `None` when the position falls outside `N_c`.
fn phi_formula(dec: &CanonicalDecomposition, tau: &Transformation, c: usize) -> Option<Element> {
    let start = dec.position[dec.monoid.monoid().identity()];
    dec.signature.class(c).get(tau.apply(start)).copied()
}

pub fn wreath_divisor(dec: &CanonicalDecomposition) -> Result<WreathEmbedding> {
    let monoid = dec.monoid.monoid();
    let phi_domain: Vec<(Transformation, usize)> = dec
        .can
        .iter()
        .map(|c| (c.f[0].clone(), c.r))
        .collect();
    let phi: HashMap<(Transformation, usize), Element> = phi_domain
        .iter()
        .cloned()
        .enumerate()
        .map(|(t, x)| (x, t))
        .collect();
    let phi_injective_inverse = phi.len() == monoid.order()
        && phi_domain
            .iter()
            .enumerate()
            .all(|(t, (tau, c))| phi_formula(dec, tau, *c) == Some(t));

    // x * (g, r) = (τ then g(c), c + r) for x = (τ, c).
    let mut equivariant = true;
    'outer: for (t, (tau, c)) in phi_domain.iter().enumerate() {
        for (s, m) in dec.can.iter().enumerate() {
            let moved = tau.then(&m.f[*c]);
            let lhs = phi_formula(dec, &moved, dec.add[*c][m.r]);
            if lhs != Some(monoid.mul(t, s)) {
                equivariant = false;
                break 'outer;
            }
        }
    }
    let reached: BTreeSet<usize> = dec.can.iter().map(|c| c.r).collect();
    let group_divides = reached.len() == dec.group_order();
    let out = WreathEmbedding {
        phi_domain,
        phi,
        equivariant,
        group_divides,
        phi_injective_inverse,
    };
    if !out.passed() {
        return Err(Error::Verification("wreath divisor check failed".into()));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanExport {
    pub f: BTreeMap<String, Vec<u32>>,
    pub r: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionExport {
    #[serde(rename = "K")]
    pub k: usize,
    #[serde(rename = "G")]
    pub g: Vec<u32>,
    pub theta: BTreeMap<String, Vec<usize>>,
    pub can: BTreeMap<String, CanExport>,
    pub verified: bool,
}
