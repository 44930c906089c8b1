//! The full analysis pipeline and its serializable report.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::decomposition::{
    canonical_decomposition, check_stabilizers, diagram_check, lw_recognizer, residual_monoid,
    syntactic_monoid_of_lw, verify_canonical, wreath_divisor, CanonicalDecomposition,
    DecompositionExport, VerificationReport,
};
use crate::dfa::{all_words, inferred_alphabet, load_dfa, minimize, regex_to_dfa, Dfa};
use crate::error::{Error, Result};
use crate::period::{build_signature, full_gamma, parse_gamma, LetterSet, PeriodSignature};
use crate::probability::{probability_report, ProbabilityReport, DEFAULT_CAP, DEFAULT_TOL};
use crate::regex::parse_regex;
use crate::syntactic::{transition_monoid, MonoidExport, SyntacticMonoid, DEFAULT_MONOID_CAP};

/// Where the language comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    Regex(String),
    /// Contents of a DFA document.
    Document(String),
}

/// Builds the DFA for a source. Regexes use `alphabet` when given, else the
/// letters they mention; documents must agree with `alphabet` when given.
pub fn load_source(source: &Source, alphabet: Option<&[String]>) -> Result<Dfa> {
    match source {
        Source::Regex(text) => {
            let ast = parse_regex(text)?;
            let letters = match alphabet {
                Some(a) => a.to_vec(),
                None => inferred_alphabet(&ast),
            };
            regex_to_dfa(&ast, &letters)
        }
        Source::Document(text) => {
            let dfa = load_dfa(text)?;
            if let Some(a) = alphabet {
                let mut wanted = a.to_vec();
                wanted.sort();
                if wanted != dfa.alphabet() {
                    return Err(Error::AlphabetMismatch(format!(
                        "document alphabet {:?} differs from {:?}",
                        dfa.alphabet(),
                        wanted
                    )));
                }
            }
            Ok(dfa)
        }
    }
}

/// Splits `"ab"` or `"a,b"` into symbols.
pub fn parse_alphabet(text: &str) -> Vec<String> {
    if text.contains(',') {
        text.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()
    } else {
        text.chars().map(String::from).collect()
    }
}

pub fn parse_periods(text: &str) -> Result<Vec<u32>> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<u32>()
                .ok()
                .filter(|&p| p > 0)
                .ok_or_else(|| Error::Format(format!("invalid period '{s}'")))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisOptions {
    /// Letter sets as text (`"a,b"`); empty means the full alphabet.
    pub gammas: Vec<String>,
    pub periods: Option<Vec<u32>>,
    pub tol: f64,
    /// Longest length used when estimating limits.
    pub cap: usize,
    pub monoid_cap: usize,
    /// Exact densities are listed for lengths `0..=series_len`.
    pub series_len: usize,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            gammas: Vec::new(),
            periods: None,
            tol: DEFAULT_TOL,
            cap: DEFAULT_CAP,
            monoid_cap: DEFAULT_MONOID_CAP,
            series_len: 10,
        }
    }
}

/// Minimal DFA and its syntactic monoid.
pub fn monoid_of(dfa: &Dfa, monoid_cap: usize) -> Result<(Dfa, SyntacticMonoid)> {
    let minimal = minimize(dfa);
    let m = transition_monoid(&minimal, monoid_cap)?;
    Ok((minimal, m))
}

pub fn parse_gammas(alphabet: &[String], gammas: &[String]) -> Result<Vec<LetterSet>> {
    if gammas.is_empty() {
        return Ok(vec![full_gamma(alphabet.len())]);
    }
    gammas.iter().map(|g| parse_gamma(alphabet, g)).collect()
}

pub fn signature_of(m: &SyntacticMonoid, opts: &AnalysisOptions) -> Result<PeriodSignature> {
    let gammas = parse_gammas(m.alphabet(), &opts.gammas)?;
    if let Some(p) = &opts.periods {
        if p.len() != gammas.len() {
            return Err(Error::Format(format!(
                "{} periods given for {} letter sets",
                p.len(),
                gammas.len()
            )));
        }
    }
    build_signature(m, &gammas, opts.periods.as_deref())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignatureExport {
    pub gammas: Vec<Vec<String>>,
    pub periods: Vec<u32>,
    pub max_periods: Vec<u32>,
    pub classes: BTreeMap<String, Vec<usize>>,
}

pub fn signature_export(sig: &PeriodSignature) -> SignatureExport {
    SignatureExport {
        gammas: sig.gamma_symbols(),
        periods: sig.periods().to_vec(),
        max_periods: sig.max_periods().to_vec(),
        classes: (0..sig.group_order())
            .map(|r| (sig.vector(r).key(), sig.class(r).to_vec()))
            .collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidualEntry {
    pub r: usize,
    pub order: usize,
    pub elements: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecognizerEntry {
    pub w: String,
    pub r: usize,
    pub accepting: Vec<String>,
    pub lw_monoid_order: usize,
    pub diagram: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WreathEntry {
    pub equivariant: bool,
    pub group_divides: bool,
    pub phi_size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationEntry {
    pub homomorphism: bool,
    pub injective: bool,
    pub residual_condition: bool,
    pub padded_exact: bool,
    pub stabilizers: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub alphabet: Vec<String>,
    pub dfa_states: usize,
    pub minimal_states: usize,
    pub monoid: MonoidExport,
    pub signature: SignatureExport,
    pub decomposition: DecompositionExport,
    pub verification: VerificationEntry,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub residual_monoids: Vec<ResidualEntry>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub recognizers: Vec<RecognizerEntry>,
    pub wreath: WreathEntry,
    pub probability: ProbabilityReport,
    pub warnings: Vec<String>,
}

/// Everything computed by [`analyze`].
#[derive(Debug, Clone)]
pub struct Analysis {
    pub dfa: Dfa,
    pub minimal: Dfa,
    pub monoid: SyntacticMonoid,
    pub decomposition: CanonicalDecomposition,
    pub verification: VerificationReport,
    pub report: AnalysisReport,
}

/// The decomposition is in scope for residual monoids and zero-one tests.
pub fn in_residual_scope(dec: &CanonicalDecomposition) -> bool {
    let sig = dec.signature();
    sig.is_full_alphabet_single() && sig.periods() == sig.max_periods()
}

pub fn analyze(dfa: &Dfa, opts: &AnalysisOptions) -> Result<Analysis> {
    let (minimal, m) = monoid_of(dfa, opts.monoid_cap)?;
    let sig = signature_of(&m, opts)?;
    let mut warnings = Vec::new();
    if sig.is_trivial() {
        warnings.push("period is trivial: every period is 1".to_string());
    }
    let dec = canonical_decomposition(&m, &sig)?;
    let verification = verify_canonical(&dec);
    let stabilizers = check_stabilizers(&dec);
    if !stabilizers {
        return Err(Error::Verification("an element fixing another has nonzero residual".into()));
    }

    let mut residual_monoids = Vec::new();
    let mut recognizers = Vec::new();
    let scoped = in_residual_scope(&dec);
    if scoped {
        let period = sig.periods()[0] as usize;
        for r in 0..period {
            let t = residual_monoid(&dec, r)?;
            residual_monoids.push(ResidualEntry {
                r,
                order: t.order(),
                elements: (0..t.order()).map(|x| t.monoid.name(x)).collect(),
            });
        }
        for len in 0..period {
            for w in all_words(m.num_letters(), len) {
                let rec = lw_recognizer(&dec, &w)?;
                let lw = syntactic_monoid_of_lw(&minimal, &w, period, opts.monoid_cap)?;
                let diagram = diagram_check(&rec, &lw);
                if !diagram.passed() {
                    return Err(Error::Verification(format!(
                        "no surjective homomorphism onto the block monoid for prefix '{}'",
                        minimal.format_word(&w)
                    )));
                }
                recognizers.push(RecognizerEntry {
                    w: minimal.format_word(&w),
                    r: rec.r,
                    accepting: rec.accepting.iter().map(|&x| rec.residual.monoid.name(x)).collect(),
                    lw_monoid_order: lw.order(),
                    diagram: true,
                });
            }
        }
    }

    let wreath = wreath_divisor(&dec)?;
    let probability = probability_report(
        &m,
        dfa,
        scoped.then_some(&dec),
        opts.series_len,
        opts.tol,
        opts.cap,
    )?;
    if probability.accumulation.iter().any(|a| !a.converged) {
        warnings.push(format!("limits not converged within length {}", opts.cap));
    }

    let report = AnalysisReport {
        alphabet: dfa.alphabet().to_vec(),
        dfa_states: dfa.num_states(),
        minimal_states: minimal.num_states(),
        monoid: m.to_export(),
        signature: signature_export(&sig),
        decomposition: dec.to_export(verification.passed()),
        verification: VerificationEntry {
            homomorphism: verification.homomorphism,
            injective: verification.injective,
            residual_condition: verification.residual_condition,
            padded_exact: verification.padded_exact,
            stabilizers,
        },
        residual_monoids,
        recognizers,
        wreath: WreathEntry {
            equivariant: wreath.equivariant,
            group_divides: wreath.group_divides,
            phi_size: wreath.phi_domain.len(),
        },
        probability,
        warnings,
    };
    Ok(Analysis {
        dfa: dfa.clone(),
        minimal,
        monoid: m,
        decomposition: dec,
        verification,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alphabet_and_period_parsing() {
        assert_eq!(parse_alphabet("ab"), ["a", "b"]);
        assert_eq!(parse_alphabet("x1,y2"), ["x1", "y2"]);
        assert_eq!(parse_periods("2,2").unwrap(), [2, 2]);
        assert!(parse_periods("2,0").is_err());
        assert!(parse_periods("x").is_err());
    }

    #[test]
    fn periodic_example_report() {
        let dfa = load_source(&Source::Regex("a((a|b)(a|b))*|b(a|b)*".into()), None).unwrap();
        let a = analyze(&dfa, &AnalysisOptions::default()).unwrap();
        let r = &a.report;
        assert_eq!(r.monoid.order, 5);
        assert_eq!(r.signature.periods, [2]);
        assert_eq!(r.decomposition.k, 3);
        assert_eq!(r.residual_monoids.iter().map(|t| t.order).collect::<Vec<_>>(), [3, 1]);
        assert_eq!(r.recognizers.len(), 3);
        assert!(r.wreath.equivariant);
        assert!((r.probability.accumulation[0].mu - 0.5).abs() < 1e-6);
        assert!((r.probability.accumulation[1].mu - 1.0).abs() < 1e-6);
        assert!(r.warnings.is_empty());
    }

    #[test]
    fn trivial_period_warns() {
        let dfa = load_source(&Source::Regex("(a|b)*".into()), None).unwrap();
        let a = analyze(&dfa, &AnalysisOptions::default()).unwrap();
        assert_eq!(a.report.warnings.len(), 1);
        assert_eq!(a.report.decomposition.k, 1);
    }

    #[test]
    fn periods_must_match_gammas() {
        let dfa = load_source(&Source::Regex("((a|b)(a|b))*".into()), None).unwrap();
        let opts = AnalysisOptions {
            periods: Some(vec![2, 2]),
            ..AnalysisOptions::default()
        };
        assert!(matches!(analyze(&dfa, &opts), Err(Error::Format(_))));
    }

    #[test]
    fn document_alphabet_is_checked() {
        let doc = r#"{"alphabet":["a"],"states":["s"],"initial":"s","accepting":["s"],
            "transitions":[{"from":"s","on":"a","to":"s"}]}"#;
        let src = Source::Document(doc.into());
        assert!(load_source(&src, None).is_ok());
        assert!(matches!(
            load_source(&src, Some(&["a".into(), "b".into()])),
            Err(Error::AlphabetMismatch(_))
        ));
    }
}
