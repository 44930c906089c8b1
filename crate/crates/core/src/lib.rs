//! Syntactic monoids of regular languages, their periods, and the canonical
//! decomposition into a semidirect product of a transformation monoid power
//! by an abelian group of residuals.

pub mod decomposition;
pub mod dfa;
pub mod error;
pub mod monoid;
pub mod oracle;
pub mod period;
pub mod probability;
pub mod regex;
pub mod report;
pub mod syntactic;

pub use decomposition::{
    canonical_decomposition, lw_member, lw_recognizer, residual_monoid, verify_canonical,
    wreath_divisor, CanonicalDecomposition, LwRecognizer, ResidualMonoid,
};
pub use dfa::{load_dfa, minimize, regex_to_dfa, Dfa};
pub use error::{Error, Result};
pub use monoid::{Element, FiniteMonoid, Transformation};
pub use period::{build_signature, max_period, PeriodSignature, ResidualVector};
pub use probability::{accumulation_points, markov_chain, mu_exact, ProbabilityReport};
pub use regex::{parse_regex, RegexAst};
pub use report::{analyze, AnalysisOptions, AnalysisReport, Source};
pub use syntactic::{transition_monoid, SyntacticMonoid};
