use thiserror::Error;

/// Everything that can go wrong inside the library.
///
/// Input problems (bad regex, malformed DFA document, unsupported request)
/// are distinguished from verification failures, which indicate that a
/// constructed object violated an algebraic identity it must satisfy.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("symbol '{0}' is not part of the alphabet")]
    AlphabetMismatch(String),

    #[error("alphabet must contain at least one symbol")]
    EmptyAlphabet,

    #[error("invalid DFA document: {0}")]
    Format(String),

    #[error("missing transition from state '{state}' on symbol '{symbol}'")]
    PartialTransitionFunction { state: String, symbol: String },

    #[error("unknown state '{0}'")]
    UnknownState(String),

    #[error("unknown symbol '{0}'")]
    UnknownSymbol(String),

    #[error("monoid order exceeds the cap of {cap}")]
    MonoidTooLarge { cap: usize },

    #[error("requested monoid is too large: {0}")]
    TooLarge(String),

    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),

    #[error("element set is not an ideal")]
    NotAnIdeal,

    #[error("action is not a left action: {0}")]
    NotAnAction(String),

    #[error("action is not distributive: {0}")]
    NotDistributive(String),

    #[error("period {period} for letter set {gamma} does not divide the maximum period {max}")]
    InvalidPeriod { gamma: String, period: u32, max: u32 },

    #[error("invalid letter subset: {0}")]
    InvalidGamma(String),

    #[error("period {given} is not the maximum period {max} with respect to the full alphabet")]
    NotMaximumPeriod { given: u32, max: u32 },

    #[error("operation requires a single period over the full alphabet: {0}")]
    Scope(String),

    #[error("block of length {got} where length {expected} was required")]
    BlockLength { expected: usize, got: usize },

    #[error("oracle budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("no closed walk with positive weight was found")]
    InternalNoPositiveCycle,

    #[error("verification failed: {0}")]
    Verification(String),
}

impl Error {
    /// True for failures of an identity that the constructions guarantee.
    pub fn is_verification_failure(&self) -> bool {
        matches!(
            self,
            Error::Verification(_) | Error::InternalNoPositiveCycle
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
