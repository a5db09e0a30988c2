use crate::lasso::LassoWord;

/// Errors reported by constructors, operations and parsers.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("alphabet mismatch: [{left}] vs [{right}]")]
    AlphabetMismatch { left: String, right: String },

    #[error("alphabet must not be empty")]
    EmptyAlphabet,

    #[error("bad symbol token {0:?}: tokens must be non-empty and free of whitespace, '#', '(' and ')'")]
    BadSymbolToken(String),

    #[error("duplicate symbol {0:?} in alphabet")]
    DuplicateSymbol(String),

    #[error("unknown symbol {0:?}")]
    UnknownSymbol(String),

    #[error("symbol index {index} out of range for alphabet of {size} symbols")]
    SymbolOutOfRange { index: usize, size: usize },

    #[error("state {state} out of range for {count} states")]
    StateOutOfRange { state: usize, count: usize },

    #[error("automaton must have at least one state")]
    NoStates,

    #[error("lasso word must have a non-empty cycle")]
    EmptyCycle,

    #[error("two transitions from state {state} on the same symbol {symbol}: input is not deterministic")]
    Nondeterministic { state: usize, symbol: usize },

    #[error("Muller table entry must be a non-empty state set")]
    EmptyTable,

    #[error("automaton is not trim")]
    NotTrim,

    #[error("transducer is not synchronous: transition {index} does not read and write exactly one symbol")]
    NotSynchronous { index: usize },

    #[error("transducer is not functional: input {input} yields both {out1} and {out2}")]
    NotFunctional {
        input: LassoWord,
        out1: LassoWord,
        out2: LassoWord,
    },

    #[error("input {0} is outside the domain")]
    OutsideDomain(LassoWord),

    #[error("output bound exhausted: at least {} distinct outputs exist", found.len() + 1)]
    BoundExhausted { found: Vec<LassoWord> },

    #[error("bound must be at least one")]
    ZeroBound,

    #[error("language has an isolated point, witness {0}")]
    IsolatedPoint(LassoWord),

    #[error("isolated point {0} of the domain lies outside the prescribed set")]
    IsolatedPointNotCovered(LassoWord),

    #[error("language is empty")]
    EmptyLanguage,

    #[error("first language is not included in the second, witness {0}")]
    NotIncluded(LassoWord),

    #[error("index {index} out of range for an instance of {arity} word pairs")]
    IndexOutOfRange { index: usize, arity: usize },

    #[error("instance word tuples differ in arity: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },

    #[error("instance must contain at least one word pair")]
    EmptyInstance,

    #[error("instance alphabet must have at least two symbols")]
    AlphabetTooSmall,

    #[error("index sequence must be non-empty")]
    EmptySequence,

    #[error("instance words must be non-empty")]
    EmptyInstanceWord,

    #[error("construction exceeds built-in size limits: {0}")]
    TooLarge(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
