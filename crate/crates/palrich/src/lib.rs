//! Palindromic richness toolkit for finite words.
//!
//! A finite word of length `n` contains at most `n + 1` distinct palindromic
//! factors, the empty word included; words attaining that bound are *rich*.
//! Everything in this crate is built around that bound:
//!
//! - [`word`]: alphabets, words, occurrence scans, and extremal palindromic
//!   prefixes/suffixes
//! - [`eertree`]: the online palindromic tree, the linear-time engine behind
//!   palindrome counting and per-prefix suffix traces
//! - [`richness`]: richness reports, complete returns, and an independent
//!   checker for each known characterization of rich words, plus the
//!   exhaustive cross-validation harness that makes them falsify one another
//! - [`complexity`]: factor and palindromic complexity, and the identity
//!   `P(n) + P(n+1) = C(n+1) - C(n) + 2` evaluated on windowed
//!   approximations of infinite words
//! - [`generators`]: prefixes of the classic example families (Fibonacci
//!   word, morphic fixed points, periodic and staircase words)
//! - [`oracle`]: deliberately naive reference implementations used as ground
//!   truth in tests

pub mod complexity;
pub mod eertree;
pub mod generators;
pub mod oracle;
pub mod richness;
pub mod word;

pub use eertree::Eertree;
pub use richness::{
    analyze, characterization_matrix, CharacterizationMatrix, ConditionId, RichnessReport,
};
pub use word::{Alphabet, Symbol, Word};

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("alphabet must contain at least one symbol")]
    EmptyAlphabet,
    #[error("duplicate symbol `{0}` in alphabet")]
    DuplicateSymbol(char),
    #[error("letter-mapped alphabets take between 1 and 26 symbols, got {0}")]
    AlphabetSize(usize),
    #[error("symbol `{0}` is outside the declared alphabet")]
    SymbolOutsideAlphabet(char),
    #[error("occurrence queries need a non-empty factor")]
    EmptyFactor,
    #[error("periodic constructions need a non-empty block")]
    EmptyBlock,
    #[error("morphism image of `{0}` is empty")]
    EmptyImage(char),
    #[error("symbol `{0}` appears in a morphism image but has no rule")]
    MissingRule(char),
    #[error("bad morphism rules: {0}")]
    MorphismSyntax(String),
    #[error("morphism is not prolongable at `{0}` (its image must start with `{0}` and have length at least 2)")]
    NotProlongable(char),
    #[error("window of length {actual} is too short; the requested range needs at least {required}")]
    WindowTooShort { required: usize, actual: usize },
    #[error("word of length {length} exceeds the brute-force cap of {cap}")]
    LengthCapExceeded { length: usize, cap: usize },
    #[error("enumerating {required} words exceeds the budget of {budget}")]
    BudgetExceeded { required: u128, budget: u64 },
    #[error("unknown condition `{0}` (expected one of II, III, IV, V, P3, T1B, T2)")]
    UnknownCondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
