use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("letter {letter} is outside the alphabet [1, {k}]")]
    LetterOutOfRange { letter: u32, k: u32 },

    #[error("alphabet size must be at least 1")]
    EmptyAlphabet,

    #[error("enumeration of {size} words exceeds the budget of {budget}")]
    BudgetExceeded { size: String, budget: u64 },

    #[error("series has zero constant term and cannot be inverted")]
    ZeroConstantTerm,

    #[error("square root requires constant term 1, found {0}")]
    SqrtConstantTerm(String),

    #[error("numerator does not vanish at x = 0 (constant term {0})")]
    NonVanishingNumerator(String),

    #[error("denominator of a rational generating function must have a nonzero constant term")]
    DegenerateDenominator,

    #[error("integrity check failed at n = {n}: coefficient {value} is not a nonnegative integer")]
    Integrity { n: usize, value: String },

    #[error("requested {requested} terms but the series is truncated at order {order}")]
    TruncationOrder { requested: usize, order: usize },

    #[error("no closed form is available for {0}")]
    NoClosedForm(String),

    #[error("unknown name: {0}")]
    UnknownName(String),

    #[error("malformed OEIS id {0:?}: expected 'A' followed by 6 digits")]
    MalformedId(String),

    #[error("b-file line {line}: {reason}")]
    MalformedLine { line: usize, reason: String },

    #[error("b-file line {line}: index {found} is not consecutive (expected {expected})")]
    NonConsecutiveIndex { line: usize, expected: i64, found: i64 },

    #[error("b-file is empty")]
    EmptyBFile,

    #[error("network error fetching {id}: {reason}")]
    Network { id: String, reason: String },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}
