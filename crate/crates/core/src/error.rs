use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("symbol {symbol:?} is not in alphabet {alphabet:?}")]
    UnknownSymbol { symbol: char, alphabet: String },

    #[error("letter index {letter} is outside an alphabet of {size} letters")]
    LetterOutOfRange { letter: u8, size: usize },

    #[error("invalid {field}: {reason}")]
    InvalidParameter { field: &'static str, reason: String },

    /// The directive list only determines a shorter prefix.
    #[error(
        "directive sequence certifies {certified} letters but {requested} were requested; \
         extend it by at least {extra} more coefficient(s) (exactly {extra} if they are all 1)"
    )]
    ExtendDirective {
        requested: usize,
        certified: usize,
        extra: usize,
    },

    #[error("host of length {available} is too short: {needed} letters required")]
    Boundary { needed: usize, available: usize },

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("rule is not total: missing windows {}", missing.join(", "))]
    NonTotalRule { missing: Vec<String> },

    #[error("rule file line {line}: {reason}")]
    RuleFile { line: usize, reason: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
