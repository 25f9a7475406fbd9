use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the engine can report.
///
/// The variant name is part of the command-line contract: [`Error::name`]
/// is printed verbatim on stderr by the CLI.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("Chern data is not integral: {0}")]
    NonIntegralChernClass(String),
    #[error("Euler characteristic is not integral: {0}")]
    NonIntegralChi(String),
    #[error("rank {0} is not supported (ranks 1..=3 only)")]
    UnsupportedRank(u32),
    #[error("exactly two of the three sequence terms must be given, got {0}")]
    ArityError(usize),
    #[error("missing invariant: {0}")]
    MissingInvariant(&'static str),
    #[error("not computable: {0}")]
    NotComputable(String),
    #[error("inconsistent data: {0}")]
    Inconsistent(String),
    #[error("syntax error at byte {offset}: {message}")]
    SyntaxError { offset: usize, message: String },
    #[error("negative rank in exact sequence: {0}")]
    RankError(String),
    #[error("unknown identifier `{0}`")]
    UnknownIdentifier(String),
    #[error("hypothesis not satisfied: {0}")]
    HypothesisError(String),
    #[error("singular scheme would have negative length {0}")]
    NegativeLength(i64),
    #[error("component count would be negative ({0})")]
    NegativeCount(i64),
    #[error("outside the domain: {0}")]
    DomainError(String),
    #[error("invalid threefold data: {0}")]
    InvalidThreefold(String),
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
}

impl Error {
    pub fn name(&self) -> &'static str {
        match self {
            Error::NonIntegralChernClass(_) => "NonIntegralChernClass",
            Error::NonIntegralChi(_) => "NonIntegralChi",
            Error::UnsupportedRank(_) => "UnsupportedRank",
            Error::ArityError(_) => "ArityError",
            Error::MissingInvariant(_) => "MissingInvariant",
            Error::NotComputable(_) => "NotComputable",
            Error::Inconsistent(_) => "Inconsistent",
            Error::SyntaxError { .. } => "SyntaxError",
            Error::RankError(_) => "RankError",
            Error::UnknownIdentifier(_) => "UnknownIdentifier",
            Error::HypothesisError(_) => "HypothesisError",
            Error::NegativeLength(_) => "NegativeLength",
            Error::NegativeCount(_) => "NegativeCount",
            Error::DomainError(_) => "DomainError",
            Error::InvalidThreefold(_) => "InvalidThreefold",
            Error::Overflow(_) => "Overflow",
        }
    }
}
