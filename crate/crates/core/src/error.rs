use thiserror::Error;

/// Every failure the library reports.
///
/// [`Error::code`] gives a short stable identifier used by the command-line
/// front end as the prefix of its one-line diagnostics.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed degree sequence: {0}")]
    InvalidSequence(String),
    #[error("not graphical: {0}")]
    NotGraphical(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("swap not allowed: {0}")]
    SwapNotAllowed(String),
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("cycle mismatch: {0}")]
    CycleMismatch(String),
    #[error("position {0:?} lies on a diagonal")]
    DiagonalPosition((usize, usize)),
    #[error("no same-type cousin for position {0:?}")]
    NoCousinWitness((usize, usize)),
    #[error("OK/KO specification violated: {0}")]
    SpecViolation(String),
    #[error("precondition violated: {0}")]
    PreconditionViolation(String),
    #[error("pairing does not belong to this pair of realizations")]
    PairingMismatch,
    #[error("margin mismatch: {0}")]
    MarginMismatch(String),
    #[error("too many pairings: {count} exceeds threshold {threshold}")]
    TooManyPairings { count: String, threshold: u64 },
    #[error("state space too large: more than {threshold} {what}")]
    TooLarge { what: &'static str, threshold: usize },
    #[error("degenerate chain: {0}")]
    DegenerateChain(String),
    #[error("chain does not mix: {0}")]
    NonMixing(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidSequence(_) => "E_SEQUENCE",
            Error::NotGraphical(_) => "E_NOT_GRAPHICAL",
            Error::Parse(_) => "E_PARSE",
            Error::ShapeMismatch(_) => "E_SHAPE",
            Error::DegreeMismatch(_) => "E_DEGREE",
            Error::SwapNotAllowed(_) => "E_SWAP",
            Error::OutOfRange(_) => "E_RANGE",
            Error::CycleMismatch(_) => "E_CYCLE",
            Error::DiagonalPosition(_) => "E_DIAGONAL",
            Error::NoCousinWitness(_) => "E_COUSIN",
            Error::SpecViolation(_) => "E_OKKO",
            Error::PreconditionViolation(_) => "E_PRECONDITION",
            Error::PairingMismatch => "E_PAIRING",
            Error::MarginMismatch(_) => "E_MARGIN",
            Error::TooManyPairings { .. } => "E_PAIRINGS",
            Error::TooLarge { .. } => "E_TOO_LARGE",
            Error::DegenerateChain(_) => "E_DEGENERATE",
            Error::NonMixing(_) => "E_NON_MIXING",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
