use thiserror::Error;

use crate::agm::Postulate;
use crate::frame::modal::NestingError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at offset {offset}: expected {expected}, found {found}")]
    Syntax { offset: usize, expected: String, found: String },
    #[error("unknown atom `{name}` at offset {offset}")]
    UnknownAtom { name: String, offset: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SignatureError {
    #[error("signature must have between 1 and 16 atoms, got {0}")]
    Size(usize),
    #[error("invalid atom name `{0}`")]
    BadName(String),
    #[error("duplicate atom `{0}`")]
    Duplicate(String),
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Signature(#[from] SignatureError),
    #[error("formula outside the restricted modal language: {0}")]
    Nesting(#[from] NestingError),
    #[error("malformed model: {0}")]
    Model(String),
    #[error("selection function undefined at state {state} for event {event}")]
    Domain { state: String, event: String },
    #[error("conditional evaluated at state {0} outside the actual belief set with no bridge")]
    MissingBridge(String),
    #[error("the negation of the contracted formula has an empty truth set in the model")]
    OutsidePartialDomain,
    #[error("frame generation gave up after {0} attempts")]
    GenerationExhausted(usize),
    #[error("{what} allows at most {max}, got {got}")]
    TooLarge { what: &'static str, max: usize, got: usize },
    #[error("contraction table has no entry for event {0}")]
    PartialTable(String),
    #[error("input is not an AGM contraction: {0} fails")]
    PostulateViolation(Postulate),
    #[error("the initial belief set is inconsistent")]
    InconsistentBase,
    #[error("signatures do not match")]
    SignatureMismatch,
    #[error("entrenchment relation yields a non-closed contraction at phi={phi}: {witness} should be a member")]
    IllFormedRelation { phi: String, witness: String },
    #[error("{field}: {message}")]
    Format { field: String, message: String },
}

impl Error {
    pub(crate) fn format(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Format { field: field.into(), message: message.into() }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
