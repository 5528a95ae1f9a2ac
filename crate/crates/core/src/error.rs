use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("unknown symbol {0}")]
    UnknownSymbol(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("rewriting system not confluent: {0}")]
    NotConfluent(String),
    #[error("invalid splitting: {0}")]
    InvalidSplitting(String),
    #[error("operation not applicable: {0}")]
    NotApplicable(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("poset violates condition {condition}: {detail}")]
    Poset { condition: u8, detail: String },
    #[error("crossing pair: {0}")]
    Crossing(String),
    #[error("tree self-check failed: {0}")]
    TreeCheck(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Error {
        Error::Invalid(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
