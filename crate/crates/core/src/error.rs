use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),
    #[error("generator name collision: {0:?}")]
    NameCollision(String),
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("homomorphism verification failed on {failed} relator(s), first: {first}")]
    Verification { failed: usize, first: String },
    #[error("unknown catalog entry {0:?}")]
    UnknownCatalog(String),
    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse {
            pos: e.column(),
            msg: e.to_string(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
