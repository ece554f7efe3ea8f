//! Crate-wide error type.
//!
//! Variants are grouped by failure class so the CLI can map them onto its
//! stable exit-code contract (validation = 2, I/O = 3, numeric = 4).

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Bad configuration value or invalid argument.
    #[error("config error: {0}")]
    Config(String),

    /// Corpus generation failed (e.g. a scene admits too few true captions).
    #[error("corpus error: {0}")]
    Corpus(String),

    /// A caption does not parse under the template grammar. Distinct from a
    /// caption that parses but is false of a scene.
    #[error("unparseable caption: {0}")]
    Unparseable(String),

    /// A word is not in the vocabulary.
    #[error("out-of-vocabulary word: {0}")]
    OutOfVocab(String),

    /// A caption exceeds the fixed slot length.
    #[error("caption too long: {got} words, limit {limit}")]
    CaptionTooLong { got: usize, limit: usize },

    /// Tensor or sequence shapes are inconsistent.
    #[error("shape error: {0}")]
    Shape(String),

    /// Non-finite values or other numeric failure.
    #[error("numeric error: {0}")]
    Numeric(String),

    /// Serialized data is malformed or has an unsupported version.
    #[error("format error: {0}")]
    Format(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Exit code for the CLI contract: 2 usage/validation, 3 I/O, 4 numeric.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io(_) => 3,
            Error::Numeric(_) => 4,
            _ => 2,
        }
    }
}
