use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown Cartan type `{0}`")]
    UnknownCartanType(String),

    #[error("index {index} is not a node of {cartan_type}")]
    IndexOutOfRange { index: usize, cartan_type: String },

    #[error("{0}")]
    Domain(String),

    #[error("node cap {cap} exceeded after visiting {visited} nodes; raise the cap to continue")]
    CapExceeded { visited: usize, cap: usize },

    #[error("index sets do not match: {0} vs {1}")]
    IndexSetMismatch(String, String),

    #[error("invalid folding: {0}")]
    InvalidFolding(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
