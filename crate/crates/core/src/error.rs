use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("input contains no edges or nodes")]
    EmptyInput,

    #[error("node index {index} out of range for graph with {n} nodes")]
    NodeOutOfRange { index: usize, n: usize },

    #[error("duplicate node {0} in node set")]
    DuplicateNode(usize),

    #[error("unsupported walk length {0}; expected one of 2, 4, 6")]
    UnsupportedPower(u32),

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),

    #[error("{what}: size {size} exceeds the limit {limit}; {hint}")]
    SizeLimit {
        what: &'static str,
        size: u128,
        limit: u128,
        hint: &'static str,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unknown label {0}")]
    UnknownLabel(i64),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
