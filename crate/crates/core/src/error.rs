use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid element: {0}")]
    InvalidElement(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("label sets overlap: {0:?}")]
    LabelClash(Vec<u32>),
    #[error("decorations live in different groups")]
    GroupClash,
    #[error("boundary maps do not compose to zero in degree {0}")]
    NotAComplex(i32),
    #[error("map does not commute with boundaries in degree {0}")]
    NotChainMap(i32),
    #[error("basepoint tree has no T-matrix")]
    BasepointInput,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse { pos, msg: msg.into() }
    }
}
