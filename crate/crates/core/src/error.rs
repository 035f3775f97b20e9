use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix has rank {rank} but {rows} rows")]
    RankDeficient { rank: usize, rows: usize },
    #[error("length {len} exceeds the 64-coordinate limit")]
    LengthOverflow { len: usize },
    #[error("vector is not a codeword of the code")]
    NotACodeword,
    #[error("the zero word has no minimality")]
    ZeroWord,
    #[error("dimension {k} too large for this operation (limit {limit})")]
    TooLarge { k: usize, limit: usize },
    #[error("not a permutation of 0..{n}")]
    BadPermutation { n: usize },
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("g({n}) is neither tabulated nor computed")]
    UnknownG { n: usize },
    #[error("self-loop at vertex {vertex} (edge {edge})")]
    SelfLoop { edge: usize, vertex: usize },
    #[error("graph has {q} edges; cycle codes are limited to 64")]
    EdgeOverflow { q: usize },
    #[error("graph is acyclic; its cycle code is trivial")]
    AcyclicGraph,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
