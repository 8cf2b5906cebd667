use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid parameters for {family}: {msg}")]
    Param { family: String, msg: String },
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("negative cost {value} at vertex {vertex}")]
    NegativeCost { vertex: usize, value: String },
    #[error("graph has {n} vertices, above the exact-mode limit {limit} (raise it with --limit-exact / --limit-oracle)")]
    TooLarge { n: usize, limit: usize },
    #[error("graph has no edges; the integrality gap is only defined for E(G) nonempty")]
    Edgeless,
    #[error("ratio undefined: LP value is zero (IP value {ip})")]
    ZeroLpValue { ip: String },
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("{0}")]
    Config(String),
    #[error("LP is {0}")]
    LpStatus(String),
}

pub type Result<T> = std::result::Result<T, Error>;
