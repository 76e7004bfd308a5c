use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("edge ({u}, {v}) references a vertex outside 0..{n}")]
    VertexOutOfRange { u: usize, v: usize, n: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph has no edges")]
    Edgeless,
    #[error("exponent must be a finite positive number not above {max}, got {value}")]
    InvalidExponent { value: f64, max: f64 },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("{what} = {value} is outside the supported range {range}")]
    Guard {
        what: &'static str,
        value: usize,
        range: &'static str,
    },
    #[error("invalid graph6 input: {0}")]
    Graph6(String),
    #[error("invalid family specification: {0}")]
    Family(String),
    #[error("unknown claim id `{0}`")]
    UnknownClaim(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

impl Error {
    /// Guard violations are reported separately by the CLI.
    pub fn is_guard(&self) -> bool {
        matches!(self, Error::Guard { .. })
    }
}
