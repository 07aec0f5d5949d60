use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph must have at least one vertex")]
    EmptyGraph,

    #[error("edge ({0}, {1}) is not of the form (i, j) with 1 <= i < j <= {2}")]
    InvalidEdge(usize, usize, usize),

    #[error("graph is not connected")]
    Disconnected,

    #[error("{family} graph requires n >= {min}, got {n}")]
    FamilyTooSmall {
        family: &'static str,
        n: usize,
        min: usize,
    },

    #[error("augmentation multiplicity must be at least 1")]
    ZeroMultiplicity,

    #[error("net flow has length {found}, expected {expected}")]
    FlowLength { expected: usize, found: usize },

    #[error("net flow entries sum to {0}, expected 0")]
    FlowSum(BigInt),

    #[error("net flow entry {0} is too large to enumerate")]
    FlowTooLarge(BigInt),

    #[error("compositions have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),

    #[error("vertex {0} has no outgoing edge but is not the sink")]
    InteriorSink(usize),

    #[error("interpolation through k = 1..={k_max} does not reproduce E({k}): predicted {predicted}, computed {computed}")]
    Extrapolation {
        k_max: usize,
        k: usize,
        predicted: String,
        computed: String,
    },

    #[error("invalid constant-term expression: {0}")]
    InvalidExpression(String),

    #[error("truncated series is not stable at degree cap {0}")]
    SeriesUnstable(usize),

    #[error("malformed word at character {pos}: {msg}")]
    WordSyntax { pos: usize, msg: String },

    #[error("invalid word at step {pos}: {msg}")]
    WordInvariant { pos: usize, msg: String },

    #[error("{0}")]
    Domain(String),

    #[error("{what} is not an integer")]
    NonIntegral { what: String },

    #[error("cannot parse {what}: {msg}")]
    Parse { what: &'static str, msg: String },
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn parse(what: &'static str, msg: impl Into<String>) -> Self {
        Error::Parse {
            what,
            msg: msg.into(),
        }
    }
}
