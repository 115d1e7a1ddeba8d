use thiserror::Error;

use crate::perm::{Count, Pattern, Shape};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}, token {position}: `{token}` is not an integer")]
    InvalidToken {
        line: usize,
        position: usize,
        token: String,
    },

    #[error("line {line}, token {position}: value {value} breaks the bijection on 1..={len}")]
    NotABijection {
        line: usize,
        position: usize,
        value: i64,
        len: usize,
    },

    #[error("`{0}` is not a pattern of length 1 to 4")]
    InvalidPattern(String),

    #[error("expected a pattern of length {expected}, got length {got}")]
    PatternLength { expected: &'static str, got: usize },

    #[error("pattern {0} is trivial and has no 4-partite occurrences")]
    TrivialPattern(Pattern),

    #[error("point ({x}, {y}) lies on a dividing line")]
    PointOnDivision { x: i64, y: i64 },

    #[error("duplicate {axis}-coordinate {value}")]
    DuplicateCoordinate { axis: char, value: i64 },

    #[error("query bounds are inverted")]
    InvertedBounds,

    #[error("region counts {0:?} do not sum to 4")]
    InvalidShape([u8; 4]),

    #[error("shape {shape} is not handled by the {family} counter")]
    IncompatibleShape { shape: Shape, family: &'static str },

    #[error("node {node} is out of range for {nodes} nodes")]
    NodeOutOfRange { node: usize, nodes: usize },

    #[error("self-loop at node {0}")]
    SelfLoop(usize),

    #[error("duplicate edge {0} -> {1}")]
    DuplicateEdge(usize, usize),

    #[error("layer index {0} is not in 0..4")]
    LayerOutOfRange(usize),

    #[error("edge multiplicity must be positive")]
    ZeroMultiplicity,

    #[error("edge {layer}:{from}->{to} has multiplicity {mult}, expected 1")]
    NonUnitMultiplicity {
        layer: usize,
        from: usize,
        to: usize,
        mult: u64,
    },

    #[error("the statistic needs at least 4 elements, got {0}")]
    TooShort(usize),

    #[error("profile sums to {sum}, expected C(n,4) = {expected}")]
    InconsistentProfile { sum: Count, expected: Count },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
