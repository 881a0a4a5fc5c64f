use thiserror::Error;

use crate::embedding::DistortionRecord;
use crate::thompson::CaretType;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at token {token:?}: {reason}")]
    Parse { token: String, reason: String },

    #[error("malformed tree: {0}")]
    MalformedTree(String),

    #[error("tree pair leaf counts differ: negative tree has {neg}, positive tree has {pos}")]
    LeafCountMismatch { neg: usize, pos: usize },

    #[error("malformed normal form: {0}")]
    MalformedNormalForm(String),

    #[error("unsupported caret pairing ({0:?}, {1:?})")]
    UnsupportedPairing(CaretType, CaretType),

    #[error("element outside the closed-form case: {0}")]
    OutsideFormulaCase(String),

    #[error("element is not in the subgroup generated by a and t")]
    NotInSubgroupH,

    #[error("s-conjugation by a negative power leaves the counter lattice")]
    NegativePower,

    #[error("integer out of range: {0}")]
    Overflow(String),

    #[error(
        "ball exceeded the element limit of {limit} after completing radius {completed_radius}"
    )]
    LimitExceeded {
        limit: usize,
        completed_radius: usize,
        sphere_sizes: Vec<usize>,
    },

    #[error("distortion report incomplete: BFS completed only radius {completed_radius}")]
    PartialReport {
        completed_radius: usize,
        records: Vec<DistortionRecord>,
    },

    #[error("malformed JSON: {0}")]
    Json(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(token: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Parse {
            token: token.into(),
            reason: reason.into(),
        }
    }
}
