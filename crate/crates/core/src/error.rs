use alloc::string::String;
use alloc::vec::Vec;

use crate::continuants::IndexTuple;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("index {index} out of range for a tuple of order {order}")]
    Range { index: i64, order: usize },

    #[error("domain error: {0}")]
    Domain(String),

    /// Raised by brute-force lattice enumeration when the scaled polygon is too large.
    #[error("enumeration of {points} lattice points exceeds the budget of {budget}")]
    Size { points: u128, budget: u128 },

    #[error("depth-first search visited more than {budget} nodes")]
    Budget { budget: usize },

    #[error("tiles {first} and {second} have overlapping interiors")]
    Overlap { first: usize, second: usize },

    #[error("tile {tile} can be attached to several mosaics (roots {candidates:?})")]
    Ambiguity {
        tile: IndexTuple,
        candidates: Vec<IndexTuple>,
    },

    #[error("outline has {vertices} vertices (convex: {convex}); no shape letter applies")]
    Shape { vertices: usize, convex: bool },

    #[error("no mirror image of the mosaic rooted at {root} among the candidates")]
    PartnerMissing { root: IndexTuple },

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
