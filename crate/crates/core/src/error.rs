use thiserror::Error;

use crate::rootsys::CartanType;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid rank {rank} for family {family}")]
    InvalidRank { family: char, rank: usize },

    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },

    #[error("unsupported type {0} for this operation")]
    UnsupportedType(CartanType),

    #[error("partition {partition} is not admissible for {ty}")]
    InadmissiblePartition { partition: String, ty: CartanType },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("label {0} outside {{0,1,2}}")]
    InvalidLabel(i64),

    #[error("empty exponential sum has no leading term")]
    EmptySum,

    #[error("no term dominates all others ({candidates} maximal candidates)")]
    NoLeadingTerm { candidates: usize },

    #[error("resource limit: {needed} terms needed, cap is {cap}")]
    ResourceLimit { needed: u64, cap: u64 },

    #[error("integer overflow in coefficient arithmetic")]
    ArithmeticOverflow,

    #[error("no fixture table for {0}")]
    UnknownTable(CartanType),

    #[error("fixture {table}: {message}")]
    Fixture { table: String, message: String },

    #[error("strategy {strategy} does not apply: {reason}")]
    StrategyNotApplicable {
        strategy: &'static str,
        reason: String,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
