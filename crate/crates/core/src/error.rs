use thiserror::Error;

use crate::rootsys::Family;

/// Errors produced anywhere in the engine.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid rank {rank} for type {family}: {reason}")]
    InvalidRank {
        family: Family,
        rank: usize,
        reason: &'static str,
    },

    #[error("{what} is limited to rank {max} (got {rank})")]
    RankCap {
        what: &'static str,
        rank: usize,
        max: usize,
    },

    #[error("enumeration of {count} elements exceeds the cap of {cap}")]
    EnumerationCap { count: u128, cap: u128 },

    #[error("not a root of {system}: {coeffs:?}")]
    NotARoot { system: String, coeffs: Vec<i32> },

    #[error("expected a positive root, got {0:?}")]
    NotPositive(Vec<i32>),

    #[error("row index {row} out of range 1..={rank}")]
    RowOutOfRange { row: usize, rank: usize },

    #[error("invalid Weyl group element: {0}")]
    InvalidWeylElement(String),

    #[error("root system mismatch: {0}")]
    SystemMismatch(String),

    #[error("invalid Hessenberg space: {0}")]
    InvalidHessenbergSpace(String),

    #[error("invalid Hessenberg function: {0}")]
    InvalidHessFunction(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid operator: {0}")]
    InvalidOperator(String),

    #[error("cell list does not cover the Weyl group: {0}")]
    CellCoverage(String),

    #[error("dimension requested for an empty cell")]
    EmptyCell,

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("oracle: {0}")]
    Oracle(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
