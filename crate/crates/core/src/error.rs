use std::fmt;

use thiserror::Error;

/// Which line of a table broke the Latin property.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Row,
    Column,
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axis::Row => f.write_str("row"),
            Axis::Column => f.write_str("column"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("empty table: a quasigroup needs at least one element")]
    Empty,
    #[error("table is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("entry {value} at ({row}, {col}) is out of range for order {order}")]
    EntryOutOfRange { row: usize, col: usize, value: usize, order: usize },
    #[error("NotLatin: {0} {1} repeats an entry")]
    NotLatin(Axis, usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("map value {value} at position {index} is out of range for codomain order {codomain}")]
    MapValueOutOfRange { index: usize, value: usize, codomain: usize },
    #[error("map is not a homomorphism")]
    NotHomomorphism,
    #[error("map is not an epimorphism onto the target quasigroup")]
    NotEpimorphism,
    #[error("fibers are not of uniform size")]
    NonUniformFibers,
    #[error("partition is not compatible with multiplication")]
    NotCompatible,
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("order {order} exceeds the supported bound {max}")]
    OrderTooLarge { order: usize, max: usize },
    #[error("invalid Bruck system: {0}")]
    InvalidSystem(String),
    #[error("inconsistent decomposition: {0}")]
    InconsistentDecomposition(String),
    #[error("inconsistent predicates: {0}")]
    InconsistentPredicates(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("block pattern conflict at ({0}, {1})")]
    PatternConflict(usize, usize),
    #[error("not a group: {0}")]
    NotGroup(String),
    #[error("quasigroup does not match the LF extension built from its factors")]
    NotLfInstance,
    #[error("isotopism check failed at ({0}, {1})")]
    IsotopyFailed(usize, usize),
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
