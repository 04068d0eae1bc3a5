use thiserror::Error;

/// Errors reported by the library.
///
/// Operations that check a mathematical statement use a three-way outcome:
/// `Ok(true)` / `Ok(false)` for the statement itself, and
/// `Err(Error::Hypothesis)` when the inputs do not satisfy the statement's
/// preconditions, so "conclusion false" is never conflated with "question
/// not applicable".
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix must have at least one row and one column")]
    EmptyMatrix,

    #[error("negative entry {value} at row {row}, column {col}")]
    NegativeEntry {
        row: usize,
        col: usize,
        value: String,
    },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("index {index} out of range for universe 1..={universe}")]
    IndexOutOfRange { index: usize, universe: usize },

    #[error("duplicate index {0}")]
    DuplicateIndex(usize),

    #[error("index set must be nonempty")]
    EmptySet,

    #[error("index sets live in different universes ({0} vs {1})")]
    UniverseMismatch(usize, usize),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("k = {k} out of range for n = {n}")]
    KOutOfRange { k: usize, n: usize },

    #[error("row {row} sums to {sum}, not 1")]
    NotStochastic { row: usize, sum: String },

    #[error("matrix is not irreducible")]
    NotIrreducible,

    #[error("matrix is not primitive")]
    NotPrimitive,

    #[error("operation needs at least two rows")]
    TooFewRows,

    #[error("{what} is capped at size {cap} (got {n}); raise the cap with --max-n or POSMAT_MAX_N")]
    CapExceeded {
        what: &'static str,
        n: usize,
        cap: usize,
    },

    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("{0}")]
    Invalid(String),
}
