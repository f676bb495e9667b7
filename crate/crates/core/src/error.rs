use thiserror::Error;

/// Invariant violations reported by the object constructors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("size n must be in 1..={max}, got {n}")]
    BadSize { n: usize, max: usize },
    #[error("expected {expected} entries, got {actual}")]
    WrongLength { expected: usize, actual: usize },
    #[error("column {column} holds {count} dots (row {row}); every column needs exactly two")]
    ColumnCountViolation {
        column: usize,
        count: usize,
        row: usize,
    },
    #[error("dot at row {row} sits in column {column}, outside the allowed band")]
    DiagonalViolation { row: usize, column: usize },
    #[error("central symmetry broken at row {row}")]
    SymmetryViolation { row: usize },
    #[error("value {value} is never attained")]
    NotSurjective { value: usize },
    #[error("f({index}) = {value} is below its index")]
    ValueBelowIndex { index: usize, value: usize },
    #[error("f({index}) = {value} is not an even value in 2..=2n")]
    BadValue { index: usize, value: usize },
}

/// Errors raised by the algorithms and the text/JSON decoders.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Invalid(#[from] ValidationError),
    #[error("{what} = {value} outside {lo}..={hi}")]
    OutOfRange {
        what: &'static str,
        value: usize,
        lo: usize,
        hi: usize,
    },
    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("T-path from row {start} did not stabilise within {bound} steps")]
    NonTermination { start: usize, bound: usize },
    #[error("row {target} is not in the codomain of pi_{j}")]
    TargetNotInCodomain { j: usize, target: usize },
    #[error("box (column {column}, row {row}) is already occupied")]
    BoxOccupied { column: usize, row: usize },
    #[error("two dots routed to row {row} of column {column}")]
    RowCollision { column: usize, row: usize },
    #[error("row {row} is not free and cannot be reflected")]
    IllegalReflection { row: usize },
    #[error("configuration does not collapse to a tableau: {0}")]
    CollapseInvalid(String),
    #[error("D_{n}(1) is not divisible by 2^{n}")]
    InexactDivision { n: usize },
    #[error("internal inconsistency in {stage}: {detail} [{encoding}]")]
    InternalInconsistency {
        stage: &'static str,
        detail: String,
        encoding: String,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
