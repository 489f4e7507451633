use thiserror::Error;

/// Errors raised by design construction, metrics, and samplers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("digit {0} is outside 1..=9")]
    DigitOutOfRange(u8),
    #[error("value {0} is outside [0, 1)")]
    ValueOutOfRange(f64),
    #[error("value {value} at row {row}, column {col} is outside [0, 1)")]
    CoordinateOutOfRange { row: usize, col: usize, value: f64 },
    #[error("a design needs at least one sample and one dimension")]
    EmptyDesign,
    #[error("expected {expected} values for a {n_points} x {n_dims} design, got {got}")]
    ShapeMismatch {
        n_points: usize,
        n_dims: usize,
        expected: usize,
        got: usize,
    },
    #[error("row {row} has {got} values, expected {expected}")]
    RaggedRow {
        row: usize,
        expected: usize,
        got: usize,
    },
    #[error("histogram has {got} bins but the reference has {expected}")]
    BinCountMismatch { expected: usize, got: usize },
    #[error("joint NBD requires at least 2 dimensions, got {0}")]
    JointNeedsPairs(usize),
    #[error("column {dim} is out of range for a design with {n_dims} dimensions")]
    ColumnOutOfRange { dim: usize, n_dims: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("the Sobol' direction-number table supports at most {max} dimensions, {requested} requested")]
    SobolDimensions { requested: usize, max: usize },
    #[error(
        "no 6-level LHS column permutation has CD2 within {tolerance} of {target}; nearest is {nearest}"
    )]
    SearchFailed {
        target: f64,
        tolerance: f64,
        nearest: f64,
    },
    #[error("cannot summarize an empty record list")]
    NoRecords,
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
