use thiserror::Error;

/// Errors raised by the geometry, depth, measure and construction routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("degenerate simplex (zero orientation)")]
    DegenerateSimplex,

    /// Indices refer to the flattened point list (class 0 first); the query
    /// point, when involved, comes last.
    #[error("general position violated by points {witness:?}")]
    GeneralPositionViolation { witness: Vec<usize> },

    #[error("perturbation magnitude must be positive")]
    NonpositiveMagnitude,

    #[error("operation requires dimension 2, got {0}")]
    DimensionNotTwo(usize),

    #[error("budget must be positive")]
    NonpositiveBudget,

    #[error("dimension must be at least 1")]
    NonpositiveDimension,

    #[error("invalid measure: {0}")]
    InvalidMeasure(String),

    #[error("color class {0} is empty")]
    EmptyClass(usize),

    #[error("general position not reached after {0} attempts")]
    GeneralPositionUnreachable(usize),

    #[error("value out of range: {0}")]
    OutOfRange(String),

    #[error("cannot parse number {0:?}")]
    Parse(String),

    /// An exact maximum below the first-selection bound: a counterexample
    /// to a theorem, so always a bug somewhere.
    #[error("exact maximum depth {max_found} is below the selection bound {bound}")]
    SelectionBoundViolated { max_found: u64, bound: String },

    #[error("invalid configuration: {0}")]
    ConfigInvalid(String),

    #[error("cannot read dataset: {0}")]
    DatasetUnreadable(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
