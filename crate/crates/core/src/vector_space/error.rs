use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SystemError {
    #[error("functional matrix is empty")]
    Empty,
    #[error("functional matrix is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("phi_{row}(e_{col}) is negative off the diagonal (labels {row_label}, {col_label})")]
    OffDiagonalNegative {
        row: usize,
        col: usize,
        row_label: String,
        col_label: String,
    },
    #[error("expected {expected} labels, got {got}")]
    LabelCount { expected: usize, got: usize },
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("vector does not match the system labels: {0}")]
    LabelMismatch(String),
    #[error("coordinate_max needs at least one vector")]
    EmptyList,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompositionError {
    #[error(transparent)]
    System(#[from] SystemError),
    /// The polyhedron of nef vectors below `x` is empty.
    #[error("no nef vector lies below the input")]
    NoNefBelow,
    /// The solver produced a pair violating the decomposition conditions.
    #[error("decomposition certificate failed: {0}")]
    CertificateFailure(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error(transparent)]
    System(#[from] SystemError),
    #[error("support is empty")]
    EmptySupport,
    #[error("support index {0} is out of range")]
    SupportOutOfRange(usize),
    #[error("restricted matrix has a non-negative diagonal entry at label {label}")]
    NonNegativeDiagonal { index: usize, label: String },
    #[error("pivot reduction degenerated at step {step}: pivot is not negative")]
    SingularReduction { step: usize },
}
