use thiserror::Error;

/// Errors produced by the sequence, summability, geometry and verification layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("limit is not exactly computable for {0}")]
    NotExactlyComputable(String),

    #[error("linear combination is not closed over eventually periodic sequences: {0}")]
    NotClosed(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("unknown matrix name `{0}`")]
    UnknownName(String),

    #[error("row {row} of matrix `{matrix}` has neither a finite support nor a tail bound")]
    TailNotBounded { matrix: String, row: u64 },

    #[error("matrix `{matrix}` is declared regular but the Toeplitz check refuted: {detail}")]
    DeclaredRegularContradiction { matrix: String, detail: String },

    #[error("matrix `{0}` is not positive")]
    MatrixNotPositive(String),

    #[error("exponent sequence must be strictly positive: {0}")]
    ExponentNotPositive(String),

    #[error("exhaustive shift enumeration requires an eventually periodic sequence")]
    ExhaustiveRequiresPeriodic,

    #[error("numerical failure in linear program: {0}")]
    Indeterminate(String),

    #[error("point {index} of the generating set is not contained in the body")]
    SubsetViolation { index: usize },

    #[error("hypothesis not verified: {0}")]
    HypothesisNotVerified(String),

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
