//! Summability matrices and generalized convergence methods.

mod classify;
mod matrix;
mod terms;
mod toeplitz;
mod verdict;

pub(crate) use classify::pair_gap_mean;
pub use classify::{
    classify_almost, classify_fa, classify_maddox, classify_matrix, classify_ordinary,
    classify_pre_cauchy, classify_pre_cauchy_count, classify_statistical, classify_strong,
    compare_verdicts, connor_crosscheck, Agreement, CrossCheckReport, NumericOptions,
};
pub(crate) use matrix::DensityClass;
pub use matrix::{builtin_matrix, Doctored, MatrixKind, RowShape, SummabilityMatrix, TRUNCATION};
pub use terms::{
    a_statistical_term, fa_term, pre_cauchy_count_term, pre_cauchy_mean_term, strong_term,
    strong_term_maddox, transform, ShiftSet,
};
pub use toeplitz::{
    toeplitz_evidence, toeplitz_falsify, ConditionStatus, ToeplitzReport, ToeplitzWitness,
    CHECKED_COLUMNS,
};
pub use verdict::{ConvergenceVerdict, Exactness, Justification, Method, VerdictStatus, Witness};
