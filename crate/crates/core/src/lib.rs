//! Generalized convergence methods on symbolic bounded sequences, and
//! Simons-type equality checks on finite-dimensional dual bodies.
//!
//! - [`seq`]: eventually periodic, sparse-indicator and combined sequences.
//! - [`summability`]: matrix transforms and the strong, statistical,
//!   pre-Cauchy, almost and `F_A` convergence methods.
//! - [`convexdual`]: polytopes and balls, support functions, convex hull
//!   membership, boundaries and (I)-generating sets.
//! - [`simonslab`]: the quasi-additive map framework and its verification
//!   experiments.

pub mod convexdual;
pub mod error;
pub mod sampling;
pub mod seq;
pub mod simonslab;
pub mod summability;
mod tolerance;

pub use error::{Error, Result};
pub use seq::{apply_functional, IntegerSet, Periodic, SequenceSpec, VectorSequence};
pub use tolerance::{Tolerances, DEFAULT_DEPTH};
