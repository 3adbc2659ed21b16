//! Quasi-additive maps `P` on bounded sequences and experiments checking
//! Simons-type inequalities on finite-dimensional bodies.

mod audit;
mod json;
mod pmap;
mod rainwater;
mod suite;
mod theorems;

pub use audit::{
    pmap_condition_audit, AuditCheck, AuditOutcome, AuditReport, AUDIT_ROWS, CONTINUITY_LADDER,
    LSC_NOTE,
};
pub use pmap::{pmap_limsup, pmap_term, Accuracy, LimsupValue, PMapKind, PMapSpec};
pub use rainwater::{rainwater_check, RainwaterMethod, RainwaterReport, RAINWATER_PROBES};
pub use suite::{
    instance_rng, random_constant_sequences, random_points, random_suite, random_vector_sequence,
    Instance, SuiteSet, SuiteSpec,
};
pub use theorems::{
    check_cor33, check_simons, check_theorem31, sup_limsup_body, sup_limsup_set, Experiment,
    LabOptions, SupValue, TheoremReport, BALL_DIRECTIONS,
};
