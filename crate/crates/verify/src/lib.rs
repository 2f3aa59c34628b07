//! Identity registry, acceptance suite and the plumbing behind the `dlat` command.
//!
//! Every identity computes its left side by enumerating the objects involved and taking
//! exact Euler characteristics or homology; the closed form only ever appears on the
//! comparison side.

mod error;
pub mod formulas;
mod identity;
mod objects;
mod suite;

pub use error::{Result, VerifyError};
pub use identity::{
    betti_string, f_polynomial, f_value, full_frame_formula, homology_string, interpolation_sizes, kv, lookup,
    parse_params, run_identity, spec_params, synthetic_fibers, wedge_checks, Identity, IdentityReport, Limits,
    Values, REGISTRY,
};
pub use objects::{
    build_object, compute_stat, export_object, restrict, Built, ObjectKind, Part, Stat, StatReport, StatValue,
    CONVENTION,
};
pub use suite::{
    criteria, run_criteria, run_suite, CaseOutcome, CaseReport, Criterion, CriterionReport, Scope, SuiteReport,
    CORPUS, SAMPLES,
};
