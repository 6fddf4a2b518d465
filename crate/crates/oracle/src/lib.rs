//! Brute-force counts over small finite fields: points of character
//! varieties with semisimple punctures, and absolutely indecomposable
//! representations of comet-shaped quivers.

pub mod charvar;
pub mod field;
pub mod matrix;
pub mod quiver;

pub use charvar::{
    char_variety_point_count, generic_class_tuple_search, is_generic, ClassTuple, PointCount,
};
pub use field::{Elem, SmallField};
pub use quiver::{
    endo_algebra_analysis, quiver_abs_indec_count, CometQuiver, EndoAnalysis, QuiverCount,
    QuiverRep,
};

/// Upper bound on elementary steps for a single enumeration.
pub const STEP_BUDGET: u64 = 100_000_000;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("unsupported field size {0}")]
    UnsupportedField(u32),
    #[error("instance too large: {steps} steps exceed the budget of {budget}")]
    InstanceTooLarge { steps: u64, budget: u64 },
    #[error("genericity violated: raw count {raw} is not divisible by |PGL_n| = {pgl}")]
    GenericityViolated { raw: u64, pgl: u64 },
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
}

pub type Result<T> = std::result::Result<T, OracleError>;
