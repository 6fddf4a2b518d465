//! Exact symbolic engine for the genus-`g`, `k`-point Cauchy kernel built from
//! modified Macdonald polynomials, its plethystic logarithm, and the
//! polynomials derived from it (E-polynomials of character varieties, Kac
//! polynomials of comet-shaped quivers, conjectural mixed Hodge polynomials).
//!
//! Everything is exact: coefficients are arbitrary-precision rationals and
//! no floating point is used anywhere.

pub mod arith;
pub mod cache;
pub mod error;
pub mod hilbert;
pub mod kernel;
pub mod macdonald;
pub mod partitions;
pub mod symfunc;

pub use error::{Error, Result};
