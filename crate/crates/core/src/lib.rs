//! Generalized log-sum inequalities and a randomized harness for checking them.
//!
//! Scalar forms live in [`scalar_ineq`], the q-deformed logarithm in
//! [`deformed_log`], commuting trace forms in [`trace_ineq`] and
//! Loewner-order forms for non-commuting families in [`loewner_ineq`].
//! [`harness`] drives all of them from seeded random instances.

pub mod deformed_log;
pub mod error;
pub mod function;
pub mod harness;
pub mod loewner_ineq;
pub mod matfun;
pub mod scalar_ineq;
pub mod trace_ineq;

pub use error::{Error, Result};
