//! Verification toolkit for explicit bounds on primes in short intervals
//! under the Riemann hypothesis.
//!
//! The prime side ([`primes`]) is an exact sieve oracle; the analytic side
//! ([`explicit_bounds`], [`quadrature`], [`optimize`]) evaluates the bounds
//! term by term; [`zeta_zeros`] checks the zero-sum estimates against tables
//! of zeta-zero ordinates. [`cli`] ties everything into claim reports.

// Negated comparisons reject NaN along with out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod cli;
pub mod error;
pub mod explicit_bounds;
pub mod optimize;
pub mod primes;
pub mod quadrature;
pub mod report;
pub mod sum;
pub mod zeta_zeros;

pub use error::{Error, Result};
