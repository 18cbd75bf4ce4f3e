//! Sieve-backed prime machinery: the unconditional side of every check.

pub mod chebyshev;
pub mod kernel;
pub mod sieve;
pub mod verify;

pub use chebyshev::{chebyshev, chebyshev_with, lambda, ChebyshevValue};
pub use kernel::{kernel, kernel_sum, kernel_sum_with};
pub use sieve::{Sieve, SieveConfig, SievedRange};
pub use verify::GapConstant;
