use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("sieve range [{lo}, {hi}] exceeds configured maximum {max}")]
    Capacity { lo: u64, hi: u64, max: u64 },

    #[error("invalid range: {0}")]
    InvalidRange(String),

    #[error("parameter domain violation: {0}")]
    Domain(String),

    #[error("zero table is empty")]
    EmptyTable,

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("line {line}: ordinate {value} is not greater than the previous entry {prev}")]
    NotMonotone { line: usize, value: f64, prev: f64 },

    #[error("line {line}: ordinate {value} does not exceed 2π")]
    BelowTwoPi { line: usize, value: f64 },

    #[error("height {t} outside zero table coverage (0, {max}]")]
    OutsideTable { t: f64, max: f64 },

    #[error("pair sum over {zeros} zeros exceeds budget of {budget}")]
    PairBudget { zeros: usize, budget: usize },

    #[error(
        "quadrature budget of {budget} evaluations exhausted (error estimate {err_estimate:e})"
    )]
    QuadBudget { budget: usize, err_estimate: f64 },

    #[error("overflow evaluating {0}")]
    Overflow(&'static str),

    #[error("configuration: {0}")]
    Config(String),

    #[error("io error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
