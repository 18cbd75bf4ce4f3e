use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::zeta_zeros::ZeroTable;

/// Environment variable naming a default zero table.
pub const ZEROS_ENV: &str = "PRIMEGAP_ZEROS";

pub const DEFAULT_SIEVE_CAP: u64 = 1_000_000_000;
pub const QUICK_SIEVE_CAP: u64 = 10_000_000;
pub const MIN_SIEVE_CAP: u64 = 200_000;
pub const DEFAULT_TOL_QUAD: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

/// Where zero-dependent claims get their ordinates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ZeroSource {
    Bundled,
    File(PathBuf),
    Disabled,
}

impl ZeroSource {
    /// An explicit path wins, then the environment, then the bundled table.
    pub fn resolve(path: Option<PathBuf>, disabled: bool) -> Self {
        if disabled {
            return ZeroSource::Disabled;
        }
        if let Some(p) = path {
            return ZeroSource::File(p);
        }
        match std::env::var_os(ZEROS_ENV) {
            Some(p) if !p.is_empty() => ZeroSource::File(PathBuf::from(p)),
            _ => ZeroSource::Bundled,
        }
    }

    pub fn load(&self) -> Result<Option<ZeroTable>> {
        Ok(match self {
            ZeroSource::Bundled => Some(ZeroTable::bundled().clone()),
            ZeroSource::File(p) => Some(ZeroTable::load(p)?),
            ZeroSource::Disabled => None,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub sieve_cap: u64,
    pub zeros: ZeroSource,
    pub tol_quad: f64,
    /// Worker threads; 0 uses all cores.
    pub threads: usize,
    pub output: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            sieve_cap: DEFAULT_SIEVE_CAP,
            zeros: ZeroSource::Bundled,
            tol_quad: DEFAULT_TOL_QUAD,
            threads: 0,
            output: OutputFormat::Json,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.sieve_cap < MIN_SIEVE_CAP {
            return Err(Error::Config(format!(
                "sieve cap {} below the minimum {MIN_SIEVE_CAP}",
                self.sieve_cap
            )));
        }
        if self.sieve_cap > crate::primes::sieve::DEFAULT_MAX / 2 {
            return Err(Error::Config(format!(
                "sieve cap {} too large",
                self.sieve_cap
            )));
        }
        if !(1e-10..=1e-4).contains(&self.tol_quad) {
            return Err(Error::Config(format!(
                "quadrature tolerance {} outside [1e-10, 1e-4]",
                self.tol_quad
            )));
        }
        Ok(())
    }
}
