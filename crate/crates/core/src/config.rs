//! Run configuration: field characteristics, seed, sampling and cache layout.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::atlas::FORMAT_VERSION;
use crate::error::{Error, Result};
use crate::ext::{ClassSampling, CLASS_SAMPLES};
use crate::field::{is_prime, SUPPORTED_PRIMES};
use crate::quiver::DynkinType;

/// Environment variable overriding `cache_dir`.
pub const CACHE_ENV: &str = "PREPROJ_CACHE";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub field_char: u64,
    pub cross_check_char: u64,
    /// Seeds every randomized search; equal seeds give byte-identical output.
    pub seed: u64,
    pub cache_dir: PathBuf,
    /// Enumerate all `p + 1` classes of 2-dimensional `Ext¹` spaces.
    pub exhaustive_ext_sampling: bool,
    /// Number of maximal rigid `T` sampled for A4 suites.
    pub a4_sample_count: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            field_char: 32003,
            cross_check_char: 101,
            seed: 0,
            cache_dir: PathBuf::from("cache"),
            exhaustive_ext_sampling: false,
            a4_sample_count: 5,
        }
    }
}

impl Config {
    /// Parses a `key = value` file; missing keys keep their defaults.
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    /// Reads the optional file, then applies the cache override from the environment.
    pub fn load(path: Option<&Path>) -> Result<Self> {
        let mut cfg = match path {
            Some(p) => Self::from_toml(&std::fs::read_to_string(p)?)?,
            None => Self::default(),
        };
        if let Some(dir) = std::env::var_os(CACHE_ENV) {
            cfg.cache_dir = PathBuf::from(dir);
        }
        Ok(cfg)
    }

    /// Both characteristics must be supported primes exceeding twice the
    /// dimension of the largest preprojective algebra in use.
    pub fn validate(&self) -> Result<()> {
        for p in [self.field_char, self.cross_check_char] {
            if !is_prime(p) {
                return Err(Error::Config(format!("{p} is not prime")));
            }
            if !u32::try_from(p).is_ok_and(|q| SUPPORTED_PRIMES.contains(&q)) {
                return Err(Error::Config(format!("{p} is not one of the supported primes {SUPPORTED_PRIMES:?}")));
            }
            let bound = 2 * max_algebra_dim();
            if p as usize <= bound {
                return Err(Error::Config(format!("characteristic {p} must exceed {bound}")));
            }
        }
        Ok(())
    }

    pub fn sampling(&self) -> ClassSampling {
        ClassSampling { exhaustive: self.exhaustive_ext_sampling, samples: CLASS_SAMPLES, seed_exact_subspace: true }
    }

    /// `<cache_dir>/<type>-p<char>-v<format>`.
    pub fn cache_path(&self, dynkin: DynkinType, field_char: u64) -> PathBuf {
        self.cache_dir.join(format!("{dynkin}-p{field_char}-v{FORMAT_VERSION}"))
    }
}

/// `dim Λ = n(n+1)(n+2)/6` for the largest supported type.
fn max_algebra_dim() -> usize {
    DynkinType::PRESETS.iter().map(|t| t.algebra_dim()).max().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_and_overrides() {
        let d = Config::default();
        assert_eq!((d.field_char, d.cross_check_char, d.seed, d.a4_sample_count), (32003, 101, 0, 5));
        d.validate().unwrap();
        let c = Config::from_toml("seed = 7\nfield_char = 10007\n").unwrap();
        assert_eq!((c.seed, c.field_char, c.cross_check_char), (7, 10007, 101));
        assert!(Config::from_toml("unknown = 1").is_err());
    }

    #[test]
    fn rejects_bad_primes() {
        for p in [100, 103 * 107, 7] {
            let c = Config { field_char: p, ..Config::default() };
            assert!(c.validate().is_err(), "{p}");
        }
    }

    #[test]
    fn cache_layout() {
        let c = Config { cache_dir: PathBuf::from("/tmp/c"), ..Config::default() };
        assert_eq!(c.cache_path(DynkinType::A(3), 101), PathBuf::from("/tmp/c/A3-p101-v1"));
    }
}
