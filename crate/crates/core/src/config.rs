//! Run configuration: a TOML file, overridden by command-line flags, and
//! validated before any computation.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{is_prime, Ctx};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub p: u64,
    #[serde(default = "defaults::e")]
    pub e: u32,
    #[serde(rename = "N")]
    pub n: u64,
    /// Absolute precision in `x = 1/θ`.
    #[serde(default = "defaults::precision")]
    pub precision: i64,
    /// Number of `t`-coefficients kept in Tate-algebra series.
    #[serde(default = "defaults::t_truncation")]
    pub t_truncation: usize,
    #[serde(default = "defaults::degree_bound")]
    pub degree_bound: u32,
    #[serde(default)]
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
}

mod defaults {
    pub fn e() -> u32 {
        1
    }
    pub fn precision() -> i64 {
        150
    }
    pub fn t_truncation() -> usize {
        8
    }
    pub fn degree_bound() -> u32 {
        8
    }
}

/// Flag values; `None` keeps the file (or default) value.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub q: Option<u64>,
    pub p: Option<u64>,
    pub e: Option<u32>,
    pub n: Option<u64>,
    pub precision: Option<i64>,
    pub t_truncation: Option<usize>,
    pub degree_bound: Option<u32>,
    pub seed: Option<u64>,
    pub output: Option<PathBuf>,
}

/// `q = p^e` with `p` prime.
pub fn split_prime_power(q: u64) -> Result<(u64, u32)> {
    if q < 2 {
        return Err(Error::Config(format!("q = {q} is not a prime power")));
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d)).expect("q >= 2");
    let (mut r, mut e) = (q, 0);
    while r % p == 0 {
        r /= p;
        e += 1;
    }
    if r != 1 {
        return Err(Error::Config(format!("q = {q} is not a prime power")));
    }
    Ok((p, e))
}

impl RunConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }

    /// Starts from the file (if any), applies the flags, then validates.
    pub fn resolve(file: Option<&Path>, o: &Overrides) -> Result<Self> {
        let mut cfg = match file {
            Some(path) => Self::from_file(path)?,
            None => RunConfig {
                p: 0,
                e: defaults::e(),
                n: 1,
                precision: defaults::precision(),
                t_truncation: defaults::t_truncation(),
                degree_bound: defaults::degree_bound(),
                seed: 0,
                output: None,
            },
        };
        if let Some(q) = o.q {
            let (p, e) = split_prime_power(q)?;
            if o.p.is_some_and(|x| x != p) || o.e.is_some_and(|x| x != e) {
                return Err(Error::Config(format!("--q {q} contradicts --p / --e")));
            }
            cfg.p = p;
            cfg.e = e;
        }
        macro_rules! set {
            ($($f:ident),*) => { $(if let Some(v) = o.$f.clone() { cfg.$f = v; })* };
        }
        set!(p, e, n, precision, t_truncation, degree_bound, seed);
        if o.output.is_some() {
            cfg.output = o.output.clone();
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn q(&self) -> u64 {
        self.p.pow(self.e)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        if !is_prime(self.p) {
            return bad(format!("p = {} is not a prime (set p or q)", self.p));
        }
        if self.e == 0 || self.p.checked_pow(self.e).is_none_or(|q| q > 1 << 16) {
            return bad(format!("q = {}^{} is out of range", self.p, self.e));
        }
        if self.n == 0 {
            return bad("N must be positive".into());
        }
        if !(1..=1_000_000).contains(&self.precision) {
            return bad(format!("precision {} outside 1..=1000000", self.precision));
        }
        if !(1..=4096).contains(&self.t_truncation) {
            return bad(format!("t_truncation {} outside 1..=4096", self.t_truncation));
        }
        if self.degree_bound > 256 {
            return bad(format!("degree_bound {} above 256", self.degree_bound));
        }
        self.context().map(|_| ())
    }

    pub fn context(&self) -> Result<Ctx> {
        Ctx::new(self.p, self.e, self.n).map_err(|e| Error::Config(format!("field for q = {}, N = {}: {e}", self.q(), self.n)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_powers() {
        assert_eq!(split_prime_power(9).unwrap(), (3, 2));
        assert_eq!(split_prime_power(2).unwrap(), (2, 1));
        assert!(split_prime_power(12).is_err());
        assert!(split_prime_power(1).is_err());
    }

    #[test]
    fn toml_with_defaults() {
        let cfg = RunConfig::from_toml_str("p = 3\nN = 2\nseed = 7\n").unwrap();
        assert_eq!((cfg.p, cfg.e, cfg.n, cfg.precision, cfg.seed), (3, 1, 2, 150, 7));
        cfg.validate().unwrap();
    }

    #[test]
    fn rejects_bad_config() {
        assert!(RunConfig::from_toml_str("p = 3\nN = 2\nprecison = 5\n").is_err());
        let cfg = RunConfig::from_toml_str("p = 4\nN = 1\n").unwrap();
        assert!(matches!(cfg.validate(), Err(Error::Config(_))));
        let o = Overrides { q: Some(9), p: Some(2), ..Default::default() };
        assert!(RunConfig::resolve(None, &o).is_err());
    }

    #[test]
    fn flags_override_file_values() {
        let o = Overrides { q: Some(3), n: Some(4), precision: Some(80), ..Default::default() };
        let cfg = RunConfig::resolve(None, &o).unwrap();
        assert_eq!((cfg.p, cfg.n, cfg.precision), (3, 4, 80));
    }
}
