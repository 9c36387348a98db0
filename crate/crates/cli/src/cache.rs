//! On-disk cache of chain counts.
//!
//! ```text
//! efrac-chain-cache 1
//! modulus 5040
//! divisors 60
//! i,a_i,value,flag
//! 1,1,2,exact
//! ...
//! ```

use std::io::Write;
use std::path::{Path, PathBuf};

use efrac_core::alpha::Provenance;
use efrac_core::arith::FactoredInteger;
use efrac_core::subsetsum::{chain_counts, DivisorChain};

use crate::error::{CliError, Result};

pub const CACHE_MAGIC: &str = "efrac-chain-cache";
pub const CACHE_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CacheRow {
    pub i: usize,
    pub a_i: u64,
    pub value: u64,
    pub flag: Provenance,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainCacheFile {
    pub modulus: u64,
    pub rows: Vec<CacheRow>,
}

impl ChainCacheFile {
    pub fn exact(chain: &DivisorChain, counts: &[u64]) -> Self {
        let rows = chain
            .elements()
            .iter()
            .zip(counts)
            .enumerate()
            .map(|(k, (&a_i, &value))| CacheRow {
                i: k + 1,
                a_i,
                value,
                flag: Provenance::Exact,
            })
            .collect();
        Self {
            modulus: chain.modulus(),
            rows,
        }
    }

    pub fn values(&self) -> Vec<u64> {
        self.rows.iter().map(|r| r.value).collect()
    }

    pub fn render(&self) -> String {
        let mut out = format!(
            "{CACHE_MAGIC} {CACHE_VERSION}\nmodulus {}\ndivisors {}\ni,a_i,value,flag\n",
            self.modulus,
            self.rows.len()
        );
        for r in &self.rows {
            out.push_str(&format!("{},{},{},{}\n", r.i, r.a_i, r.value, r.flag.as_str()));
        }
        out
    }

    pub fn parse(text: &str) -> std::result::Result<Self, String> {
        let mut lines = text.lines();
        let mut header = |what: &str| -> std::result::Result<String, String> {
            let line = lines.next().ok_or_else(|| format!("missing {what} line"))?;
            let (key, value) = line
                .split_once(' ')
                .ok_or_else(|| format!("malformed {what} line {line:?}"))?;
            if key != what {
                return Err(format!("expected {what:?}, found {key:?}"));
            }
            Ok(value.to_string())
        };
        let version = header(CACHE_MAGIC)?;
        if version != CACHE_VERSION.to_string() {
            return Err(format!("unsupported cache version {version:?}"));
        }
        let modulus: u64 = header("modulus")?
            .parse()
            .map_err(|_| "bad modulus".to_string())?;
        let count: usize = header("divisors")?
            .parse()
            .map_err(|_| "bad divisor count".to_string())?;
        if lines.next() != Some("i,a_i,value,flag") {
            return Err("missing column header".into());
        }
        let mut rows = Vec::with_capacity(count);
        for (k, line) in lines.enumerate() {
            let fields: Vec<&str> = line.split(',').collect();
            let [i, a_i, value, flag] = fields[..] else {
                return Err(format!("row {} has {} fields", k + 1, fields.len()));
            };
            let parse = |s: &str| s.parse::<u64>().map_err(|_| format!("row {}: bad number {s:?}", k + 1));
            let row = CacheRow {
                i: parse(i)? as usize,
                a_i: parse(a_i)?,
                value: parse(value)?,
                flag: Provenance::parse(flag).ok_or_else(|| format!("row {}: bad flag {flag:?}", k + 1))?,
            };
            if row.i != k + 1 {
                return Err(format!("row {} carries index {}", k + 1, row.i));
            }
            rows.push(row);
        }
        if rows.len() != count {
            return Err(format!("header says {count} rows, found {}", rows.len()));
        }
        Ok(Self { modulus, rows })
    }

    /// Checks the rows against the divisors of the modulus.
    pub fn validate_against(&self, chain: &DivisorChain) -> std::result::Result<(), String> {
        if self.modulus != chain.modulus() {
            return Err(format!("modulus {} != {}", self.modulus, chain.modulus()));
        }
        if self.rows.len() != chain.len() {
            return Err(format!("{} rows for {} divisors", self.rows.len(), chain.len()));
        }
        for (row, &a) in self.rows.iter().zip(chain.elements()) {
            if row.a_i != a {
                return Err(format!("row {} lists a_i = {}, expected {a}", row.i, row.a_i));
            }
            if row.value == 0 {
                return Err(format!("row {} has a zero count", row.i));
            }
        }
        Ok(())
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text).map_err(|reason| CliError::Cache {
            path: path.to_path_buf(),
            reason,
        })
    }

    /// Writes to a temporary file in the same directory, then renames.
    pub fn write_atomic(&self, path: &Path) -> Result<()> {
        let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
        let io = |source| CliError::Io {
            path: path.to_path_buf(),
            source,
        };
        std::fs::create_dir_all(dir).map_err(io)?;
        let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
        tmp.write_all(self.render().as_bytes()).map_err(io)?;
        tmp.as_file().sync_all().map_err(io)?;
        tmp.persist(path).map_err(|e| io(e.error))?;
        Ok(())
    }
}

pub fn cache_path(dir: &Path, modulus: u64) -> PathBuf {
    dir.join(format!("chain-{modulus}.csv"))
}

/// Exact chain counts for the divisors of `m`, from the cache when present.
///
/// A cache file that fails to parse or disagrees with the divisors of `m` is
/// an error; it is never overwritten.
pub fn chain_counts_cached(m: &FactoredInteger, dir: &Path, budget: u64) -> Result<Vec<u64>> {
    let chain = DivisorChain::of_modulus(m)?;
    let path = cache_path(dir, chain.modulus());
    if path.exists() {
        let file = ChainCacheFile::read(&path)?;
        file.validate_against(&chain)
            .map_err(|reason| CliError::Cache { path, reason })?;
        return Ok(file.values());
    }
    let counts = chain_counts(&chain, budget)?;
    ChainCacheFile::exact(&chain, &counts).write_atomic(&path)?;
    Ok(counts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let m = FactoredInteger::factor(360).unwrap();
        let first = chain_counts_cached(&m, dir.path(), u64::MAX).unwrap();
        let path = cache_path(dir.path(), 360);
        assert!(path.exists());
        let second = chain_counts_cached(&m, dir.path(), u64::MAX).unwrap();
        assert_eq!(first, second);
        let file = ChainCacheFile::read(&path).unwrap();
        assert_eq!(ChainCacheFile::parse(&file.render()).unwrap(), file);
    }

    #[test]
    fn corrupted_header_is_rejected_and_left_alone() {
        let dir = tempfile::tempdir().unwrap();
        let path = cache_path(dir.path(), 12);
        let bad = "efrac-chain-cache 9\nmodulus 12\ndivisors 6\ni,a_i,value,flag\n";
        std::fs::write(&path, bad).unwrap();
        let m = FactoredInteger::factor(12).unwrap();
        let err = chain_counts_cached(&m, dir.path(), u64::MAX).unwrap_err();
        assert!(matches!(err, CliError::Cache { .. }));
        assert_eq!(err.exit_code(), 1);
        assert_eq!(std::fs::read_to_string(&path).unwrap(), bad);
    }

    #[test]
    fn mismatched_rows_are_rejected() {
        let chain = DivisorChain::of_u64(6).unwrap();
        let mut file = ChainCacheFile::exact(&chain, &[2, 4, 8, 13]);
        file.rows[2].a_i = 4;
        assert!(file.validate_against(&chain).is_err());
        let text = ChainCacheFile::exact(&chain, &[2, 4, 8, 13]).render();
        assert!(ChainCacheFile::parse(&text.replace("divisors 4", "divisors 5")).is_err());
        assert!(ChainCacheFile::parse(&text.replace("3,3,8,exact", "4,3,8,exact")).is_err());
        assert!(ChainCacheFile::parse(&text.replace("exact\n4", "bogus\n4")).is_err());
    }
}
