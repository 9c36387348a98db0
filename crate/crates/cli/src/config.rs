use std::path::{Path, PathBuf};
use std::str::FromStr;

use efrac_core::alpha::MIN_PRECISION_BITS;
use efrac_core::subsetsum::DEFAULT_MEMORY_BUDGET;

use crate::error::{CliError, Result};

/// Environment variable naming a `key=value` config file.
pub const CONFIG_ENV: &str = "EFRAC_CONFIG";

pub const MIN_MEMORY_BUDGET: u64 = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(format!("unknown output format {other:?} (expected csv or json)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub memory_budget_bytes: u64,
    pub cache_dir: PathBuf,
    pub log_precision_bits: u32,
    pub output_format: OutputFormat,
    /// `None` lets the pool pick one thread per core.
    pub workers: Option<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            memory_budget_bytes: DEFAULT_MEMORY_BUDGET,
            cache_dir: PathBuf::from(".efrac-cache"),
            log_precision_bits: MIN_PRECISION_BITS,
            output_format: OutputFormat::Csv,
            workers: None,
        }
    }
}

/// Values given on the command line; unset fields fall through.
#[derive(Clone, Debug, Default)]
pub struct ConfigOverrides {
    pub memory_budget_bytes: Option<u64>,
    pub cache_dir: Option<PathBuf>,
    pub log_precision_bits: Option<u32>,
    pub output_format: Option<OutputFormat>,
    pub workers: Option<usize>,
}

/// Parses sizes like `8G`, `512M`, `65536` (binary multiples).
pub fn parse_bytes(s: &str) -> std::result::Result<u64, String> {
    let s = s.trim();
    let (digits, mult) = match s.char_indices().last() {
        Some((i, c)) if c.is_ascii_alphabetic() => {
            let mult = match c.to_ascii_uppercase() {
                'K' => 1u64 << 10,
                'M' => 1 << 20,
                'G' => 1 << 30,
                'T' => 1 << 40,
                _ => return Err(format!("unknown size suffix in {s:?}")),
            };
            (&s[..i], mult)
        }
        _ => (s, 1),
    };
    let n: u64 = digits
        .trim()
        .parse()
        .map_err(|_| format!("bad size {s:?}"))?;
    n.checked_mul(mult).ok_or_else(|| format!("size {s:?} overflows"))
}

impl RunConfig {
    fn apply_file(&mut self, path: &Path) -> Result<()> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::Config(format!("{}:{}: expected key=value", path.display(), lineno + 1))
            })?;
            let (key, value) = (key.trim(), value.trim());
            let bad = |e: String| CliError::Config(format!("{}:{}: {e}", path.display(), lineno + 1));
            match key {
                "memory_budget" | "memory_budget_bytes" => {
                    self.memory_budget_bytes = parse_bytes(value).map_err(bad)?
                }
                "cache_dir" => self.cache_dir = PathBuf::from(value),
                "log_precision_bits" | "precision" => {
                    self.log_precision_bits =
                        value.parse().map_err(|_| bad(format!("bad precision {value:?}")))?
                }
                "format" | "output_format" => self.output_format = value.parse().map_err(bad)?,
                "workers" => {
                    self.workers =
                        Some(value.parse().map_err(|_| bad(format!("bad worker count {value:?}")))?)
                }
                other => return Err(bad(format!("unknown key {other:?}"))),
            }
        }
        Ok(())
    }

    fn apply_overrides(&mut self, o: &ConfigOverrides) {
        if let Some(v) = o.memory_budget_bytes {
            self.memory_budget_bytes = v;
        }
        if let Some(v) = &o.cache_dir {
            self.cache_dir = v.clone();
        }
        if let Some(v) = o.log_precision_bits {
            self.log_precision_bits = v;
        }
        if let Some(v) = o.output_format {
            self.output_format = v;
        }
        if o.workers.is_some() {
            self.workers = o.workers;
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.memory_budget_bytes < MIN_MEMORY_BUDGET {
            return Err(CliError::Config(format!(
                "memory budget must be at least {MIN_MEMORY_BUDGET} bytes"
            )));
        }
        if self.log_precision_bits < MIN_PRECISION_BITS {
            return Err(CliError::Config(format!(
                "log precision must be at least {MIN_PRECISION_BITS} bits"
            )));
        }
        if self.workers == Some(0) {
            return Err(CliError::Config("workers must be positive".into()));
        }
        Ok(())
    }

    /// Flags > file named by `config_file` (normally `$EFRAC_CONFIG`) > defaults.
    pub fn resolve(config_file: Option<&Path>, overrides: &ConfigOverrides) -> Result<Self> {
        let mut cfg = RunConfig::default();
        if let Some(path) = config_file {
            cfg.apply_file(path)?;
        }
        cfg.apply_overrides(overrides);
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_env(overrides: &ConfigOverrides) -> Result<Self> {
        let file = std::env::var_os(CONFIG_ENV).map(PathBuf::from);
        Self::resolve(file.as_deref(), overrides)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    #[test]
    fn precedence() {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        writeln!(file, "# comment\nmemory_budget = 2G\nformat=json\nprecision = 96").unwrap();
        let cfg = RunConfig::resolve(Some(file.path()), &ConfigOverrides::default()).unwrap();
        assert_eq!(cfg.memory_budget_bytes, 2 << 30);
        assert_eq!(cfg.output_format, OutputFormat::Json);
        assert_eq!(cfg.log_precision_bits, 96);

        let flags = ConfigOverrides {
            output_format: Some(OutputFormat::Csv),
            ..Default::default()
        };
        let cfg = RunConfig::resolve(Some(file.path()), &flags).unwrap();
        assert_eq!(cfg.output_format, OutputFormat::Csv);
        assert_eq!(cfg.memory_budget_bytes, 2 << 30);
    }

    #[test]
    fn validation() {
        let small = ConfigOverrides {
            memory_budget_bytes: Some(1000),
            ..Default::default()
        };
        assert!(RunConfig::resolve(None, &small).is_err());
        let low = ConfigOverrides {
            log_precision_bits: Some(32),
            ..Default::default()
        };
        assert!(RunConfig::resolve(None, &low).is_err());
        let mut file = tempfile::NamedTempFile::new().unwrap();
        writeln!(file, "colour = blue").unwrap();
        assert!(RunConfig::resolve(Some(file.path()), &ConfigOverrides::default()).is_err());
    }

    #[test]
    fn byte_sizes() {
        assert_eq!(parse_bytes("65536"), Ok(65536));
        assert_eq!(parse_bytes("8G"), Ok(8 << 30));
        assert_eq!(parse_bytes("3m"), Ok(3 << 20));
        assert!(parse_bytes("3Q").is_err());
    }
}
