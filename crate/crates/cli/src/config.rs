//! Run configuration: flags, then a `key = value` file, then defaults.

use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{bail, Context};
use polywave_core::waves::{DEFAULT_GUARD_SCALE, DEFAULT_NODE_BUDGET};
use polywave_core::WaveOptions;

use crate::UsageError;

pub const DEFAULT_SIEVE_LIMIT: u64 = 100_000_000;
pub const DEFAULT_PRIME_LIMIT: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format {other:?}, expected csv or json")),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub sieve_limit: u64,
    pub prime_limit: u64,
    pub node_budget: u64,
    pub guard_band_scale: f64,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub threads: Option<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            sieve_limit: DEFAULT_SIEVE_LIMIT,
            prime_limit: DEFAULT_PRIME_LIMIT,
            node_budget: DEFAULT_NODE_BUDGET,
            guard_band_scale: DEFAULT_GUARD_SCALE,
            format: Format::Csv,
            output: None,
            threads: None,
        }
    }
}

/// Values given on the command line; `None` means "not given".
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub sieve_limit: Option<u64>,
    pub prime_limit: Option<u64>,
    pub node_budget: Option<u64>,
    pub guard_band_scale: Option<f64>,
    pub format: Option<Format>,
    pub output: Option<PathBuf>,
    pub threads: Option<usize>,
}

fn parse<T: FromStr>(key: &str, value: &str, line: usize) -> anyhow::Result<T>
where
    T::Err: std::fmt::Display,
{
    value.parse::<T>().map_err(|e| {
        UsageError(format!("config line {line}: bad value {value:?} for {key}: {e}")).into()
    })
}

impl RunConfig {
    /// Apply a `key = value` file. Blank lines and `#` comments are skipped.
    pub fn apply_file(&mut self, text: &str) -> anyhow::Result<()> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(UsageError(format!("config line {}: expected key = value", i + 1)).into());
            };
            let (key, value) = (key.trim().replace('-', "_"), value.trim());
            let n = i + 1;
            match key.as_str() {
                "sieve_limit" => self.sieve_limit = parse(&key, value, n)?,
                "prime_limit" => self.prime_limit = parse(&key, value, n)?,
                "node_budget" => self.node_budget = parse(&key, value, n)?,
                "guard_band_scale" => self.guard_band_scale = parse(&key, value, n)?,
                "format" => self.format = parse(&key, value, n)?,
                "output" => self.output = Some(PathBuf::from(value)),
                "threads" => self.threads = Some(parse(&key, value, n)?),
                _ => return Err(UsageError(format!("config line {n}: unknown key {key:?}")).into()),
            }
        }
        Ok(())
    }

    pub fn apply_overrides(&mut self, o: &Overrides) {
        if let Some(v) = o.sieve_limit {
            self.sieve_limit = v;
        }
        if let Some(v) = o.prime_limit {
            self.prime_limit = v;
        }
        if let Some(v) = o.node_budget {
            self.node_budget = v;
        }
        if let Some(v) = o.guard_band_scale {
            self.guard_band_scale = v;
        }
        if let Some(v) = o.format {
            self.format = v;
        }
        if let Some(v) = &o.output {
            self.output = Some(v.clone());
        }
        if let Some(v) = o.threads {
            self.threads = Some(v);
        }
    }

    pub fn validate(&self) -> anyhow::Result<()> {
        if self.sieve_limit == 0 || self.prime_limit == 0 || self.node_budget == 0 {
            bail!(UsageError("limits must be positive".into()));
        }
        if !(self.guard_band_scale > 0.0 && self.guard_band_scale.is_finite()) {
            bail!(UsageError("guard band scale must be positive".into()));
        }
        if self.threads == Some(0) {
            bail!(UsageError("thread count must be positive".into()));
        }
        Ok(())
    }

    pub fn resolve(file: Option<&Path>, overrides: &Overrides) -> anyhow::Result<Self> {
        let mut cfg = RunConfig::default();
        if let Some(path) = file {
            let text = fs::read_to_string(path)
                .with_context(|| format!("reading config {}", path.display()))?;
            cfg.apply_file(&text)?;
        }
        cfg.apply_overrides(overrides);
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn wave_options(&self) -> WaveOptions {
        WaveOptions { node_budget: self.node_budget, guard_scale: self.guard_band_scale }
    }
}
