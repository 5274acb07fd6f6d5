//! Flat `key = value` run configuration.
//!
//! ```text
//! # Category I sweep
//! distribution = cauchy
//! function = f1..f7
//! runs = 100
//! seed = 7
//! ```
//!
//! Unknown keys are rejected. Keys left out fall back to the per-category
//! preset and the function's evaluation budget.

use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::experiment::ParameterOverrides;

pub const KEYS: [&str; 15] = [
    "distribution",
    "function",
    "pop_size",
    "step_size",
    "en_buff",
    "ini_ke",
    "coll_rate",
    "loss_rate",
    "dec_thres",
    "syn_thres",
    "fe_limit",
    "runs",
    "seed",
    "parallelism",
    "out_dir",
];

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigFile {
    pub distribution: Option<String>,
    pub function: Option<String>,
    pub params: ParameterOverrides,
    pub runs: Option<u32>,
    pub seed: Option<u64>,
    pub parallelism: Option<usize>,
    pub out_dir: Option<PathBuf>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = ConfigFile::default();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key = value", n + 1)))?;
            cfg.set(key.trim(), value.trim())
                .map_err(|e| Error::Config(format!("line {}: {e}", n + 1)))?;
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }

    /// Sets one key from its textual value.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let p = &mut self.params;
        match key {
            "distribution" => self.distribution = Some(value.to_string()),
            "function" => self.function = Some(value.to_string()),
            "pop_size" => p.pop_size = Some(integer(key, value)? as usize),
            "step_size" => p.step_size = Some(real(key, value)?),
            "en_buff" => p.en_buff = Some(real(key, value)?),
            "ini_ke" => p.ini_ke = Some(real(key, value)?),
            "coll_rate" => p.coll_rate = Some(real(key, value)?),
            "loss_rate" => p.loss_rate = Some(real(key, value)?),
            "dec_thres" => p.dec_thres = Some(integer(key, value)?),
            "syn_thres" => p.syn_thres = Some(real(key, value)?),
            "fe_limit" => p.fe_limit = Some(integer(key, value)?),
            "runs" => {
                self.runs = Some(
                    u32::try_from(integer(key, value)?)
                        .map_err(|_| Error::Config(format!("runs out of range: {value}")))?,
                )
            }
            "seed" => self.seed = Some(integer(key, value)?),
            "parallelism" => self.parallelism = Some(integer(key, value)? as usize),
            "out_dir" => self.out_dir = Some(PathBuf::from(value)),
            other => return Err(Error::Config(format!("unknown key '{other}'"))),
        }
        Ok(())
    }

    /// Values from `self` take precedence over `base`.
    pub fn over(self, base: ConfigFile) -> ConfigFile {
        ConfigFile {
            distribution: self.distribution.or(base.distribution),
            function: self.function.or(base.function),
            params: self.params.or(&base.params),
            runs: self.runs.or(base.runs),
            seed: self.seed.or(base.seed),
            parallelism: self.parallelism.or(base.parallelism),
            out_dir: self.out_dir.or(base.out_dir),
        }
    }
}

fn real(key: &str, value: &str) -> Result<f64> {
    let v: f64 = value
        .parse()
        .map_err(|_| Error::Config(format!("{key}: not a number: '{value}'")))?;
    if !v.is_finite() {
        return Err(Error::Config(format!("{key}: must be finite")));
    }
    Ok(v)
}

/// Non-negative integer; scientific notation such as `1.5e5` is accepted when
/// it denotes a whole number.
fn integer(key: &str, value: &str) -> Result<u64> {
    if let Ok(v) = value.parse::<u64>() {
        return Ok(v);
    }
    let v = real(key, value)?;
    if v < 0.0 || v.fract() != 0.0 || v > u64::MAX as f64 {
        return Err(Error::Config(format!(
            "{key}: expected a non-negative integer, got '{value}'"
        )));
    }
    Ok(v as u64)
}
