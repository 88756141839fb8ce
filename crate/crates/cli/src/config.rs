//! Run configuration: defaults, then an optional `key = value` file, then the
//! `HECKE_LEVEL_MAX` cap, then command-line flags.

use std::fmt;
use std::str::FromStr;

use hecke_core::parse::parse_field_tag;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("config line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("invalid value for {key}: {msg}")]
    Value { key: String, msg: String },
    #[error("cannot read config file {path}: {msg}")]
    Io { path: String, msg: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim() {
            "json" => Ok(Format::Json),
            "text" => Ok(Format::Text),
            other => Err(format!("unknown format '{other}' (json | text)")),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Text => "text",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Config {
    /// Field tag, `Q` or `d<k>`.
    pub field: String,
    /// Largest ideal norm any enumeration may reach.
    pub level_max: u64,
    /// Series cutoff `B`.
    pub bound: u64,
    pub tolerance: f64,
    pub format: Format,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            field: "d1".to_string(),
            level_max: 64,
            bound: 100_000,
            tolerance: 1e-6,
            format: Format::Json,
        }
    }
}

fn value_err(key: &str, msg: impl fmt::Display) -> ConfigError {
    ConfigError::Value {
        key: key.to_string(),
        msg: msg.to_string(),
    }
}

impl Config {
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        let v = value.trim();
        match key {
            "field" => {
                parse_field_tag(v).map_err(|e| value_err(key, e))?;
                self.field = v.to_string();
            }
            "level_max" => self.level_max = v.parse().map_err(|e| value_err(key, e))?,
            "bound" => self.bound = v.parse().map_err(|e| value_err(key, e))?,
            "tolerance" => {
                let t: f64 = v.parse().map_err(|e| value_err(key, e))?;
                if !(t > 0.0) {
                    return Err(value_err(key, "must be positive"));
                }
                self.tolerance = t;
            }
            "format" => self.format = v.parse().map_err(|e: String| value_err(key, e))?,
            _ => return Err(value_err(key, "unknown key")),
        }
        Ok(())
    }

    /// Applies `key = value` lines; `#` starts a comment.
    pub fn apply_text(&mut self, text: &str) -> Result<(), ConfigError> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| ConfigError::Syntax {
                line: i + 1,
                msg: format!("expected key = value, got '{line}'"),
            })?;
            self.set(k.trim(), v)?;
        }
        Ok(())
    }

    pub fn parse(text: &str) -> Result<Config, ConfigError> {
        let mut c = Config::default();
        c.apply_text(text)?;
        Ok(c)
    }

    pub fn load(path: &str) -> Result<Config, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io {
            path: path.to_string(),
            msg: e.to_string(),
        })?;
        Config::parse(&text)
    }

    /// Caps `level_max` by the environment safety valve.
    pub fn apply_env_cap(&mut self, value: Option<&str>) -> Result<(), ConfigError> {
        if let Some(v) = value {
            let cap: u64 = v
                .trim()
                .parse()
                .map_err(|e| value_err("HECKE_LEVEL_MAX", e))?;
            self.level_max = self.level_max.min(cap);
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        format!(
            "field = {}\nlevel_max = {}\nbound = {}\ntolerance = {:e}\nformat = {}\n",
            self.field, self.level_max, self.bound, self.tolerance, self.format
        )
    }
}
