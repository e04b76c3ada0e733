//! Flat key=value config files with command-line override.
//!
//! Every field has one canonical long-form flag; the config file uses the
//! same names. Precedence: flag, then file, then built-in default.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

/// Exit statuses: 0 success, 2 usage, 3 capacity/conditioning, 1 I/O.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Capacity(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Capacity(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Capacity(m) | CliError::Io(m) => write!(f, "{m}"),
        }
    }
}

impl From<cfas::Error> for CliError {
    fn from(e: cfas::Error) -> Self {
        match e {
            cfas::Error::GridTooLarge { .. } | cfas::Error::IllConditioned { .. } => {
                CliError::Capacity(e.to_string())
            }
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

const KNOWN_KEYS: &[&str] = &[
    "sides",
    "lambda2",
    "u0-start",
    "u0-stop",
    "u0-step",
    "beta",
    "es",
    "sigma2",
    "spacing",
    "thresholds",
    "replicates",
    "seed",
    "workers",
    "cap",
    "clamp-tol",
    "output",
    "outdir",
    "figure",
    "area",
    "volume",
    "limits",
    "u0",
    "steps",
];

/// Parsed config file contents.
#[derive(Debug, Default)]
pub struct Settings(HashMap<String, String>);

impl Settings {
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        let mut map = HashMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(CliError::Usage(format!(
                    "config line {} is not key=value: {raw:?}",
                    lineno + 1
                )));
            };
            let key = key.trim();
            if !KNOWN_KEYS.contains(&key) {
                return Err(CliError::Usage(format!("unknown config key {key:?}")));
            }
            map.insert(key.to_string(), value.trim().to_string());
        }
        Ok(Self(map))
    }

    pub fn get_str(&self, key: &str) -> Option<&str> {
        self.0.get(key).map(String::as_str)
    }

    pub fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>, CliError>
    where
        T::Err: fmt::Display,
    {
        match self.0.get(key) {
            None => Ok(None),
            Some(raw) => raw
                .parse()
                .map(Some)
                .map_err(|e| CliError::Usage(format!("config key {key} = {raw:?}: {e}"))),
        }
    }
}

/// Parses a comma-separated list of numbers; empty input gives an empty
/// list.
pub fn parse_list(raw: &str, what: &str) -> Result<Vec<f64>, CliError> {
    let raw = raw.trim();
    if raw.is_empty() {
        return Ok(Vec::new());
    }
    raw.split(',')
        .map(|item| {
            item.trim()
                .parse::<f64>()
                .map_err(|e| CliError::Usage(format!("bad {what} entry {item:?}: {e}")))
        })
        .collect()
}

/// Expands a threshold range into its grid; `start < stop`, `step > 0`.
pub fn expand_range(start: f64, stop: f64, step: f64) -> Result<Vec<f64>, CliError> {
    if !(start.is_finite() && stop.is_finite() && step.is_finite()) || start >= stop || step <= 0.0
    {
        return Err(CliError::Usage(format!(
            "invalid threshold range: start {start}, stop {stop}, step {step}"
        )));
    }
    let n = ((stop - start) / step + 1e-9).floor() as usize + 1;
    Ok((0..n).map(|i| start + i as f64 * step).collect())
}
