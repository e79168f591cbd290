//! Experiment configuration: a flat key=value file with CLI overrides.
//!
//! Flag names mirror config keys (`half-width` / `half_width` both accepted).
//! Unknown keys are rejected rather than ignored so that typos fail loudly.

use std::collections::BTreeSet;
use std::path::Path;

use crate::error::LabError;

pub const EXPERIMENTS: &[&str] = &[
    "verify-ccr",
    "covariance",
    "uncertainty",
    "sigma-invariance",
    "eigen-scan",
    "duration",
    "interact",
    "pauli-shift",
    "leakage",
];

#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub experiment: String,
    pub tau: f64,
    pub half_width: u32,
    /// Interior buffer; defaults to `half_width / 2` when unset.
    pub buffer: Option<u32>,
    pub quad_nodes: usize,
    pub seed: u64,
    /// Probe times, in units of `tau`.
    pub t_grid: Vec<f64>,
    /// Shift frequencies, in units of the band edge `W`.
    pub k_grid: Vec<f64>,
    /// Overlap family, e.g. `none`, `tick:1:0.1`, `gaussian:0:2:0.05`,
    /// `geometric:2`, `harmonic`, `lorentzian`.
    pub overlap: Option<String>,
    /// External system, e.g. `two-level:0.8` or `ladder:5:0.8`.
    pub system_d: Option<String>,
    /// Clock state, e.g. `tick:0` or `gaussian:0:3`.
    pub state: Option<String>,
}

impl ExperimentConfig {
    pub fn new(experiment: &str) -> Result<Self, LabError> {
        if !EXPERIMENTS.contains(&experiment) {
            return Err(LabError::Config(format!("unknown experiment '{experiment}'")));
        }
        Ok(ExperimentConfig {
            experiment: experiment.to_string(),
            tau: 1.0,
            half_width: 32,
            buffer: None,
            quad_nodes: 64,
            seed: 0,
            t_grid: Vec::new(),
            k_grid: Vec::new(),
            overlap: None,
            system_d: None,
            state: None,
        })
    }

    pub fn buffer_or_default(&self) -> u32 {
        self.buffer.unwrap_or(self.half_width / 2)
    }

    /// Apply `key = value` lines from a config file. Later lines win; `#`
    /// starts a comment.
    pub fn apply_file(&mut self, path: &Path) -> Result<(), LabError> {
        let text = std::fs::read_to_string(path)?;
        let mut seen = BTreeSet::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                LabError::Config(format!("{}:{}: expected 'key = value'", path.display(), lineno + 1))
            })?;
            let key = key.trim();
            let value = value.trim();
            self.set(key, value).map_err(|e| {
                LabError::Config(format!("{}:{}: {e}", path.display(), lineno + 1))
            })?;
            seen.insert(key.to_string());
        }
        Ok(())
    }

    /// Set one config key from its textual value. Rejects unknown keys.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), LabError> {
        let norm = key.replace('-', "_");
        match norm.as_str() {
            "experiment" => {
                if !EXPERIMENTS.contains(&value) {
                    return Err(LabError::Config(format!("unknown experiment '{value}'")));
                }
                self.experiment = value.to_string();
            }
            "tau" => self.tau = parse_f64(key, value)?,
            "half_width" | "n" => self.half_width = parse_u32(key, value)?,
            "buffer" | "b" => self.buffer = Some(parse_u32(key, value)?),
            "quad_nodes" => self.quad_nodes = parse_u32(key, value)? as usize,
            "seed" => {
                self.seed = value
                    .parse()
                    .map_err(|_| LabError::Config(format!("{key}: '{value}' is not an integer")))?;
            }
            "t_grid" => self.t_grid = parse_grid(key, value)?,
            "k_grid" => self.k_grid = parse_grid(key, value)?,
            "overlap" => self.overlap = Some(value.to_string()),
            "system_d" => self.system_d = Some(value.to_string()),
            "state" => self.state = Some(value.to_string()),
            _ => return Err(LabError::Config(format!("unknown config key '{key}'"))),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), LabError> {
        if !(self.tau > 0.0) || !self.tau.is_finite() {
            return Err(LabError::Config(format!("tau must be positive and finite, got {}", self.tau)));
        }
        if self.half_width < 2 {
            return Err(LabError::Config(format!("half-width must be >= 2, got {}", self.half_width)));
        }
        if let Some(b) = self.buffer {
            if b == 0 || b >= self.half_width {
                return Err(LabError::Config(format!(
                    "buffer must satisfy 0 < B < N, got B={b}, N={}",
                    self.half_width
                )));
            }
        }
        if self.quad_nodes < 16 {
            return Err(LabError::Config(format!("quad-nodes must be >= 16, got {}", self.quad_nodes)));
        }
        for &t in &self.t_grid {
            if !t.is_finite() {
                return Err(LabError::Config("t-grid entries must be finite".into()));
            }
        }
        for &k in &self.k_grid {
            if !k.is_finite() {
                return Err(LabError::Config("k-grid entries must be finite".into()));
            }
        }
        Ok(())
    }
}

fn parse_f64(key: &str, value: &str) -> Result<f64, LabError> {
    value
        .parse()
        .map_err(|_| LabError::Config(format!("{key}: '{value}' is not a number")))
}

fn parse_u32(key: &str, value: &str) -> Result<u32, LabError> {
    value
        .parse()
        .map_err(|_| LabError::Config(format!("{key}: '{value}' is not a non-negative integer")))
}

/// Comma-separated list of numbers.
pub fn parse_grid(key: &str, value: &str) -> Result<Vec<f64>, LabError> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| parse_f64(key, s))
        .collect()
}
