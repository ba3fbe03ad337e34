use std::fs;
use std::path::Path;

use thiserror::Error;

/// Rule constants for the scorer. The defaults reproduce the reference VADER
/// rule set.
#[derive(Debug, Clone, PartialEq)]
pub struct EngineConfig {
    /// Normalization constant in `s / sqrt(s^2 + alpha)`.
    pub alpha: f64,
    pub booster_increment: f64,
    pub caps_scalar: f64,
    pub negation_scalar: f64,
    pub exclamation_unit: f64,
    pub exclamation_max: usize,
    pub question_unit: f64,
    pub question_cap: f64,
    pub but_before_weight: f64,
    pub but_after_weight: f64,
    /// Booster decay for the words one, two and three positions back.
    pub booster_distance_decay: [f64; 3],
    pub max_ngram: usize,
    pub normalize_elongation: bool,
}

impl Default for EngineConfig {
    fn default() -> Self {
        Self {
            alpha: 15.0,
            booster_increment: 0.293,
            caps_scalar: 0.733,
            negation_scalar: -0.74,
            exclamation_unit: 0.292,
            exclamation_max: 4,
            question_unit: 0.18,
            question_cap: 0.96,
            but_before_weight: 0.5,
            but_after_weight: 1.5,
            booster_distance_decay: [1.0, 0.95, 0.9],
            max_ngram: 3,
            normalize_elongation: false,
        }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("line {line}: {reason}")]
    Syntax { line: usize, reason: String },
    #[error("line {line}: unknown key {key:?}")]
    UnknownKey { line: usize, key: String },
    #[error("{0}")]
    Invalid(String),
    #[error("failed to read {path}: {reason}")]
    Io { path: String, reason: String },
}

impl EngineConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        let positive = [
            ("alpha", self.alpha),
            ("booster_increment", self.booster_increment),
            ("caps_scalar", self.caps_scalar),
            ("exclamation_unit", self.exclamation_unit),
            ("question_unit", self.question_unit),
            ("question_cap", self.question_cap),
            ("but_before_weight", self.but_before_weight),
            ("but_after_weight", self.but_after_weight),
        ];
        for (name, v) in positive {
            if !(v.is_finite() && v > 0.0) {
                return Err(ConfigError::Invalid(format!("{name} must be positive, got {v}")));
            }
        }
        if !(self.negation_scalar.is_finite() && self.negation_scalar < 0.0) {
            return Err(ConfigError::Invalid(format!(
                "negation_scalar must be negative, got {}",
                self.negation_scalar
            )));
        }
        if self.booster_distance_decay.iter().any(|d| !(d.is_finite() && *d > 0.0)) {
            return Err(ConfigError::Invalid("booster_distance_decay entries must be positive".into()));
        }
        if !(1..=3).contains(&self.max_ngram) {
            return Err(ConfigError::Invalid(format!("max_ngram must be 1, 2 or 3, got {}", self.max_ngram)));
        }
        Ok(())
    }

    /// Reads `key = value` overrides on top of the defaults. Blank lines and
    /// lines starting with `#` are skipped.
    pub fn from_kv_str(text: &str) -> Result<Self, ConfigError> {
        let mut cfg = Self::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let (key, value) = trimmed.split_once('=').ok_or_else(|| ConfigError::Syntax {
                line,
                reason: "expected `key = value`".into(),
            })?;
            cfg.set(key.trim(), value.trim(), line)?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self, ConfigError> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| ConfigError::Io {
            path: path.display().to_string(),
            reason: e.to_string(),
        })?;
        Self::from_kv_str(&text)
    }

    fn set(&mut self, key: &str, value: &str, line: usize) -> Result<(), ConfigError> {
        let bad = |what: &str| ConfigError::Syntax {
            line,
            reason: format!("{key}: expected {what}, got {value:?}"),
        };
        let real = || value.parse::<f64>().map_err(|_| bad("a number"));
        match key {
            "alpha" => self.alpha = real()?,
            "booster_increment" => self.booster_increment = real()?,
            "caps_scalar" => self.caps_scalar = real()?,
            "negation_scalar" => self.negation_scalar = real()?,
            "exclamation_unit" => self.exclamation_unit = real()?,
            "exclamation_max" => self.exclamation_max = value.parse().map_err(|_| bad("an integer"))?,
            "question_unit" => self.question_unit = real()?,
            "question_cap" => self.question_cap = real()?,
            "but_before_weight" => self.but_before_weight = real()?,
            "but_after_weight" => self.but_after_weight = real()?,
            "booster_distance_decay" => {
                let parts: Vec<f64> = value
                    .split(',')
                    .map(|p| p.trim().parse::<f64>())
                    .collect::<Result<_, _>>()
                    .map_err(|_| bad("three comma-separated numbers"))?;
                self.booster_distance_decay = parts
                    .try_into()
                    .map_err(|_| bad("three comma-separated numbers"))?;
            }
            "max_ngram" => self.max_ngram = value.parse().map_err(|_| bad("an integer"))?,
            "normalize_elongation" => {
                self.normalize_elongation = value.parse().map_err(|_| bad("true or false"))?
            }
            _ => {
                return Err(ConfigError::UnknownKey {
                    line,
                    key: key.to_string(),
                })
            }
        }
        Ok(())
    }
}
