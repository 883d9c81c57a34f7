//! Settings record handed to an external seq2seq trainer. Nothing here
//! trains a model.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Range {
    pub min: u32,
    pub max: u32,
}

impl fmt::Display for Range {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.min == self.max {
            write!(f, "{}", self.min)
        } else {
            write!(f, "{}-{}", self.min, self.max)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrainerConfig {
    pub layers: u32,
    pub nodes: u32,
    pub buckets: (u32, u32),
    pub epochs: Range,
    pub vocabulary: Range,
    pub learning_rate: f64,
    pub decay_factor: f64,
    pub gradient_norm: f64,
}

impl Default for TrainerConfig {
    fn default() -> Self {
        TrainerConfig {
            layers: 1,
            nodes: 400,
            buckets: (510, 510),
            epochs: Range { min: 25, max: 35 },
            vocabulary: Range { min: 150, max: 200 },
            learning_rate: 0.5,
            decay_factor: 0.99,
            gradient_norm: 5.0,
        }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("line {line}: expected `Name = value`")]
    Syntax { line: usize },
    #[error("unknown setting `{0}`")]
    Unknown(String),
    #[error("bad value for `{key}`: `{value}`")]
    Value { key: String, value: String },
    #[error("`{0}` must be positive")]
    NotPositive(&'static str),
    #[error("`{0}` range has min > max")]
    Inverted(&'static str),
}

impl TrainerConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        let positive = [
            ("Layers", self.layers > 0),
            ("Nodes", self.nodes > 0),
            ("Buckets", self.buckets.0 > 0 && self.buckets.1 > 0),
            ("Epochs", self.epochs.min > 0),
            ("Vocabulary", self.vocabulary.min > 0),
            ("Learning rate", self.learning_rate > 0.0),
            ("Decay factor", self.decay_factor > 0.0),
            ("Gradient norm", self.gradient_norm > 0.0),
        ];
        if let Some((name, _)) = positive.iter().find(|(_, ok)| !ok) {
            return Err(ConfigError::NotPositive(name));
        }
        if self.epochs.min > self.epochs.max {
            return Err(ConfigError::Inverted("Epochs"));
        }
        if self.vocabulary.min > self.vocabulary.max {
            return Err(ConfigError::Inverted("Vocabulary"));
        }
        Ok(())
    }

    /// Pins the vocabulary entry to the size of an actual vocabulary.
    pub fn with_vocabulary_size(mut self, size: u32) -> Self {
        self.vocabulary = Range {
            min: size,
            max: size,
        };
        self
    }
}

impl fmt::Display for TrainerConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Layers = {}", self.layers)?;
        writeln!(f, "Nodes = {}", self.nodes)?;
        writeln!(f, "Buckets = ({},{})", self.buckets.0, self.buckets.1)?;
        writeln!(f, "Epochs = {}", self.epochs)?;
        writeln!(f, "Vocabulary = {}", self.vocabulary)?;
        writeln!(f, "Learning rate = {}", self.learning_rate)?;
        writeln!(f, "Decay factor = {}", self.decay_factor)?;
        writeln!(f, "Gradient norm = {}", self.gradient_norm)
    }
}

fn parse_range(key: &str, value: &str) -> Result<Range, ConfigError> {
    let bad = || ConfigError::Value {
        key: key.to_string(),
        value: value.to_string(),
    };
    let (a, b) = value.split_once('-').unwrap_or((value, value));
    Ok(Range {
        min: a.trim().parse().map_err(|_| bad())?,
        max: b.trim().parse().map_err(|_| bad())?,
    })
}

impl FromStr for TrainerConfig {
    type Err = ConfigError;

    /// Missing keys keep their defaults.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut cfg = TrainerConfig::default();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or(ConfigError::Syntax { line: i + 1 })?;
            let (key, value) = (key.trim(), value.trim());
            let bad = || ConfigError::Value {
                key: key.to_string(),
                value: value.to_string(),
            };
            match key.to_ascii_lowercase().as_str() {
                "layers" => cfg.layers = value.parse().map_err(|_| bad())?,
                "nodes" => cfg.nodes = value.parse().map_err(|_| bad())?,
                "buckets" => {
                    let inner = value.trim_start_matches('(').trim_end_matches(')');
                    let (a, b) = inner.split_once(',').ok_or_else(bad)?;
                    cfg.buckets = (
                        a.trim().parse().map_err(|_| bad())?,
                        b.trim().parse().map_err(|_| bad())?,
                    );
                }
                "epochs" => cfg.epochs = parse_range(key, value)?,
                "vocabulary" => cfg.vocabulary = parse_range(key, value)?,
                "learning rate" => cfg.learning_rate = value.parse().map_err(|_| bad())?,
                "decay factor" => cfg.decay_factor = value.parse().map_err(|_| bad())?,
                "gradient norm" => cfg.gradient_norm = value.parse().map_err(|_| bad())?,
                _ => return Err(ConfigError::Unknown(key.to_string())),
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_text() {
        let text = TrainerConfig::default().to_string();
        assert_eq!(
            text,
            "Layers = 1\nNodes = 400\nBuckets = (510,510)\nEpochs = 25-35\nVocabulary = 150-200\n\
             Learning rate = 0.5\nDecay factor = 0.99\nGradient norm = 5\n"
        );
        assert_eq!(
            text.parse::<TrainerConfig>().unwrap(),
            TrainerConfig::default()
        );
    }

    #[test]
    fn partial_file_keeps_defaults() {
        let cfg: TrainerConfig = "Epochs = 30\nlearning rate = 0.25".parse().unwrap();
        assert_eq!(cfg.epochs, Range { min: 30, max: 30 });
        assert_eq!(cfg.learning_rate, 0.25);
        assert_eq!(cfg.nodes, 400);
    }

    #[test]
    fn rejects_bad_values() {
        assert_eq!(
            "Layers = 0".parse::<TrainerConfig>(),
            Err(ConfigError::NotPositive("Layers"))
        );
        assert_eq!(
            "Epochs = 35-25".parse::<TrainerConfig>(),
            Err(ConfigError::Inverted("Epochs"))
        );
        assert!(matches!(
            "Dropout = 0.1".parse::<TrainerConfig>(),
            Err(ConfigError::Unknown(_))
        ));
        assert!(matches!(
            "Layers 1".parse::<TrainerConfig>(),
            Err(ConfigError::Syntax { line: 1 })
        ));
    }
}
