//! Configuration: a simple `key=value` file merged with command-line flags;
//! flags win. The stopword path can additionally be overridden through the
//! `COREPHRASE_STOPWORDS` environment variable.

use std::path::{Path, PathBuf};

use corephrase_core::eval::Gain;
use thiserror::Error;

pub const STOPWORDS_ENV: &str = "COREPHRASE_STOPWORDS";

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("{path}:{line}: expected `key=value`")]
    Syntax { path: String, line: usize },
    #[error("{path}:{line}: unknown key {key:?}")]
    UnknownKey { path: String, line: usize, key: String },
    #[error("invalid value for {key}: {value:?}")]
    BadValue { key: String, value: String },
    #[error("sliding window must be >= 2, got {0}")]
    WindowTooSmall(usize),
}

/// Which document embedder to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Embedder {
    /// Score-weighted sentence average with tf-idf sentence embeddings.
    #[default]
    #[value(name = "tde-iw")]
    TdeIw,
    /// Score-weighted average of externally precomputed sentence vectors.
    #[value(name = "tde-s2v")]
    TdeS2v,
    /// Whole-document tf-idf weighted word-vector average baseline.
    #[value(name = "twa")]
    Twa,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub window: usize,
    pub embedder: Embedder,
    pub cumulative_cores: bool,
    pub gain: Gain,
    pub stopwords: Option<PathBuf>,
    pub word_vectors: Option<PathBuf>,
    pub sentence_vectors: Option<PathBuf>,
    pub index: Option<PathBuf>,
    pub idf: Option<PathBuf>,
    pub k: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            window: 5,
            embedder: Embedder::default(),
            cumulative_cores: false,
            gain: Gain::default(),
            stopwords: None,
            word_vectors: None,
            sentence_vectors: None,
            index: None,
            idf: None,
            k: 5,
        }
    }
}

impl Config {
    /// Parses a `key=value` file. Blank lines and `#` comments are ignored.
    pub fn from_file(path: &Path) -> Result<Self, ConfigError> {
        let mut config = Config::default();
        let text = std::fs::read_to_string(path)?;
        for (line_no, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| ConfigError::Syntax {
                path: path.display().to_string(),
                line: line_no + 1,
            })?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "window" => config.window = parse(key, value)?,
                "embedder" => {
                    config.embedder = match value {
                        "tde-iw" => Embedder::TdeIw,
                        "tde-s2v" => Embedder::TdeS2v,
                        "twa" => Embedder::Twa,
                        _ => return Err(bad(key, value)),
                    }
                }
                "cumulative-cores" => config.cumulative_cores = parse(key, value)?,
                "gain" => {
                    config.gain = match value {
                        "exp" => Gain::Exponential,
                        "linear" => Gain::Linear,
                        _ => return Err(bad(key, value)),
                    }
                }
                "stopwords" => config.stopwords = Some(PathBuf::from(value)),
                "word-vectors" => config.word_vectors = Some(PathBuf::from(value)),
                "sentence-vectors" => config.sentence_vectors = Some(PathBuf::from(value)),
                "index" => config.index = Some(PathBuf::from(value)),
                "idf" => config.idf = Some(PathBuf::from(value)),
                "k" => config.k = parse(key, value)?,
                _ => {
                    return Err(ConfigError::UnknownKey {
                        path: path.display().to_string(),
                        line: line_no + 1,
                        key: key.to_string(),
                    })
                }
            }
        }
        Ok(config)
    }

    /// Validates invariants and applies the stopword environment override.
    pub fn finalize(mut self) -> Result<Self, ConfigError> {
        if self.window < 2 {
            return Err(ConfigError::WindowTooSmall(self.window));
        }
        if self.stopwords.is_none() {
            if let Ok(path) = std::env::var(STOPWORDS_ENV) {
                self.stopwords = Some(PathBuf::from(path));
            }
        }
        Ok(self)
    }
}

fn parse<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, ConfigError> {
    value.parse().map_err(|_| bad(key, value))
}

fn bad(key: &str, value: &str) -> ConfigError {
    ConfigError::BadValue { key: key.to_string(), value: value.to_string() }
}
