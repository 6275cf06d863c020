use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Environment variable consulted for the default worker count.
pub const THREADS_ENV: &str = "MGSIM_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Text,
}

/// Run-wide knobs shared by the library entry points and the CLI.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    /// Largest algebra accepted by operations that enumerate subsets.
    pub max_enum_size: usize,
    /// Largest algebra handed to the brute-force partition search.
    pub congruence_oracle_cap: usize,
    /// Number of sequence coordinates sampled by embedding checks.
    pub sample_depth: usize,
    /// Worker count; `None` defers to the environment, then to rayon.
    pub threads: Option<usize>,
    pub format: OutputFormat,
    pub seed: u64,
    /// Re-check the G∼ laws after every construction.
    pub validate_constructions: bool,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            max_enum_size: 64,
            congruence_oracle_cap: 9,
            sample_depth: 50,
            threads: None,
            format: OutputFormat::Json,
            seed: 0,
            validate_constructions: cfg!(debug_assertions),
        }
    }
}

impl Config {
    pub fn from_json(text: &str) -> Result<Config> {
        let cfg: Config = serde_json::from_str(text)?;
        cfg.check()?;
        Ok(cfg)
    }

    pub fn check(&self) -> Result<()> {
        let caps = [
            ("max_enum_size", self.max_enum_size),
            ("congruence_oracle_cap", self.congruence_oracle_cap),
            ("sample_depth", self.sample_depth),
        ];
        for (name, v) in caps {
            if v == 0 {
                return Err(Error::InvalidInput(format!("{name} must be positive")));
            }
        }
        if self.threads == Some(0) {
            return Err(Error::InvalidInput("threads must be positive".into()));
        }
        Ok(())
    }

    /// Worker count after applying the environment fallback.
    pub fn effective_threads(&self) -> Option<usize> {
        self.threads.or_else(|| {
            std::env::var(THREADS_ENV)
                .ok()
                .and_then(|v| v.parse::<usize>().ok())
                .filter(|&n| n > 0)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_round_trip() {
        let cfg = Config::default();
        let text = serde_json::to_string(&cfg).unwrap();
        assert_eq!(Config::from_json(&text).unwrap(), cfg);
    }

    #[test]
    fn zero_caps_rejected() {
        assert!(Config::from_json(r#"{"sample_depth": 0}"#).is_err());
        assert!(Config::from_json(r#"{"threads": 0}"#).is_err());
        assert!(Config::from_json(r#"{"bogus": 1}"#).is_err());
    }
}
