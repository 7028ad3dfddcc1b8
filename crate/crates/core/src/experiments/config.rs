use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gw::{CalibrationConfig, DEFAULT_EPSILON_THRESHOLD};
use crate::rng::derive_seed;
use crate::structure::DEFAULT_SPANNING_TREE_CAP;

fn default_q() -> f64 {
    0.5
}
fn default_c() -> f64 {
    16.0
}
fn default_trials() -> u64 {
    1
}
fn default_cap() -> usize {
    DEFAULT_SPANNING_TREE_CAP
}
fn default_threshold() -> f64 {
    DEFAULT_EPSILON_THRESHOLD
}

/// Parameters shared by the random-graph experiments, with `p = (1+ε)/n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub n: usize,
    #[serde(alias = "eps")]
    pub epsilon: f64,
    /// Success probability of the algorithm fed to the reduction.
    #[serde(default = "default_q")]
    pub q: f64,
    #[serde(rename = "C", default = "default_c")]
    pub c: f64,
    #[serde(default = "default_trials")]
    pub trials: u64,
    #[serde(alias = "seed", default)]
    pub master_seed: u64,
    #[serde(default = "default_cap")]
    pub spanning_tree_cap: usize,
    /// Above this ε the asymptotic statements are applied with a warning.
    #[serde(default = "default_threshold")]
    pub epsilon_threshold: f64,
}

impl ExperimentConfig {
    pub fn new(n: usize, epsilon: f64) -> Self {
        ExperimentConfig {
            n,
            epsilon,
            q: default_q(),
            c: default_c(),
            trials: default_trials(),
            master_seed: 0,
            spanning_tree_cap: default_cap(),
            epsilon_threshold: default_threshold(),
        }
    }

    pub fn with_c(mut self, c: f64) -> Self {
        self.c = c;
        self
    }

    pub fn with_trials(mut self, trials: u64) -> Self {
        self.trials = trials;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.master_seed = seed;
        self
    }

    pub fn with_q(mut self, q: f64) -> Self {
        self.q = q;
        self
    }

    pub fn p(&self) -> f64 {
        (1.0 + self.epsilon) / self.n as f64
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::config("n", "vertex count must be positive"));
        }
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(Error::config(
                "epsilon",
                format!("epsilon = {} must lie in (0, 1)", self.epsilon),
            ));
        }
        if self.p() >= 1.0 {
            return Err(Error::config(
                "n",
                format!("p = (1+epsilon)/n = {} is not below 1", self.p()),
            ));
        }
        if !(self.q > 0.0 && self.q < 1.0) {
            return Err(Error::config(
                "q",
                format!("q = {} must lie in (0, 1)", self.q),
            ));
        }
        if self.trials == 0 {
            return Err(Error::config("trials", "at least one trial is required"));
        }
        if self.spanning_tree_cap == 0 {
            return Err(Error::config("spanning_tree_cap", "must be positive"));
        }
        if self.epsilon_threshold.is_nan() || self.epsilon_threshold <= 0.0 {
            return Err(Error::config("epsilon_threshold", "must be positive"));
        }
        CalibrationConfig::new(self.c, self.epsilon)?;
        Ok(())
    }

    pub fn calibration(&self) -> Result<CalibrationConfig> {
        CalibrationConfig::new(self.c, self.epsilon)
    }

    /// Non-fatal notes about the configuration.
    pub fn warnings(&self) -> Vec<String> {
        let mut notes = Vec::new();
        if self.epsilon > self.epsilon_threshold {
            notes.push(format!(
                "epsilon = {} is above the applicability threshold {}",
                self.epsilon, self.epsilon_threshold
            ));
        }
        notes
    }

    pub fn trial_seed(&self, trial: u64) -> u64 {
        derive_seed(self.master_seed, trial)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_from_minimal_json() {
        let c: ExperimentConfig = serde_json::from_str(r#"{"n": 1000, "eps": 0.1}"#).unwrap();
        assert_eq!(c, ExperimentConfig::new(1000, 0.1));
        c.validate().unwrap();
    }

    #[test]
    fn validation_names_the_key() {
        let key = |c: ExperimentConfig| match c.validate() {
            Err(Error::Config { key, .. }) => key,
            other => panic!("expected a config error, got {other:?}"),
        };
        assert_eq!(key(ExperimentConfig::new(1000, 0.0)), "epsilon");
        assert_eq!(key(ExperimentConfig::new(1, 0.5)), "n");
        assert_eq!(key(ExperimentConfig::new(100, 0.1).with_q(1.0)), "q");
        assert_eq!(
            key(ExperimentConfig::new(100, 0.1).with_trials(0)),
            "trials"
        );
        assert_eq!(key(ExperimentConfig::new(100, 0.1).with_c(-1.0)), "C");
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let r: std::result::Result<ExperimentConfig, _> =
            serde_json::from_str(r#"{"n": 10, "eps": 0.1, "bogus": 1}"#);
        assert!(r.unwrap_err().to_string().contains("bogus"));
    }
}
