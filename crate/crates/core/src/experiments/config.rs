use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::channel::SystemConfig;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    #[serde(alias = "Moments")]
    Moments,
    #[serde(alias = "EigenCdf")]
    EigenCdf,
    #[serde(alias = "Capacity")]
    Capacity,
}

impl ExperimentKind {
    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::Moments => "moments",
            ExperimentKind::EigenCdf => "eigen-cdf",
            ExperimentKind::Capacity => "capacity",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Sweep {
    pub m_values: Vec<usize>,
    pub d_values: Vec<f64>,
    pub rho_values: Vec<f64>,
}

/// A full experiment description. `sweep.m_values` sets the antenna count
/// of every point, overriding `system.M`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub system: SystemConfig,
    pub experiment: ExperimentKind,
    pub sweep: Sweep,
    pub trials: usize,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
}

/// `count` evenly spaced points on `[lo, hi]`.
fn linspace(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    let step = (hi - lo) / (count - 1) as f64;
    (0..count).map(|i| lo + step * i as f64).collect()
}

impl ExperimentConfig {
    pub fn defaults(kind: ExperimentKind) -> Self {
        let base = SystemConfig::default();
        let (system, sweep, trials) = match kind {
            ExperimentKind::Moments => (
                SystemConfig { users: 2, ..base },
                Sweep {
                    m_values: vec![8, 16, 32, 64, 128, 256, 512],
                    d_values: vec![0.3, 0.5, 1.0],
                    rho_values: vec![10.0],
                },
                10_000,
            ),
            ExperimentKind::EigenCdf => (
                SystemConfig { users: 6, ..base },
                Sweep {
                    m_values: vec![6, 128],
                    d_values: vec![0.3, 0.5, 1.0],
                    rho_values: vec![10.0],
                },
                1_000,
            ),
            ExperimentKind::Capacity => (
                SystemConfig {
                    antennas: 128,
                    users: 16,
                    ..base
                },
                Sweep {
                    m_values: vec![128],
                    d_values: linspace(0.1, 2.0, 16),
                    rho_values: vec![10.0],
                },
                1_000,
            ),
        };
        Self {
            system,
            experiment: kind,
            sweep,
            trials,
            seed: 1,
            output: None,
        }
    }

    /// Parses a JSON configuration on top of the defaults for `kind`.
    /// Missing keys keep their defaults; `system` and `sweep` merge key by
    /// key. A file naming a different experiment is rejected.
    pub fn from_json_str(kind: ExperimentKind, text: &str) -> Result<Self> {
        let overrides: Value = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        let Value::Object(overrides) = overrides else {
            return Err(Error::Config("configuration must be a JSON object".into()));
        };
        let mut merged = serde_json::to_value(Self::defaults(kind)).expect("defaults serialize");
        let target = merged.as_object_mut().expect("config is an object");
        for (key, value) in overrides {
            match (key.as_str(), target.get_mut(&key), value) {
                ("system" | "sweep", Some(Value::Object(dst)), Value::Object(src)) => {
                    dst.extend(src);
                }
                (_, _, value) => {
                    target.insert(key, value);
                }
            }
        }
        let cfg: Self = serde_json::from_value(merged).map_err(|e| Error::Config(e.to_string()))?;
        if cfg.experiment != kind {
            return Err(Error::Config(format!(
                "configuration is for experiment '{}', not '{}'",
                cfg.experiment.name(),
                kind.name()
            )));
        }
        Ok(cfg)
    }

    pub fn from_file(kind: ExperimentKind, path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_json_str(kind, &text).map_err(|e| match e {
            Error::Config(msg) => Error::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    /// System configuration for one sweep point.
    pub fn point(&self, antennas: usize, d_over_lambda: f64) -> SystemConfig {
        SystemConfig {
            antennas,
            d_over_lambda,
            ..self.system.clone()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        if self.sweep.m_values.is_empty() || self.sweep.d_values.is_empty() || self.sweep.rho_values.is_empty() {
            return bad("sweep lists must be non-empty".into());
        }
        if self.sweep.rho_values.iter().any(|r| !(r.is_finite() && *r >= 0.0)) {
            return bad("rho values must be finite and >= 0".into());
        }
        let min_trials = match self.experiment {
            ExperimentKind::Moments => 2,
            ExperimentKind::EigenCdf => 100,
            ExperimentKind::Capacity => 1,
        };
        if self.trials < min_trials {
            return bad(format!(
                "{} needs at least {min_trials} trials, got {}",
                self.experiment.name(),
                self.trials
            ));
        }
        for &m in &self.sweep.m_values {
            if self.experiment != ExperimentKind::Moments && self.system.users > m {
                return bad(format!("K = {} exceeds M = {m}", self.system.users));
            }
            for &d in &self.sweep.d_values {
                self.point(m, d).validate()?;
            }
        }
        Ok(())
    }

    /// Canonical JSON of everything that affects the results (the output
    /// path is excluded).
    pub fn canonical_json(&self) -> String {
        let mut c = self.clone();
        c.output = None;
        serde_json::to_string(&c).expect("config serializes")
    }

    pub fn hash(&self) -> String {
        hash_canonical(&self.canonical_json())
    }
}

/// Hex SHA-256 of a canonical configuration string.
pub fn hash_canonical(canonical: &str) -> String {
    let digest = Sha256::digest(canonical.as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}
